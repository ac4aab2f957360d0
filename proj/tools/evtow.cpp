#include "cli_app.hpp"

int main(int argc, char** argv) { return evtow::cli::run_cli(argc, argv); }
