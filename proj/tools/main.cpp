#include "cli_app.hpp"

int main(int argc, char** argv) { return magvac::cli::run_cli(argc, argv); }
