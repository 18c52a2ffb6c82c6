#include "cli_commands.hpp"

int main(int argc, char** argv) { return wisard::cli::run(argc, argv); }
