#include "fourmode/cli.hpp"

int main(int argc, char** argv) { return fourmode::cli::run_command(argc, argv); }
