#include "cli.hpp"

int main(int argc, char** argv) { return hpnmf::cli::cli_main(argc, argv); }
