#include "hexlimit/cli.hpp"

int main(int argc, char** argv) { return hexlimit::run_cli(argc, argv); }
