#include "slapmap/cli.hpp"

int main(int argc, char** argv) { return slapmap::run_cli(argc, argv); }
