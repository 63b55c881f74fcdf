#include "cspde/cli.hpp"

int main(int argc, char** argv) { return cspde::run_cli(argc, argv); }
