#include "sympos/cli.hpp"

int main(int argc, char** argv) { return sympos::run_cli(argc, argv); }
