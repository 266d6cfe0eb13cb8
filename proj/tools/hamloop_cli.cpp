#include "hamloop/cli.hpp"

int main(int argc, char** argv) { return hamloop::cli::main(argc, argv); }
