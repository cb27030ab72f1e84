#include "zlab/cli.hpp"

int main(int argc, char** argv) { return zlab::cli::main_entry(argc, argv); }
