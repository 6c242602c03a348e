#include "bos/cli.hpp"

int main(int argc, char** argv) { return bos::cli::main(argc, argv); }
