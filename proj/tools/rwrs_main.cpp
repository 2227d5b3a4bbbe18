#include "rwrs/cli.hpp"

int main(int argc, char** argv) { return rwrs::cli::main(argc, argv); }
