#include "mimoic/cli.hpp"

int main(int argc, char** argv) { return mimoic::cli::main(argc, argv); }
