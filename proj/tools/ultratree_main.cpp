#include "ultratree/cli.hpp"

int main(int argc, char** argv) { return ultratree::cli::run(argc, argv); }
