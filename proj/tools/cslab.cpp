#include "cslab/cli.hpp"

int main(int argc, char** argv) { return cslab::cli::run(argc, argv); }
