#include "cli.hpp"

int main(int argc, char** argv) { return gausseig::cli::run(argc, argv); }
