#include "torocoh/cli.hpp"

int main(int argc, char** argv) { return torocoh::cli::run(argc, argv); }
