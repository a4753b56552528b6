#include "lamplight/cli/cli.hpp"

int main(int argc, char** argv) { return lamplight::cli::run(argc, argv); }
