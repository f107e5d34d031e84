#include "kasiski/cli.hpp"

int main(int argc, char** argv) { return kasiski::cli::run(argc, argv); }
