#include "cli.hpp"

int main(int argc, char** argv) { return cfb::cli::run(argc, argv); }
