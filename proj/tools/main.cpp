#include "spinmer_cli.hpp"

int main(int argc, char** argv) { return spinmer::cli::run(argc, argv); }
