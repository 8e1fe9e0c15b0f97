#include "cli.hpp"

int main(int argc, char** argv) { return pplan::cli::run(argc, argv); }
