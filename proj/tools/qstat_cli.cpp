#include "cli.hpp"

int main(int argc, char** argv) { return qstat::cli::run(argc, argv); }
