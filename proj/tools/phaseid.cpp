#include "phaseid/cli.hpp"

int main(int argc, char** argv) { return phaseid::cli::run(argc, argv); }
