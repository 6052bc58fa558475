#include "peakval/cli.hpp"

int main(int argc, char** argv) { return peakval::run_cli(argc, argv); }
