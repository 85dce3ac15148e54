#include "clusterlab/cliops.hpp"

int main(int argc, char** argv) { return clusterlab::run_cli(argc, argv); }
