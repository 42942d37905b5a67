#include "csm/cli.hpp"

int main(int argc, char** argv) { return csm::cli_main(argc, argv); }
