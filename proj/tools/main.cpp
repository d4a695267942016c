#include "squidgate/cli.hpp"

int main(int argc, char** argv) { return squidgate::run_cli(argc, argv); }
