#include "dcdc/cli.hpp"

int main(int argc, char** argv) { return dcdc::run_cli(argc, argv); }
