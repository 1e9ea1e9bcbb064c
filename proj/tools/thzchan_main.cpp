#include "thzchan/cli.hpp"

int main(int argc, char** argv) { return thzchan::run_cli(argc, argv); }
