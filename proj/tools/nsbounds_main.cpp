#include "nsbounds/cli.hpp"

int main(int argc, char** argv) { return nsbounds::run(argc, argv); }
