#include "commands.hpp"

int main(int argc, char** argv) { return schemata::cli::run(argc, argv); }
