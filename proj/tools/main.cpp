#include "knperc/cli.hpp"

int main(int argc, char** argv) { return knperc::cli::run(argc, argv); }
