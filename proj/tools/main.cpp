#include "cli.hpp"

int main(int argc, char** argv) { return soilcolor::cli::run(argc, argv); }
