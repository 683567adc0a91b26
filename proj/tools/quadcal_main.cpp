#include "quadcal/cli.hpp"

int main(int argc, char** argv) { return quadcal::cli::run(argc, argv); }
