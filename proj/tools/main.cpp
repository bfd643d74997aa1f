#include "splitcurve/cli.hpp"

int main(int argc, char** argv) { return splitcurve::cli::run(argc, argv); }
