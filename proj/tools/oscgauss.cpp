#include <oscgauss/cli.hpp>

int main(int argc, char** argv) { return oscgauss::cli::run(argc, argv); }
