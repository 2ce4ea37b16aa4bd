#include "rayleigh/cli.hpp"

int main(int argc, char** argv) { return rayleigh::cli::run(argc, argv); }
