#include "wavebound/cli.hpp"

int main(int argc, char** argv) { return wavebound::cli::run(argc, argv); }
