#include "afromt/cli.hpp"

int main(int argc, char** argv) { return afromt::cli::dispatch(argc, argv); }
