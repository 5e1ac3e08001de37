#include <lrs/cli.hpp>

int main(int argc, char** argv) { return lrs::cli::run(argc, argv); }
