#include "hvi/harness.hpp"

int main(int argc, char** argv) { return hvi::cli_main(argc, argv); }
