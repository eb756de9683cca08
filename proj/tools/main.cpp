#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return ris_sei::cli::dispatch(argc, argv, std::cout, std::cerr); }
