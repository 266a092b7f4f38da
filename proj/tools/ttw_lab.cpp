#include "ttw/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ttw::cli::run(argc, argv, std::cout, std::cerr); }
