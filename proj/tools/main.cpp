#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return photon_slh::cli::run(argc, argv, std::cout, std::cerr);
}
