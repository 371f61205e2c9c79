#include <iostream>

#include "listhyp/commands.hpp"

int main(int argc, char** argv) {
  return listhyp::cli::run(argc, argv, std::cout, std::cerr);
}
