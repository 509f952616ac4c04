#include <iostream>

#include "lab.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cotangent::lab::run_lab(args, std::cout, std::cerr);
}
