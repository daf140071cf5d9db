#include <iostream>
#include <string>
#include <vector>

#include "kit.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kit::dispatch(args, std::cout, std::cerr);
}
