#include <iostream>
#include <string>
#include <vector>

#include "forge/forge.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return forge::run(args, std::cout, std::cerr);
}
