#include <iostream>
#include <string>
#include <vector>

#include "xr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return xr::dispatch(args, std::cout, std::cerr);
}
