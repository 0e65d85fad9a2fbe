#include <iostream>
#include <vector>

#include "bfp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bfp::cli::dispatch(std::move(args), std::cout, std::cerr);
}
