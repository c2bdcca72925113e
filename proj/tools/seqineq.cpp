#include <iostream>
#include <string>
#include <vector>

#include "seqineq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return seqineq::cli::run(args, std::cout, std::cerr);
}
