#include <iostream>

#include "slag/cli.hpp"

int main(int argc, char** argv) {
  int code = 0;
  const auto cfg = slag::cli::parse_args(argc, argv, std::cout, std::cerr, code);
  if (!cfg) return code;
  return slag::cli::run(*cfg, std::cout, std::cerr, std::cin);
}
