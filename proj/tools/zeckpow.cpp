#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "zeckpow/cli.hpp"

int main(int argc, char** argv) {
  try {
    return zeckpow::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cin, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return zeckpow::kExitVerificationFailure;
  }
}
