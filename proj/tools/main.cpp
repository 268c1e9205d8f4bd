#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  return lucaskit::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
