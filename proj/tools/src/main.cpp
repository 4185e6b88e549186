#include <iostream>

#include "upcert/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return upcert::cli::run(args, std::cout, std::cerr);
}
