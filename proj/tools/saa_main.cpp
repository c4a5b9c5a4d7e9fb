#include <string>
#include <vector>

#include "saa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return saa::cli::run(args);
}
