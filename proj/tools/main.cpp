#include <string>
#include <vector>

#include "dispcav/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispcav::cli::run(args);
}
