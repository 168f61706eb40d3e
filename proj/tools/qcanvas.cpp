#include <string>
#include <vector>

#include "qcanvas/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qcanvas::run_cli(args);
}
