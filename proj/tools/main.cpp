#include <string>
#include <vector>

#include "dpgs/cli.hpp"

int main(int argc, char** argv) {
  return dpgs::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
