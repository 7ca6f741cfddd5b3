#include "tprh/cli.hpp"

int main(int argc, char** argv) {
  return tprh::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
