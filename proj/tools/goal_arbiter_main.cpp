#include <iostream>

#include "goal_arbiter/cli.hpp"

int main(int argc, char** argv) {
  return goal_arbiter::cli::run_cli(argc, argv, std::cout, std::cerr);
}
