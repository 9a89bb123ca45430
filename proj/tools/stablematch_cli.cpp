#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "stablematch/cli.hpp"

namespace {

void on_sigint(int) { stablematch::cli::interrupt_flag().store(true); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_sigint);
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return stablematch::cli::run(args, std::cout, std::cerr);
}
