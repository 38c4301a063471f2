#include <csignal>
#include <iostream>

#include "cli.hpp"

namespace {

extern "C" void on_signal(int) { torlink::cli::interrupt_flag().store(true); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::vector<std::string> args(argv + 1, argv + argc);
  return torlink::cli::run_cli(args, std::cout, std::cerr);
}
