#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "ctxseg/log.hpp"

int main(int argc, char** argv) {
  ctxseg::log::set_level(ctxseg::log::level_from_env());
  std::vector<std::string> args(argv + 1, argv + argc);
  return ctxseg::cli::run(args, std::cout, std::cerr);
}
