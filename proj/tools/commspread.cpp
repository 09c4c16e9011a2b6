#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "commspread/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::map<std::string, std::string> env;
  if (const char* level = std::getenv("COMMSPREAD_LOG")) env["COMMSPREAD_LOG"] = level;
  return commspread::run_cli(args, env, std::cout, std::cerr);
}
