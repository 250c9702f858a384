// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#include <iostream>
#include <string>
#include <vector>

#include "lcsurf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  lcs::CliResult r = lcs::run_command(args);
  if (!r.output.empty()) std::cout << r.output;
  if (!r.diagnostic.empty()) std::cerr << r.diagnostic << "\n";
  return r.code;
}
