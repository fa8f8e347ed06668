#pragma once

#include <string>
#include <vector>

#include "fonctex/caps.hpp"

namespace fonctex {

struct SelftestResult {
  std::string module;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Small sanity facts across all modules, each checked by direct computation.
std::vector<SelftestResult> run_selftest(const Caps& caps);
// Builtin catalogue and command checks; defined next to the catalogue in cli.cpp.
void selftest_cli(std::vector<SelftestResult>& out);

}  // namespace fonctex
