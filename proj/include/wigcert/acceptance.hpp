#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wigcert {

struct AcceptanceResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the full acceptance corpus and prints one pass/fail line per
/// criterion. Returns true when every criterion passes.
bool run_acceptance(std::ostream& os, std::vector<AcceptanceResult>* out = nullptr);

}  // namespace wigcert
