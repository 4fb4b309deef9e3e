#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace linclust {

/// Outcome of checking one fixture.
struct FixtureCheck {
  std::string name;
  bool ok = false;
  std::vector<std::string> messages;  // one per mismatch
};

struct FixtureReport {
  std::vector<FixtureCheck> checks;
  bool ok() const;
};

/// Each subdirectory of dir holding a fixture.json is a fixture:
///
///   <name>/edges.txt     edge file
///   <name>/scores.txt    score (or angle) file
///   <name>/fixture.json  {"name", "directed", "periodic",
///                         "expected": [{"objective", "lambda", "Q",
///                                       "num_layers", "layers", "provenance",
///                                       "linear_dp_Q" (periodic only)}]}
///
/// Every expected entry is re-derived by exhaustive enumeration and the
/// production solver is checked against it. With regenerate the derived
/// values are written back instead of compared.
FixtureReport verify_fixtures(const std::filesystem::path& dir, bool regenerate = false);

}  // namespace linclust
