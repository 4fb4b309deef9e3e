#include "linclust/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <json.hpp>

#include "linclust/cli.hpp"
#include "linclust/dp_solver.hpp"
#include "linclust/error.hpp"
#include "linclust/oracle.hpp"
#include "linclust/periodic.hpp"

namespace linclust {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kTolerance = 1e-12;


std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Re-derives one expected entry, filling `derived` and appending mismatches
// between the production solvers and the oracle to `messages`.
void derive_entry(const ScoredGraph& raw, bool periodic, ordered_json& derived,
                  std::vector<std::string>& messages) {
  const ObjectiveKind kind = parse_objective(derived.at("objective").get<std::string>());
  const double lambda = derived.contains("lambda") && derived["lambda"].is_number() ? derived["lambda"].get<double>() : 0.5;
  const std::string tag = derived["objective"].get<std::string>() +
                          (kind == ObjectiveKind::kStrata ? " lambda=" + fmt(lambda) : std::string());
  if (!periodic) {
    const ScoredGraph g = collapse_equal_scores(raw);
    const PairwiseObjective obj = make_objective(kind, g, lambda);
    const Solution oracle = brute_force_best(g, obj, EmbeddingMode::kLinear);
    const Solution dp = solve(g, obj);
    if (std::abs(dp.quality - oracle.quality) >= kTolerance) {
      messages.push_back(tag + ": dp Q " + fmt(dp.quality) + " != oracle Q " + fmt(oracle.quality));
    }
    derived["Q"] = oracle.quality;
    derived["num_layers"] = oracle.partition.layer_count();
    derived["layers"] = layer_ids(g, oracle.partition);
  } else {
    const CircularScoredGraph circle = CircularScoredGraph::from_angles(raw).collapsed();
    const ScoredGraph& g = circle.graph();
    const PairwiseObjective obj = make_objective(kind, g, lambda);
    const Solution oracle = brute_force_best(g, obj, EmbeddingMode::kCircular);
    const Solution exhaustive = solve_periodic_exhaustive(circle, obj);
    const Solution stable = solve_periodic_stable(circle, obj);
    if (std::abs(exhaustive.quality - oracle.quality) >= kTolerance) {
      messages.push_back(tag + ": periodic-exhaustive Q " + fmt(exhaustive.quality) + " != oracle Q " +
                         fmt(oracle.quality));
    }
    if (std::abs(stable.quality - oracle.quality) >= kTolerance) {
      messages.push_back(tag + ": periodic-stable Q " + fmt(stable.quality) + " != oracle Q " + fmt(oracle.quality));
    }
    // The line obtained by cutting at the seam of the angle range.
    const ScoredGraph line = unfold_at(circle, g.size() - 1);
    const PairwiseObjective line_obj = make_objective(kind, line, lambda);
    const Solution line_oracle = brute_force_best(line, line_obj, EmbeddingMode::kLinear);
    const Solution line_dp = solve(line, line_obj);
    if (std::abs(line_dp.quality - line_oracle.quality) >= kTolerance) {
      messages.push_back(tag + ": linear dp Q " + fmt(line_dp.quality) + " != oracle Q " + fmt(line_oracle.quality));
    }
    derived["Q"] = oracle.quality;
    derived["num_layers"] = oracle.partition.layer_count();
    derived["layers"] = layer_ids(g, oracle.partition);
    derived["linear_dp_Q"] = line_oracle.quality;
  }
  derived["provenance"] = "oracle";
}

bool same_number(const ordered_json& a, const ordered_json& b) {
  return a.is_number() && b.is_number() && std::abs(a.get<double>() - b.get<double>()) < kTolerance;
}

FixtureCheck check_one(const std::filesystem::path& fixture_dir, bool regenerate) {
  FixtureCheck check;
  check.name = fixture_dir.filename().string();
  try {
    const auto json_path = fixture_dir / "fixture.json";
    ordered_json doc = ordered_json::parse(read_text_file(json_path));
    check.name = doc.value("name", check.name);
    const bool directed = doc.value("directed", false);
    const bool periodic = doc.value("periodic", false);
    const ScoredGraph raw = parse_graph(read_text_file(fixture_dir / "edges.txt"),
                                        read_text_file(fixture_dir / "scores.txt"), directed);
    for (auto& expected : doc.at("expected")) {
      ordered_json derived = expected;
      derive_entry(raw, periodic, derived, check.messages);
      const std::string tag = expected.at("objective").get<std::string>();
      if (periodic && !(derived["Q"].get<double>() > derived["linear_dp_Q"].get<double>())) {
        check.messages.push_back(tag + ": periodic Q does not beat the linear cut at the seam");
      }
      if (regenerate) {
        expected = derived;
        continue;
      }
      for (const char* key : {"Q", "linear_dp_Q"}) {
        if (derived.contains(key) && !same_number(expected.value(key, ordered_json()), derived[key])) {
          check.messages.push_back(tag + ": stored " + key + " " + expected.value(key, ordered_json()).dump() +
                                   " != derived " + derived[key].dump());
        }
      }
      for (const char* key : {"num_layers", "layers"}) {
        if (expected.value(key, ordered_json()) != derived[key]) {
          check.messages.push_back(tag + ": stored " + key + " differs from derived " + derived[key].dump());
        }
      }
    }
    if (regenerate) write_text_file(json_path, doc.dump(2) + "\n");
  } catch (const std::exception& e) {
    check.messages.push_back(e.what());
  }
  check.ok = check.messages.empty();
  return check;
}

}  // namespace

bool FixtureReport::ok() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
}

FixtureReport verify_fixtures(const std::filesystem::path& dir, bool regenerate) {
  if (!std::filesystem::is_directory(dir)) throw InputError("no fixture directory at '" + dir.string() + "'");
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_directory() && std::filesystem::exists(entry.path() / "fixture.json")) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  FixtureReport report;
  for (const auto& d : dirs) report.checks.push_back(check_one(d, regenerate));
  return report;
}

}  // namespace linclust
