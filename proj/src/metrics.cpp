#include "linclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "linclust/error.hpp"

namespace linclust {

namespace {

std::uint64_t total(std::span<const std::uint64_t> v) {
  return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

std::vector<std::uint64_t> nonzero(std::span<const std::uint64_t> v) {
  std::vector<std::uint64_t> out;
  for (auto x : v) {
    if (x > 0) out.push_back(x);
  }
  return out;
}

void check_same_size(const Labeling& p1, const Labeling& p2) {
  if (p1.size() != p2.size()) throw InputError("labelings have different sizes");
  if (p1.size() == 0) throw InputError("empty labeling");
}

// Counts tables column by column; the state is the multiset of remaining row
// sums, kept sorted so permuted rows share a memo entry.
class TableCounter {
 public:
  TableCounter(std::vector<std::uint64_t> cols, std::size_t max_steps)
      : cols_(std::move(cols)), max_steps_(max_steps), memo_(cols_.size()) {}

  std::optional<double> count(std::vector<std::uint64_t> rows) {
    std::sort(rows.begin(), rows.end());
    const double c = visit(rows, 0);
    if (overflow_) return std::nullopt;
    return c;
  }

 private:
  double visit(const std::vector<std::uint64_t>& rows, std::size_t col) {
    if (overflow_) return 0.0;
    if (col + 1 == cols_.size()) return 1.0;  // the last column is forced
    auto& memo = memo_[col];
    if (auto it = memo.find(rows); it != memo.end()) return it->second;
    std::vector<std::uint64_t> remaining(rows);
    std::vector<std::uint64_t> suffix(rows.size() + 1, 0);
    for (std::size_t i = rows.size(); i-- > 0;) suffix[i] = suffix[i + 1] + rows[i];
    double sum = 0.0;
    distribute(rows, suffix, remaining, 0, cols_[col], col, sum);
    memo.emplace(rows, sum);
    return sum;
  }

  // Places `left` units of column `col` over rows i.. and recurses.
  void distribute(const std::vector<std::uint64_t>& rows, const std::vector<std::uint64_t>& suffix,
                  std::vector<std::uint64_t>& remaining, std::size_t i, std::uint64_t left, std::size_t col,
                  double& sum) {
    if (overflow_) return;
    if (i + 1 == rows.size()) {
      if (left > rows[i]) return;
      if (++steps_ > max_steps_) {
        overflow_ = true;
        return;
      }
      remaining[i] = rows[i] - left;
      std::vector<std::uint64_t> next(remaining);
      std::sort(next.begin(), next.end());
      sum += visit(next, col + 1);
      remaining[i] = rows[i];
      return;
    }
    // the rows after i must be able to absorb what is left
    const std::uint64_t capacity_after = suffix[i + 1];
    const std::uint64_t lo = left > capacity_after ? left - capacity_after : 0;
    const std::uint64_t hi = std::min(left, rows[i]);
    for (std::uint64_t x = lo; x <= hi; ++x) {
      remaining[i] = rows[i] - x;
      distribute(rows, suffix, remaining, i + 1, left - x, col, sum);
    }
    remaining[i] = rows[i];
  }

  struct VecHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
      std::size_t h = v.size();
      for (auto x : v) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }
  };

  std::vector<std::uint64_t> cols_;
  std::size_t max_steps_;
  std::size_t steps_ = 0;  // column placements tried
  bool overflow_ = false;
  std::vector<std::unordered_map<std::vector<std::uint64_t>, double, VecHash>> memo_;
};

}  // namespace

Labeling::Labeling(std::span<const std::size_t> raw_labels) {
  std::unordered_map<std::size_t, std::size_t> dense;
  labels_.reserve(raw_labels.size());
  for (std::size_t x : raw_labels) {
    auto [it, inserted] = dense.emplace(x, sizes_.size());
    if (inserted) sizes_.push_back(0);
    ++sizes_[it->second];
    labels_.push_back(it->second);
  }
}

Labeling Labeling::from_partition(const Partition& p) {
  const auto lab = p.labels();
  return Labeling(lab);
}

double entropy_of_sizes(const Labeling& p) {
  if (p.size() == 0) throw InputError("empty labeling");
  const double n = static_cast<double>(p.size());
  double s = 0.0;
  for (auto c : p.group_sizes()) {
    const double f = static_cast<double>(c) / n;
    s -= f * std::log2(f);
  }
  return s == 0.0 ? 0.0 : s;
}

double mutual_information(const Labeling& p1, const Labeling& p2) {
  check_same_size(p1, p2);
  const double n = static_cast<double>(p1.size());
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> joint;
  for (std::size_t i = 0; i < p1.size(); ++i) ++joint[{p1.labels()[i], p2.labels()[i]}];
  double mi = 0.0;
  for (const auto& [rs, c] : joint) {
    const double pij = static_cast<double>(c) / n;
    const double pi = static_cast<double>(p1.group_sizes()[rs.first]) / n;
    const double pj = static_cast<double>(p2.group_sizes()[rs.second]) / n;
    mi += pij * std::log2(pij / (pi * pj));
  }
  return mi;
}

std::optional<double> count_contingency_tables(std::span<const std::uint64_t> a,
                                               std::span<const std::uint64_t> b, std::size_t max_steps) {
  if (total(a) != total(b)) throw InputError("margins have different totals");
  auto rows = nonzero(a);
  auto cols = nonzero(b);
  if (rows.empty() || cols.empty()) return 1.0;
  // fewer rows keeps the memo state short
  if (rows.size() > cols.size()) std::swap(rows, cols);
  std::sort(cols.begin(), cols.end(), std::greater<>());
  TableCounter counter(std::move(cols), max_steps);
  return counter.count(std::move(rows));
}

double log_contingency_tables_approx(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (total(a) != total(b)) throw InputError("margins have different totals");
  const auto rows = nonzero(a);
  const auto cols = nonzero(b);
  const double R = static_cast<double>(rows.size());
  const double S = static_cast<double>(cols.size());
  if (rows.size() <= 1 || cols.size() <= 1) return 0.0;  // a single row or column is forced
  const double n = static_cast<double>(total(a));
  const double w = n / (n + 0.5 * R * S);
  double sum_log_x = 0.0, sum_x2 = 0.0, sum_log_y = 0.0, sum_y2 = 0.0;
  for (auto ar : rows) {
    const double x = (1.0 - w) / R + w * static_cast<double>(ar) / n;
    sum_log_x += std::log(x);
    sum_x2 += x * x;
  }
  for (auto bs : cols) {
    const double y = (1.0 - w) / S + w * static_cast<double>(bs) / n;
    sum_log_y += std::log(y);
    sum_y2 += y * y;
  }
  const double mu = (R + 1.0) / (R * sum_y2) - 1.0 / R;
  const double nu = (S + 1.0) / (S * sum_x2) - 1.0 / S;
  return (R - 1.0) * (S - 1.0) * std::log(n + 0.5 * R * S) + 0.5 * (R + nu - 2.0) * sum_log_y +
         0.5 * (S + mu - 2.0) * sum_log_x +
         0.5 * (std::lgamma(mu * R) + std::lgamma(nu * S) - S * (std::lgamma(nu) + std::lgamma(R)) -
                R * (std::lgamma(mu) + std::lgamma(S)));
}

double log2_contingency_tables(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                               OmegaMethod method) {
  if (method != OmegaMethod::kApproximate) {
    const auto exact = count_contingency_tables(a, b, method == OmegaMethod::kExact ? SIZE_MAX : 1'000'000);
    if (exact) return std::log2(*exact);
  }
  return log_contingency_tables_approx(a, b) / std::log(2.0);
}

double reduced_mutual_information(const Labeling& p1, const Labeling& p2, RmiOptions opts) {
  check_same_size(p1, p2);
  const double n = static_cast<double>(p1.size());
  const double mi = mutual_information(p1, p2);
  const double forward = log2_contingency_tables(p1.group_sizes(), p2.group_sizes(), opts.method);
  if (!opts.symmetric) return mi - forward / n;
  const double backward = log2_contingency_tables(p2.group_sizes(), p1.group_sizes(), opts.method);
  return mi - 0.5 * (forward + backward) / n;
}

}  // namespace linclust
