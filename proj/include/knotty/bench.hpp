#pragma once

#include "knotty/diagram.hpp"
#include "knotty/invariants.hpp"
#include "knotty/moves.hpp"
#include "knotty/pcg.hpp"
#include "knotty/serialization.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <vector>

namespace knotty {

/// A random diagram with exactly `n` crossings: growth moves from the
/// unknot, then each crossing flipped with probability 1/2. Not simplified,
/// so the crossing count is what the state sum actually sees.
inline Diagram random_diagram(int n, WalkRng &rng) {
  Diagram d;
  while (d.crossing_count() < n) {
    const auto sites = enumerate_moves(d);
    if (n - d.crossing_count() >= 2 && !sites.r2_add.empty() && rng.unit() < 0.6)
      d = apply_move(d, sites.r2_add[rng.index(sites.r2_add.size())], n);
    else
      d = apply_move(d, sites.r1_add[rng.index(sites.r1_add.size())], n);
  }
  for (int c = 0; c < n; ++c)
    if (rng.unit() < 0.5)
      d = apply_move(d, CrossingFlip{c}, n);
  return d;
}

struct BenchRow {
  int crossings = 0;
  int samples = 0;
  double median_ms = 0;
  double max_ms = 0;
};

struct BenchOptions {
  int min_crossings = 1;
  int max_crossings = 20;
  int samples = 5;
  std::uint64_t seed = 1;
};

/// Times the brute-force state sum on `samples` random diagrams per size.
inline std::vector<BenchRow> bench_state_sum(const BenchOptions &opt) {
  std::vector<BenchRow> rows;
  StateSumBudget budget;
  budget.max_crossings = std::max(budget.max_crossings, opt.max_crossings);
  for (int n = opt.min_crossings; n <= opt.max_crossings; ++n) {
    WalkRng rng(mix_seed(opt.seed + static_cast<std::uint64_t>(n)));
    std::vector<double> times;
    for (int i = 0; i < opt.samples; ++i) {
      const Diagram d = random_diagram(n, rng);
      const auto start = std::chrono::steady_clock::now();
      const LaurentPoly bracket = kauffman_bracket(d, budget);
      const auto stop = std::chrono::steady_clock::now();
      if (bracket.is_zero())
        fail(ErrorKind::Validation, "bracket of a knot diagram cannot vanish");
      times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    rows.push_back({n, opt.samples, times[times.size() / 2], times.back()});
  }
  return rows;
}

inline Json bench_to_json(const std::vector<BenchRow> &rows) {
  Json out = Json::array();
  for (const auto &r : rows)
    out.push_back({{"crossings", r.crossings}, {"samples", r.samples}, {"medianMs", r.median_ms}, {"maxMs", r.max_ms}});
  return out;
}

} // namespace knotty
