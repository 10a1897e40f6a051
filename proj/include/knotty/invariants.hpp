#pragma once

#include "knotty/diagram.hpp"
#include "knotty/error.hpp"
#include "knotty/laurent_poly.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace knotty {

/// Limits for exact evaluation. timeout_ms <= 0 disables the clock.
struct StateSumBudget {
  int max_crossings = 24;
  long long timeout_ms = 0;
};

namespace detail {

class Deadline {
public:
  explicit Deadline(long long timeout_ms)
      : enabled_(timeout_ms > 0),
        end_(std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms)) {}

  void check() const {
    if (enabled_ && std::chrono::steady_clock::now() > end_)
      fail(ErrorKind::BudgetExceeded, "state sum timed out");
  }

private:
  bool enabled_;
  std::chrono::steady_clock::time_point end_;
};

inline void check_crossings(const Diagram &d, int max_crossings) {
  if (d.crossing_count() > max_crossings)
    fail(ErrorKind::BudgetExceeded, std::to_string(d.crossing_count()) +
                                        " crossings exceeds the evaluation budget of " +
                                        std::to_string(max_crossings));
}

/// Sum of count[k][l] * A^(n-2k) * d^(l-1), d = -A^2 - A^-2.
inline LaurentPoly bracket_from_histogram(int n, const std::vector<std::vector<std::uint64_t>> &hist) {
  std::vector<LaurentPoly> loop_powers{LaurentPoly::one(Variable::A)};
  LaurentPoly total(Variable::A);
  for (int k = 0; k <= n; ++k) {
    for (std::size_t loops = 1; loops < hist[static_cast<std::size_t>(k)].size(); ++loops) {
      const auto count = hist[static_cast<std::size_t>(k)][loops];
      if (count == 0)
        continue;
      while (loop_powers.size() < loops)
        loop_powers.push_back(loop_powers.back() * LaurentPoly::loop_value());
      total += loop_powers[loops - 1].shifted(n - 2 * k, BigInt(count));
    }
  }
  return total;
}

} // namespace detail

/// Kauffman bracket by the full 2^n state sum. Crossing X[a,b,c,d] smooths
/// to (a,b)(c,d) with weight A or to (a,d)(b,c) with weight A^-1; loops are
/// counted with a union-find over arc labels.
inline LaurentPoly kauffman_bracket(const Diagram &d, const StateSumBudget &budget = {}) {
  if (d.is_unknot())
    return LaurentPoly::one(Variable::A);
  detail::check_crossings(d, budget.max_crossings);
  const int n = d.crossing_count();
  const int labels = 2 * n;
  if (n > 62)
    fail(ErrorKind::BudgetExceeded, "state index does not fit in 64 bits");

  struct Pairs {
    std::array<std::uint8_t, 4> a, b;
  };
  std::vector<Pairs> pairs(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    const auto &x = d.pd().crossings[static_cast<std::size_t>(c)];
    auto l = [&](int s) { return static_cast<std::uint8_t>(x[static_cast<std::size_t>(s)] - 1); };
    pairs[static_cast<std::size_t>(c)] = {{l(0), l(1), l(2), l(3)}, {l(0), l(3), l(1), l(2)}};
  }

  std::vector<std::vector<std::uint64_t>> hist(
      static_cast<std::size_t>(n) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(labels) + 1, 0));
  std::vector<std::uint8_t> parent(static_cast<std::size_t>(labels));
  auto find = [&](std::uint8_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };

  const detail::Deadline deadline(budget.timeout_ms);
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < states; ++s) {
    if ((s & 0xFFFF) == 0)
      deadline.check();
    std::iota(parent.begin(), parent.end(), std::uint8_t{0});
    int loops = labels;
    for (int c = 0; c < n; ++c) {
      const auto &p = (s >> c) & 1 ? pairs[static_cast<std::size_t>(c)].b : pairs[static_cast<std::size_t>(c)].a;
      for (int j = 0; j < 4; j += 2) {
        const auto r1 = find(p[static_cast<std::size_t>(j)]);
        const auto r2 = find(p[static_cast<std::size_t>(j + 1)]);
        if (r1 != r2) {
          parent[r1] = r2;
          --loops;
        }
      }
    }
    ++hist[static_cast<std::size_t>(std::popcount(s))][static_cast<std::size_t>(loops)];
  }
  return detail::bracket_from_histogram(n, hist);
}

/// Kauffman bracket by contracting crossings one at a time, keeping for
/// every way the processed part connects its open arcs a polynomial weight.
/// Exponentially cheaper than the full state sum on diagrams with a narrow
/// frontier; agrees with it exactly.
inline LaurentPoly kauffman_bracket_contraction(const Diagram &d, const StateSumBudget &budget) {
  if (d.is_unknot())
    return LaurentPoly::one(Variable::A);
  detail::check_crossings(d, budget.max_crossings);
  const int n = d.crossing_count();
  const auto &xs = d.pd().crossings;

  // Greedy order: next crossing shares the most arcs with the frontier.
  std::vector<int> order;
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  std::vector<int> touched(static_cast<std::size_t>(2 * n) + 1, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1, best_score = -1;
    for (int c = 0; c < n; ++c) {
      if (done[static_cast<std::size_t>(c)])
        continue;
      int score = 0;
      for (int l : xs[static_cast<std::size_t>(c)])
        score += touched[static_cast<std::size_t>(l)] == 1;
      if (score > best_score) {
        best = c;
        best_score = score;
      }
    }
    done[static_cast<std::size_t>(best)] = true;
    order.push_back(best);
    for (int l : xs[static_cast<std::size_t>(best)])
      ++touched[static_cast<std::size_t>(l)];
  }

  // Key: frontier labels (sorted) paired up as a mate list, plus whether a
  // loop has already closed (the first closed loop carries no factor).
  struct Key {
    std::vector<int> mates; // mates[i] = label matched with frontier[i]
    bool closed = false;
    auto operator<=>(const Key &) const = default;
  };
  std::vector<int> frontier;
  std::map<Key, LaurentPoly> states;
  states.emplace(Key{}, LaurentPoly::one(Variable::A));
  std::fill(touched.begin(), touched.end(), 0);
  const detail::Deadline deadline(budget.timeout_ms);
  const LaurentPoly loop = LaurentPoly::loop_value();

  std::vector<int> parent(static_cast<std::size_t>(2 * n) + 1);
  std::vector<int> degree(static_cast<std::size_t>(2 * n) + 1);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };

  for (int c : order) {
    deadline.check();
    const auto &x = xs[static_cast<std::size_t>(c)];
    for (int l : x)
      ++touched[static_cast<std::size_t>(l)];
    std::vector<int> next_frontier;
    for (int l : frontier)
      if (touched[static_cast<std::size_t>(l)] == 1)
        next_frontier.push_back(l);
    for (int l : x)
      if (touched[static_cast<std::size_t>(l)] == 1 &&
          std::find(next_frontier.begin(), next_frontier.end(), l) == next_frontier.end())
        next_frontier.push_back(l);
    std::sort(next_frontier.begin(), next_frontier.end());

    std::vector<int> nodes = frontier;
    nodes.insert(nodes.end(), x.begin(), x.end());
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    const std::array<std::array<int, 4>, 2> smoothings{{{x[0], x[1], x[2], x[3]}, {x[0], x[3], x[1], x[2]}}};
    std::map<Key, LaurentPoly> next;
    for (const auto &[key, weight] : states) {
      for (int which = 0; which < 2; ++which) {
        for (int v : nodes) {
          parent[static_cast<std::size_t>(v)] = v;
          degree[static_cast<std::size_t>(v)] = 0;
        }
        auto join = [&](int a, int b) {
          ++degree[static_cast<std::size_t>(a)];
          ++degree[static_cast<std::size_t>(b)];
          parent[static_cast<std::size_t>(find(a))] = find(b);
        };
        for (std::size_t i = 0; i < frontier.size(); ++i)
          if (frontier[i] < key.mates[i])
            join(frontier[i], key.mates[i]);
        const auto &sm = smoothings[static_cast<std::size_t>(which)];
        join(sm[0], sm[1]);
        join(sm[2], sm[3]);

        // Open ends of each component become mates; components without
        // open ends are closed loops.
        std::map<int, std::vector<int>> ends;
        std::vector<int> roots;
        for (int v : nodes) {
          const int r = find(v);
          roots.push_back(r);
          if (degree[static_cast<std::size_t>(v)] == 1)
            ends[r].push_back(v);
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

        Key nk;
        nk.closed = key.closed;
        nk.mates.resize(next_frontier.size());
        LaurentPoly w = weight.shifted(which == 0 ? 1 : -1);
        for (int r : roots) {
          auto it = ends.find(r);
          if (it == ends.end()) {
            if (nk.closed)
              w = w * loop;
            nk.closed = true;
            continue;
          }
          const int a = it->second[0], b = it->second[1];
          const auto ia = std::lower_bound(next_frontier.begin(), next_frontier.end(), a) - next_frontier.begin();
          const auto ib = std::lower_bound(next_frontier.begin(), next_frontier.end(), b) - next_frontier.begin();
          nk.mates[static_cast<std::size_t>(ia)] = b;
          nk.mates[static_cast<std::size_t>(ib)] = a;
        }
        auto [pos, inserted] = next.try_emplace(std::move(nk), LaurentPoly(Variable::A));
        pos->second += w;
      }
    }
    states = std::move(next);
    frontier = std::move(next_frontier);
  }

  LaurentPoly total(Variable::A);
  for (const auto &[key, weight] : states)
    total += weight;
  return total;
}

/// V(t) = (-A)^(-3w) <D> with t = A^-4.
inline LaurentPoly jones_from_bracket(const LaurentPoly &bracket, int writhe_value) {
  const BigInt sign = (writhe_value % 2 == 0) ? 1 : -1;
  return bracket.shifted(-3 * writhe_value, sign).substitute_monomial(Variable::T, -1, 4);
}

/// Pluggable Jones polynomial evaluator. Implementations must be
/// deterministic and safe to call concurrently.
class JonesOracle {
public:
  virtual ~JonesOracle() = default;
  virtual LaurentPoly evaluate(const Diagram &d) const = 0;
  virtual std::string descriptor() const = 0;
  /// Largest diagram the backend accepts.
  virtual int max_crossings() const { return std::numeric_limits<int>::max(); }
};

class StateSumOracle final : public JonesOracle {
public:
  explicit StateSumOracle(StateSumBudget budget = {}) : budget_(budget) {}

  LaurentPoly evaluate(const Diagram &d) const override {
    return jones_from_bracket(kauffman_bracket(d, budget_), writhe(d));
  }
  std::string descriptor() const override { return "state-sum"; }
  int max_crossings() const override { return budget_.max_crossings; }

private:
  StateSumBudget budget_;
};

class ContractionOracle final : public JonesOracle {
public:
  explicit ContractionOracle(StateSumBudget budget = {64, 0}) : budget_(budget) {}

  LaurentPoly evaluate(const Diagram &d) const override {
    return jones_from_bracket(kauffman_bracket_contraction(d, budget_), writhe(d));
  }
  std::string descriptor() const override { return "contraction"; }
  int max_crossings() const override { return budget_.max_crossings; }

private:
  StateSumBudget budget_;
};

inline LaurentPoly jones(const Diagram &d, const JonesOracle &oracle) { return oracle.evaluate(d); }

inline LaurentPoly jones(const Diagram &d) { return StateSumOracle{}.evaluate(d); }

} // namespace knotty
