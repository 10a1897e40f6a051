#pragma once

#include "knotty/diagram.hpp"
#include "knotty/error.hpp"
#include "knotty/invariants.hpp"
#include "knotty/moves.hpp"
#include "knotty/serialization.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace knotty {

struct Band {
  int min = 0;
  int max = 0;

  bool contains(long long v) const noexcept { return v >= min && v <= max; }
  friend bool operator==(const Band &, const Band &) = default;
};

/// Knobs for the random-walk generator.
struct GeneratorConfig {
  int n_moves = 8;
  double p_inversion = 0.3;
  Band term_band{3, 5};
  Band crossing_band{1, 12};
  int max_attempts = 500;
  std::uint64_t seed = 0;
  /// Probability of drawing a crossing-increasing move (R1Add / R2Add).
  double bias = 0.7;
  /// The walk never grows a diagram past this many crossings.
  int crossing_cap = kDefaultCrossingCap;

  void validate() const {
    auto bad = [](const std::string &why) { fail(ErrorKind::InvalidConfig, why); };
    if (n_moves < 0)
      bad("nMoves must be non-negative");
    if (!(p_inversion >= 0.0 && p_inversion <= 1.0))
      bad("pInversion must lie in [0,1]");
    if (!(bias >= 0.0 && bias <= 1.0))
      bad("bias must lie in [0,1]");
    if (term_band.min > term_band.max || crossing_band.min > crossing_band.max)
      bad("bands must be non-empty");
    if (max_attempts < 1)
      bad("maxAttempts must be at least 1");
    if (crossing_cap < 1)
      bad("crossingCap must be positive");
  }

  friend bool operator==(const GeneratorConfig &, const GeneratorConfig &) = default;
};

struct GeneratedOpponent {
  Diagram diagram;
  LaurentPoly jp{Variable::T};
  /// Seed of the accepted walk; replaying `moves` from the unknot gives `diagram`.
  std::uint64_t walk_seed = 0;
  std::vector<Move> moves;
  int attempts = 0;
};

/// Portable draws on top of mt19937_64, so a seed means the same walk with
/// every standard library.
class WalkRng {
public:
  explicit WalkRng(std::uint64_t seed) : engine_(seed) {}

  std::size_t index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do
      r = engine_();
    while (r >= limit);
    return static_cast<std::size_t>(r % bound);
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Random walk from the unknot: `n_moves` Reidemeister moves, each followed
/// with probability `p_inversion` by a crossing flip, then simplified.
/// Every applied move, including the simplification, is appended to `log`.
inline Diagram random_walk(const GeneratorConfig &config, WalkRng &rng, std::vector<Move> *log = nullptr) {
  config.validate();
  Diagram d;
  auto record = [&](const Move &m) {
    d = apply_move(d, m, config.crossing_cap);
    if (log)
      log->push_back(m);
  };

  for (int i = 0; i < config.n_moves; ++i) {
    const auto sites = enumerate_moves(d);
    const int n = d.crossing_count();
    std::vector<std::vector<Move>> growing, other;
    auto add_kind = [](std::vector<std::vector<Move>> &pool, const auto &list) {
      if (list.empty())
        return;
      pool.emplace_back(list.begin(), list.end());
    };
    if (n + 1 <= config.crossing_cap)
      add_kind(growing, sites.r1_add);
    if (n + 2 <= config.crossing_cap)
      add_kind(growing, sites.r2_add);
    add_kind(other, sites.r1_remove);
    add_kind(other, sites.r2_remove);
    add_kind(other, sites.r3);

    const bool want_growth = rng.unit() < config.bias;
    auto &pool = (want_growth && !growing.empty()) || other.empty() ? growing : other;
    if (pool.empty())
      continue;
    const auto &kind = pool[rng.index(pool.size())];
    record(kind[rng.index(kind.size())]);

    if (rng.unit() < config.p_inversion && d.crossing_count() > 0)
      record(CrossingFlip{static_cast<int>(rng.index(static_cast<std::size_t>(d.crossing_count())))});
  }
  std::vector<Move> cleanup;
  d = simplify(d, log ? &cleanup : nullptr);
  if (log)
    log->insert(log->end(), cleanup.begin(), cleanup.end());
  return d;
}

inline Diagram replay_moves(const std::vector<Move> &moves, int crossing_cap = kDefaultCrossingCap) {
  Diagram d;
  for (const auto &m : moves)
    d = apply_move(d, m, crossing_cap);
  return d;
}

/// The acceptance predicate of the generator.
inline bool accepts(const GeneratorConfig &config, const LaurentPoly &player_jp, const Diagram &d,
                    const LaurentPoly &jp) {
  return !(jp == player_jp) && config.term_band.contains(static_cast<long long>(jp.term_count())) &&
         config.crossing_band.contains(d.crossing_count());
}

/// Draws walks until one passes the predicate. Walk k uses seed
/// mix_seed(mix_seed(seed) + k), so the result depends only on the config and player JP.
inline GeneratedOpponent generate_opponent(const GeneratorConfig &config, const LaurentPoly &player_jp,
                                           const JonesOracle &oracle) {
  config.validate();
  if (player_jp.variable() != Variable::T)
    fail(ErrorKind::VariableMismatch, "player JP must be a polynomial in t");
  std::unordered_map<std::string, LaurentPoly> cache;
  for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
    const std::uint64_t walk_seed = mix_seed(mix_seed(config.seed) + static_cast<std::uint64_t>(attempt));
    WalkRng rng(walk_seed);
    std::vector<Move> moves;
    Diagram d = random_walk(config, rng, &moves);
    if (!config.crossing_band.contains(d.crossing_count()))
      continue;
    const std::string key = serialize_pd(d.pd());
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, oracle.evaluate(d)).first;
    if (accepts(config, player_jp, d, it->second))
      return GeneratedOpponent{std::move(d), it->second, walk_seed, std::move(moves), attempt};
  }
  fail(ErrorKind::GenerationExhausted, "no acceptable opponent in " +
                                           std::to_string(config.max_attempts) +
                                           " attempts; widen the bands");
}

/// Default difficulty table; rounds past the end reuse the last tier.
inline GeneratorConfig difficulty_schedule(int round) {
  if (round < 1)
    fail(ErrorKind::InvalidConfig, "rounds start at 1");
  struct Tier {
    int n_moves;
    Band terms;
    Band crossings;
  };
  static constexpr Tier tiers[] = {
      {6, {3, 3}, {3, 6}},
      {8, {3, 5}, {3, 8}},
      {10, {4, 6}, {4, 10}},
      {12, {5, 8}, {5, 12}},
      {14, {6, 10}, {6, 14}},
  };
  constexpr int count = static_cast<int>(std::size(tiers));
  const Tier &t = tiers[std::min(round, count) - 1];
  GeneratorConfig c;
  c.n_moves = t.n_moves;
  c.term_band = t.terms;
  c.crossing_band = t.crossings;
  c.p_inversion = 0.35;
  c.crossing_cap = 16;
  return c;
}

// ---------------------------------------------------------------------------
// JSON

inline Json band_to_json(const Band &b) { return Json::array({b.min, b.max}); }

inline Band band_from_json(const Json &j, const char *name) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    fail(ErrorKind::Syntax, std::string("\"") + name + "\" must be [min, max]");
  return {j[0].get<int>(), j[1].get<int>()};
}

inline Json generator_config_to_json(const GeneratorConfig &c) {
  return Json{{"nMoves", c.n_moves},
              {"pInversion", c.p_inversion},
              {"termBand", band_to_json(c.term_band)},
              {"crossingBand", band_to_json(c.crossing_band)},
              {"maxAttempts", c.max_attempts},
              {"seed", c.seed},
              {"bias", c.bias},
              {"crossingCap", c.crossing_cap}};
}

inline GeneratorConfig generator_config_from_json(const Json &j) {
  if (!j.is_object())
    fail(ErrorKind::Syntax, "generator config must be a JSON object");
  GeneratorConfig c;
  c.n_moves = detail::field_or<int>(j, "nMoves", c.n_moves);
  c.p_inversion = detail::field_or<double>(j, "pInversion", c.p_inversion);
  if (j.contains("termBand"))
    c.term_band = band_from_json(j["termBand"], "termBand");
  if (j.contains("crossingBand"))
    c.crossing_band = band_from_json(j["crossingBand"], "crossingBand");
  c.max_attempts = detail::field_or<int>(j, "maxAttempts", c.max_attempts);
  c.seed = detail::field_or<std::uint64_t>(j, "seed", c.seed);
  c.bias = detail::field_or<double>(j, "bias", c.bias);
  c.crossing_cap = detail::field_or<int>(j, "crossingCap", c.crossing_cap);
  c.validate();
  return c;
}

inline Json opponent_to_json(const GeneratedOpponent &o, bool with_provenance = true) {
  Json j{{"pd", diagram_to_json(o.diagram)}, {"jp", poly_to_json(o.jp)}, {"attempts", o.attempts}};
  if (with_provenance)
    j["provenance"] = Json{{"seed", o.walk_seed}, {"moves", moves_to_json(o.moves)}};
  return j;
}

} // namespace knotty
