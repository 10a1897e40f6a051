#pragma once

#include "knotty/diagram.hpp"
#include "knotty/error.hpp"
#include "knotty/invariants.hpp"
#include "knotty/moves.hpp"
#include "knotty/pcg.hpp"
#include "knotty/serialization.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace knotty {

struct GameConfig {
  int r_moves_per_turn = 4;
  int inversions_per_turn = 2;
  int max_turns_per_round = 10;
  int total_rounds = 3;
  int crossing_cap = kDefaultCrossingCap;
  std::uint64_t seed = 0;
  bool show_opponent_diagram = true;
  /// Fixed opponents for the first rounds; later rounds are generated.
  std::vector<PdCode> opponents;

  void validate() const {
    auto positive = [](int v, const char *name) {
      if (v < 1)
        fail(ErrorKind::InvalidConfig, std::string(name) + " must be positive");
    };
    positive(r_moves_per_turn, "rMovesPerTurn");
    positive(inversions_per_turn, "inversionsPerTurn");
    positive(max_turns_per_round, "maxTurnsPerRound");
    positive(total_rounds, "totalRounds");
    positive(crossing_cap, "crossingCap");
  }
};

enum class GameStatus { Ongoing, RoundWon, RoundLost, GameWon, GameLost };

inline const char *status_name(GameStatus s) noexcept {
  switch (s) {
  case GameStatus::Ongoing: return "Ongoing";
  case GameStatus::RoundWon: return "RoundWon";
  case GameStatus::RoundLost: return "RoundLost";
  case GameStatus::GameWon: return "GameWon";
  case GameStatus::GameLost: return "GameLost";
  }
  return "?";
}

inline bool is_terminal(GameStatus s) noexcept {
  return s == GameStatus::GameWon || s == GameStatus::GameLost;
}

struct TurnSubmission {
  std::vector<Move> moves;

  int r_moves() const {
    return static_cast<int>(std::count_if(moves.begin(), moves.end(), is_reidemeister));
  }
  int inversions() const { return static_cast<int>(moves.size()) - r_moves(); }
};

struct RoundResult {
  int round = 0;
  GameStatus outcome = GameStatus::Ongoing;
  int turns = 0;
};

struct GameState {
  Diagram player;
  LaurentPoly player_jp = LaurentPoly::one(Variable::T);
  GeneratedOpponent opponent;
  int round = 1;
  int turn_in_round = 1;
  GameStatus status = GameStatus::Ongoing;
  long long score = 0;
  std::vector<RoundResult> history;
  bool has_last_turn = false;
  BigInt last_distance = 0;
  int last_turn_score = 0;
};

/// Produces the opponent for a round given the player's current JP.
using OpponentSource =
    std::function<GeneratedOpponent(const GameConfig &, int round, const LaurentPoly &player_jp, const JonesOracle &)>;

inline constexpr int kMaxTurnScore = 100;
inline constexpr int kRoundBonus = 1000;

/// Closeness score for one turn: kMaxTurnScore / (1 + jp_distance).
inline int score_turn(const LaurentPoly &player_jp, const LaurentPoly &opponent_jp) {
  const BigInt d = jp_distance(player_jp, opponent_jp);
  if (d >= kMaxTurnScore)
    return 0;
  return kMaxTurnScore / (1 + d.convert_to<int>());
}

/// Fixed opponents from the config first, then the difficulty schedule.
inline GeneratedOpponent default_opponent(const GameConfig &config, int round, const LaurentPoly &player_jp,
                                          const JonesOracle &oracle) {
  if (round <= static_cast<int>(config.opponents.size())) {
    GeneratedOpponent o;
    o.diagram = build_diagram(config.opponents[static_cast<std::size_t>(round - 1)]);
    o.jp = oracle.evaluate(o.diagram);
    return o;
  }
  GeneratorConfig g = difficulty_schedule(round);
  g.seed = mix_seed(config.seed ^ static_cast<std::uint64_t>(round));
  return generate_opponent(g, player_jp, oracle);
}

inline GameState new_game(const GameConfig &config, const JonesOracle &oracle,
                          const OpponentSource &source = default_opponent) {
  config.validate();
  if (config.crossing_cap > oracle.max_crossings())
    fail(ErrorKind::InvalidConfig, "crossingCap " + std::to_string(config.crossing_cap) +
                                       " exceeds what the " + oracle.descriptor() + " oracle evaluates (" +
                                       std::to_string(oracle.max_crossings()) + ")");
  GameState s;
  s.player_jp = oracle.evaluate(s.player);
  s.opponent = source(config, 1, s.player_jp, oracle);
  return s;
}

/// Applies one turn. Never modifies `state`; any error leaves the caller's
/// state as it was.
inline GameState play_turn(const GameConfig &config, const GameState &state, const TurnSubmission &turn,
                           const JonesOracle &oracle, const OpponentSource &source = default_opponent) {
  if (is_terminal(state.status))
    fail(ErrorKind::GameOver, std::string("game is over (") + status_name(state.status) + ")");
  if (turn.r_moves() > config.r_moves_per_turn)
    fail(ErrorKind::BudgetViolation, std::to_string(turn.r_moves()) + " Reidemeister moves, budget is " +
                                         std::to_string(config.r_moves_per_turn));
  if (turn.inversions() > config.inversions_per_turn)
    fail(ErrorKind::BudgetViolation, std::to_string(turn.inversions()) + " crossing flips, budget is " +
                                         std::to_string(config.inversions_per_turn));

  GameState next = state;
  for (std::size_t i = 0; i < turn.moves.size(); ++i) {
    try {
      next.player = apply_move(next.player, turn.moves[i], config.crossing_cap);
    } catch (const Error &e) {
      throw Error(e.kind(), "move " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  next.player_jp = oracle.evaluate(next.player);
  next.has_last_turn = true;
  next.last_distance = jp_distance(next.player_jp, next.opponent.jp);
  next.last_turn_score = score_turn(next.player_jp, next.opponent.jp);
  next.score += next.last_turn_score;

  if (next.player_jp == next.opponent.jp) {
    next.history.push_back({next.round, GameStatus::RoundWon, next.turn_in_round});
    next.score += kRoundBonus;
    if (next.round >= config.total_rounds) {
      next.status = GameStatus::GameWon;
      return next;
    }
    next.round += 1;
    next.turn_in_round = 1;
    next.opponent = source(config, next.round, next.player_jp, oracle);
    next.status = GameStatus::RoundWon;
    return next;
  }
  if (next.turn_in_round >= config.max_turns_per_round) {
    // Losing a round ends the game.
    next.history.push_back({next.round, GameStatus::RoundLost, next.turn_in_round});
    next.status = GameStatus::GameLost;
    return next;
  }
  next.turn_in_round += 1;
  next.status = GameStatus::Ongoing;
  return next;
}

inline GameState replay_game(const GameConfig &config, const std::vector<TurnSubmission> &log,
                             const JonesOracle &oracle, const OpponentSource &source = default_opponent) {
  GameState s = new_game(config, oracle, source);
  for (const auto &turn : log)
    s = play_turn(config, s, turn, oracle, source);
  return s;
}

// ---------------------------------------------------------------------------
// JSON

inline Json game_config_to_json(const GameConfig &c) {
  Json opponents = Json::array();
  for (const auto &pd : c.opponents)
    opponents.push_back(serialize_pd(pd));
  Json j{{"rMovesPerTurn", c.r_moves_per_turn},
         {"inversionsPerTurn", c.inversions_per_turn},
         {"maxTurnsPerRound", c.max_turns_per_round},
         {"totalRounds", c.total_rounds},
         {"crossingCap", c.crossing_cap},
         {"seed", c.seed},
         {"showOpponentDiagram", c.show_opponent_diagram}};
  if (!c.opponents.empty())
    j["opponents"] = opponents;
  return j;
}

inline GameConfig game_config_from_json(const Json &j) {
  if (!j.is_object())
    fail(ErrorKind::Syntax, "game config must be a JSON object");
  GameConfig c;
  c.r_moves_per_turn = detail::field_or<int>(j, "rMovesPerTurn", c.r_moves_per_turn);
  c.inversions_per_turn = detail::field_or<int>(j, "inversionsPerTurn", c.inversions_per_turn);
  c.max_turns_per_round = detail::field_or<int>(j, "maxTurnsPerRound", c.max_turns_per_round);
  c.total_rounds = detail::field_or<int>(j, "totalRounds", c.total_rounds);
  c.crossing_cap = detail::field_or<int>(j, "crossingCap", c.crossing_cap);
  c.seed = detail::field_or<std::uint64_t>(j, "seed", c.seed);
  c.show_opponent_diagram = detail::field_or<bool>(j, "showOpponentDiagram", c.show_opponent_diagram);
  if (j.contains("opponents")) {
    if (!j["opponents"].is_array())
      fail(ErrorKind::Syntax, "\"opponents\" must be an array");
    for (const auto &o : j["opponents"])
      c.opponents.push_back(o.is_string() ? parse_pd(o.get<std::string>()) : pd_from_json(o));
  }
  c.validate();
  return c;
}

inline Json submission_to_json(const TurnSubmission &t) { return Json{{"moves", moves_to_json(t.moves)}}; }

inline TurnSubmission submission_from_json(const Json &j) {
  if (j.is_array())
    return {moves_from_json(j)};
  return {moves_from_json(detail::field<Json>(j, "moves"))};
}

inline std::vector<TurnSubmission> script_from_json(const Json &j) {
  const Json &turns = j.is_object() ? detail::field<Json>(j, "turns") : j;
  if (!turns.is_array())
    fail(ErrorKind::Syntax, "a script is an array of turn submissions");
  std::vector<TurnSubmission> out;
  for (const auto &t : turns)
    out.push_back(submission_from_json(t));
  return out;
}

namespace detail {
inline Json big_to_json(const BigInt &v) {
  if (v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return v.str();
}
} // namespace detail

/// Session snapshot. Opponent provenance is included only with `debug`.
inline Json game_state_to_json(const GameConfig &config, const GameState &s, bool debug = false) {
  Json opponent{{"jp", poly_to_json(s.opponent.jp)}, {"attempts", s.opponent.attempts}};
  if (config.show_opponent_diagram || debug)
    opponent["pd"] = diagram_to_json(s.opponent.diagram);
  if (debug)
    opponent["provenance"] = Json{{"seed", s.opponent.walk_seed}, {"moves", moves_to_json(s.opponent.moves)}};

  Json history = Json::array();
  for (const auto &r : s.history)
    history.push_back({{"round", r.round}, {"outcome", status_name(r.outcome)}, {"turns", r.turns}});

  Json j{{"round", s.round},
         {"turnInRound", s.turn_in_round},
         {"status", status_name(s.status)},
         {"score", s.score},
         {"player", {{"pd", diagram_to_json(s.player)}, {"jp", poly_to_json(s.player_jp)}}},
         {"opponent", opponent},
         {"budgets",
          {{"rMovesPerTurn", config.r_moves_per_turn},
           {"inversionsPerTurn", config.inversions_per_turn},
           {"maxTurnsPerRound", config.max_turns_per_round},
           {"totalRounds", config.total_rounds},
           {"crossingCap", config.crossing_cap}}},
         {"history", history}};
  j["lastTurn"] = s.has_last_turn ? Json{{"distance", detail::big_to_json(s.last_distance)},
                                         {"turnScore", s.last_turn_score}}
                                  : Json(nullptr);
  return j;
}

} // namespace knotty
