#include "fixtures.hpp"

#include "knotty/game.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace knotty;

namespace {

Json read_sample(const std::string &rel) {
  std::ifstream in(std::string(KNOTTY_SAMPLES_DIR) + "/" + rel);
  std::stringstream buf;
  buf << in.rdbuf();
  return Json::parse(buf.str());
}

GameConfig trefoil_game() { return game_config_from_json(read_sample("quick_trefoil_win/config.json")); }

std::vector<TurnSubmission> trefoil_script() {
  return script_from_json(read_sample("quick_trefoil_win/script.json"));
}

ErrorKind turn_failure(const GameConfig &c, const GameState &s, const TurnSubmission &t) {
  try {
    play_turn(c, s, t, StateSumOracle{});
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "turn unexpectedly accepted";
  return ErrorKind::Syntax;
}

const TurnSubmission kOneKink{{R1Add{1, Side::Left, 1}}};

} // namespace

TEST(Game, StartsFromTheUnknot) {
  const StateSumOracle oracle;
  const GameConfig c = trefoil_game();
  const GameState s = new_game(c, oracle);
  EXPECT_TRUE(s.player.is_unknot());
  EXPECT_EQ(s.player_jp.to_string(), "1");
  EXPECT_EQ(s.round, 1);
  EXPECT_EQ(s.turn_in_round, 1);
  EXPECT_EQ(s.status, GameStatus::Ongoing);
  EXPECT_EQ(s.opponent.jp.to_string(), "-t^-4 + t^-3 + t^-1");
  const Json j = game_state_to_json(c, s);
  EXPECT_EQ(j["player"]["jp"], poly_to_json(LaurentPoly::one(Variable::T)));
  EXPECT_TRUE(j["lastTurn"].is_null());
}

TEST(Game, QuickTrefoilWin) {
  const StateSumOracle oracle;
  const GameConfig c = trefoil_game();
  const auto script = trefoil_script();
  ASSERT_EQ(script.size(), 1u);
  EXPECT_EQ(script[0].r_moves(), 2);
  EXPECT_EQ(script[0].inversions(), 2);
  const GameState s = replay_game(c, script, oracle);
  EXPECT_EQ(s.status, GameStatus::RoundWon);
  EXPECT_EQ(s.round, 2);
  EXPECT_EQ(s.turn_in_round, 1);
  ASSERT_EQ(s.history.size(), 1u);
  EXPECT_EQ(s.history[0].outcome, GameStatus::RoundWon);
  EXPECT_EQ(s.history[0].turns, 1);
  EXPECT_EQ(s.player.crossing_count(), 3);
  EXPECT_EQ(s.score, kMaxTurnScore + kRoundBonus);
  EXPECT_EQ(s.last_distance, 0);
}

TEST(Game, BudgetsAreEnforced) {
  const GameConfig c = trefoil_game();
  const GameState s = new_game(c, StateSumOracle{});
  TurnSubmission five_r;
  for (int i = 0; i < 5; ++i)
    five_r.moves.push_back(R1Add{1, Side::Left, 1});
  EXPECT_EQ(turn_failure(c, s, five_r), ErrorKind::BudgetViolation);
  TurnSubmission three_flips{{R1Add{1, Side::Left, 1}, CrossingFlip{0}, CrossingFlip{0}, CrossingFlip{0}}};
  EXPECT_EQ(turn_failure(c, s, three_flips), ErrorKind::BudgetViolation);
}

TEST(Game, FailedTurnsLeaveTheStateAlone) {
  const StateSumOracle oracle;
  const GameConfig c = trefoil_game();
  const GameState s = new_game(c, oracle);
  const std::string before = game_state_to_json(c, s, true).dump();
  TurnSubmission bad{{R1Add{1, Side::Left, 1}, R1Remove{3}}};
  EXPECT_EQ(turn_failure(c, s, bad), ErrorKind::InapplicableMove);
  try {
    play_turn(c, s, bad, oracle);
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("move 2"), std::string::npos) << e.what();
  }
  EXPECT_EQ(game_state_to_json(c, s, true).dump(), before);
}

TEST(Game, CrossingCapAppliesToTurns) {
  GameConfig c = trefoil_game();
  c.crossing_cap = 2;
  const GameState s = new_game(c, StateSumOracle{});
  TurnSubmission three{{R1Add{1, Side::Left, 1}, R1Add{1, Side::Left, 1}, R1Add{1, Side::Left, 1}}};
  EXPECT_EQ(turn_failure(c, s, three), ErrorKind::CrossingCapExceeded);
}

TEST(Game, PureReidemeisterTurnsNeverChangeTheDistance) {
  const StateSumOracle oracle;
  const GameConfig c = trefoil_game();
  GameState s = new_game(c, oracle);
  const BigInt start = jp_distance(s.player_jp, s.opponent.jp);
  for (int turn = 0; turn < 5; ++turn) {
    const auto sites = enumerate_moves(s.player);
    TurnSubmission t{{sites.r1_add[static_cast<std::size_t>(turn) % sites.r1_add.size()]}};
    s = play_turn(c, s, t, oracle);
    EXPECT_EQ(s.last_distance, start);
    EXPECT_EQ(s.status, GameStatus::Ongoing);
  }
}

TEST(Game, RunningOutOfTurnsLosesTheGame) {
  const StateSumOracle oracle;
  GameConfig c = trefoil_game();
  c.max_turns_per_round = 3;
  GameState s = new_game(c, oracle);
  for (int i = 0; i < 3; ++i)
    s = play_turn(c, s, kOneKink, oracle);
  EXPECT_EQ(s.status, GameStatus::GameLost);
  ASSERT_EQ(s.history.size(), 1u);
  EXPECT_EQ(s.history[0].outcome, GameStatus::RoundLost);
  EXPECT_EQ(s.history[0].turns, 3);
  EXPECT_EQ(turn_failure(c, s, kOneKink), ErrorKind::GameOver);
}

TEST(Game, WinningTheLastRoundWinsTheGame) {
  const StateSumOracle oracle;
  GameConfig c = trefoil_game();
  c.total_rounds = 1;
  const GameState s = replay_game(c, trefoil_script(), oracle);
  EXPECT_EQ(s.status, GameStatus::GameWon);
  EXPECT_EQ(turn_failure(c, s, kOneKink), ErrorKind::GameOver);
}

TEST(Game, LaterRoundsAreGeneratedAndAvoidThePlayer) {
  const StateSumOracle oracle;
  const GameConfig c = trefoil_game();
  const GameState s = replay_game(c, trefoil_script(), oracle);
  EXPECT_NE(s.opponent.jp, s.player_jp);
  EXPECT_GT(s.opponent.attempts, 0);
  const GeneratorConfig tier = difficulty_schedule(2);
  EXPECT_TRUE(tier.term_band.contains(static_cast<long long>(s.opponent.jp.term_count())));
}

TEST(Game, ReplayIsDeterministic) {
  const StateSumOracle oracle;
  GameConfig c;
  c.seed = 31337;
  std::vector<TurnSubmission> log{kOneKink, {{CrossingFlip{0}}}, kOneKink};
  const auto a = game_state_to_json(c, replay_game(c, log, oracle), true).dump();
  const auto b = game_state_to_json(c, replay_game(c, log, oracle), true).dump();
  EXPECT_EQ(a, b);
  c.seed = 31338;
  EXPECT_NE(game_state_to_json(c, replay_game(c, log, oracle), true).dump(), a);
}

TEST(Game, Scoring) {
  const LaurentPoly one = LaurentPoly::one(Variable::T);
  const LaurentPoly trefoil = jones(diagram_from_text(fixtures::kTrefoil));
  EXPECT_EQ(score_turn(one, one), 100);
  EXPECT_EQ(score_turn(one, trefoil), 20);
  LaurentPoly far(Variable::T);
  far.add_term(0, 500);
  EXPECT_EQ(score_turn(one, far), 0);
}

TEST(Game, SnapshotVisibility) {
  const StateSumOracle oracle;
  GameConfig c = trefoil_game();
  GameState s = new_game(c, oracle);
  EXPECT_TRUE(game_state_to_json(c, s)["opponent"].contains("pd"));
  EXPECT_FALSE(game_state_to_json(c, s)["opponent"].contains("provenance"));
  EXPECT_TRUE(game_state_to_json(c, s, true)["opponent"].contains("provenance"));
  c.show_opponent_diagram = false;
  EXPECT_FALSE(game_state_to_json(c, s)["opponent"].contains("pd"));
  EXPECT_TRUE(game_state_to_json(c, s, true)["opponent"].contains("pd"));
  EXPECT_TRUE(game_state_to_json(c, s)["opponent"].contains("jp"));
}

TEST(Game, ConfigValidation) {
  EXPECT_THROW(game_config_from_json(Json::parse(R"({"rMovesPerTurn":0})")), Error);
  EXPECT_THROW(game_config_from_json(Json::parse(R"({"opponents":["X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]"]})")), Error);
  EXPECT_THROW(game_config_from_json(Json::parse(R"([1,2])")), Error);
  GameConfig c;
  c.crossing_cap = 30;
  try {
    new_game(c, StateSumOracle{});
    FAIL() << "cap above what the oracle evaluates";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
  }
  EXPECT_NO_THROW(new_game(c, StateSumOracle(StateSumBudget{30, 0})));
}

TEST(Game, ConfigJsonRoundTrip) {
  const GameConfig c = trefoil_game();
  const GameConfig d = game_config_from_json(game_config_to_json(c));
  EXPECT_EQ(game_config_to_json(d), game_config_to_json(c));
  EXPECT_EQ(d.opponents.size(), 1u);
}

TEST(Game, ScriptFormats) {
  EXPECT_EQ(script_from_json(Json::parse(R"({"turns":[[]]})")).size(), 1u);
  EXPECT_EQ(script_from_json(Json::parse(R"([{"moves":[]},[]])")).size(), 2u);
  EXPECT_THROW(script_from_json(Json::parse(R"({"turns":3})")), Error);
}
