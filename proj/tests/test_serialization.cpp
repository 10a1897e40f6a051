#include "fixtures.hpp"

#include "knotty/invariants.hpp"
#include "knotty/serialization.hpp"

#include <gtest/gtest.h>

using namespace knotty;

namespace {

ErrorKind failure_kind(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Syntax;
}

} // namespace

TEST(PdJson, RoundTrip) {
  for (const auto &k : fixtures::knots()) {
    const PdCode code = parse_pd(k.pd);
    EXPECT_EQ(pd_from_json(pd_to_json(code)), code) << k.name;
    EXPECT_EQ(pd_from_any(pd_to_json(code).dump()), code) << k.name;
  }
  EXPECT_EQ(pd_to_json(PdCode{}).dump(), R"({"crossings":[]})");
}

TEST(PdJson, Malformed) {
  EXPECT_EQ(failure_kind([] { pd_from_json(Json::parse(R"({"crossing":[]})")); }), ErrorKind::Syntax);
  EXPECT_EQ(failure_kind([] { pd_from_json(Json::parse(R"({"crossings":[[1,1,2]]})")); }), ErrorKind::Syntax);
  EXPECT_EQ(failure_kind([] { pd_from_json(Json::parse(R"({"crossings":[[1,1,2,"2"]]})")); }), ErrorKind::Syntax);
  EXPECT_EQ(failure_kind([] { pd_from_any("{not json"); }), ErrorKind::Syntax);
  EXPECT_EQ(failure_kind([] { pd_from_json(Json::parse(R"({"crossings":[[1,4,2,3],[3,6,4,5],[5,2,6,1]]})")); }),
            ErrorKind::Validation);
}

TEST(PolyJson, WireFormat) {
  const LaurentPoly trefoil = jones(diagram_from_text(fixtures::kTrefoil));
  EXPECT_EQ(poly_to_json(trefoil).dump(),
            R"({"terms":[{"coef":"-1","exp":-4},{"coef":"1","exp":-3},{"coef":"1","exp":-1}],"variable":"t"})");
  EXPECT_EQ(poly_from_json(poly_to_json(trefoil)), trefoil);
  EXPECT_EQ(poly_to_json(LaurentPoly::one(Variable::T)).dump(), R"({"terms":[{"coef":"1","exp":0}],"variable":"t"})");
}

TEST(PolyJson, BigCoefficientsSurvive) {
  LaurentPoly p(Variable::T);
  p.add_term(3, BigInt("-123456789012345678901234567890"));
  EXPECT_EQ(poly_from_json(poly_to_json(p)), p);
}

TEST(PolyJson, MalformedRepliesAreProtocolErrors) {
  for (const char *bad : {
           R"({"variable":"x","terms":[]})",
           R"({"variable":"t","terms":{}})",
           R"({"variable":"t","terms":[{"exp":1,"coef":1}]})",
           R"({"variable":"t","terms":[{"exp":1,"coef":"1.5"}]})",
           R"({"variable":"t","terms":[{"exp":1,"coef":"0"}]})",
           R"({"variable":"t","terms":[{"exp":2,"coef":"1"},{"exp":1,"coef":"1"}]})",
           R"({"variable":"t","terms":[{"exp":1,"coef":"1"},{"exp":1,"coef":"1"}]})",
       })
    EXPECT_EQ(failure_kind([&] { poly_from_json(Json::parse(bad)); }), ErrorKind::Protocol) << bad;
}

TEST(MoveJson, EveryKindRoundTrips) {
  const std::vector<Move> moves = {R1Add{3, Side::Right, -1}, R1Remove{2},     R2Add{1, 4, 2, false},
                                   R2Remove{5},               R3{1, 6},        CrossingFlip{0}};
  for (const auto &m : moves)
    EXPECT_EQ(move_from_json(move_to_json(m)), m) << move_to_json(m).dump();
  EXPECT_EQ(moves_from_json(moves_to_json(moves)), moves);
  EXPECT_EQ(move_to_json(R1Add{3, Side::Right, -1}).dump(),
            R"({"kind":"R1Add","site":{"arc":3,"chirality":-1,"side":"right"}})");
}

TEST(MoveJson, SingleObjectIsAOneMoveScript) {
  const auto moves = moves_from_json(Json::parse(R"({"kind":"CrossingFlip","site":{"crossing":1}})"));
  ASSERT_EQ(moves.size(), 1u);
  EXPECT_EQ(moves[0], Move{CrossingFlip{1}});
}

TEST(MoveJson, Defaults) {
  EXPECT_EQ(move_from_json(Json::parse(R"({"kind":"R1Add","site":{"arc":1,"chirality":1}})")),
            Move(R1Add{1, Side::Left, 1}));
  EXPECT_EQ(move_from_json(Json::parse(R"({"kind":"R2Add","site":{"arc1":1,"arc2":2,"face":0}})")),
            Move(R2Add{1, 2, 0, true}));
}

TEST(MoveJson, Malformed) {
  for (const char *bad : {R"({"kind":"R4","site":{}})", R"({"kind":"R1Remove"})", R"({"kind":"R1Remove","site":{}})",
                          R"({"kind":"R1Add","site":{"arc":1,"chirality":1,"side":"up"}})",
                          R"({"kind":"R3","site":{"face":"a","edge":1}})", R"(42)"})
    EXPECT_EQ(failure_kind([&] { moves_from_json(Json::parse(bad)); }), ErrorKind::Syntax) << bad;
}

TEST(SiteListJson, Keys) {
  const Json j = site_list_to_json(enumerate_moves(diagram_from_text(fixtures::kTrefoil)));
  for (const char *k : {"R1Add", "R1Remove", "R2Add", "R2Remove", "R3", "CrossingFlip"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["CrossingFlip"].size(), 3u);
  EXPECT_EQ(j["R1Add"].size(), 24u);
}
