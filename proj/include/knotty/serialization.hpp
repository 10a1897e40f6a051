#pragma once

#include "knotty/diagram.hpp"
#include "knotty/error.hpp"
#include "knotty/laurent_poly.hpp"
#include "knotty/moves.hpp"
#include "knotty/pd_code.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace knotty {

using Json = nlohmann::json;

namespace detail {

template <typename T> T field(const Json &j, const char *name) {
  if (!j.is_object() || !j.contains(name))
    fail(ErrorKind::Syntax, std::string("missing field \"") + name + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception &e) {
    fail(ErrorKind::Syntax, std::string("field \"") + name + "\": " + e.what());
  }
}

template <typename T> T field_or(const Json &j, const char *name, T fallback) {
  if (!j.is_object() || !j.contains(name))
    return fallback;
  return field<T>(j, name);
}

} // namespace detail

// ---------------------------------------------------------------------------
// PD codes: {"crossings": [[a,b,c,d], ...]}

inline Json pd_to_json(const PdCode &code) {
  Json xs = Json::array();
  for (const auto &x : code.crossings)
    xs.push_back({x[0], x[1], x[2], x[3]});
  return Json{{"crossings", xs}};
}

inline PdCode pd_from_json(const Json &j) {
  PdCode code;
  const auto xs = detail::field<Json>(j, "crossings");
  if (!xs.is_array())
    fail(ErrorKind::Syntax, "\"crossings\" must be an array");
  for (const auto &x : xs) {
    if (!x.is_array() || x.size() != 4)
      fail(ErrorKind::Syntax, "each crossing must be an array of four arc labels");
    PdCrossing c{};
    for (std::size_t s = 0; s < 4; ++s) {
      if (!x[s].is_number_integer() || x[s].get<long long>() <= 0)
        fail(ErrorKind::Syntax, "arc labels must be positive integers");
      c[s] = x[s].get<int>();
    }
    code.crossings.push_back(c);
  }
  validate_pd(code);
  return code;
}

/// Accepts either the JSON object form or the `X[...]` text form.
inline PdCode pd_from_any(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded())
      fail(ErrorKind::Syntax, "malformed PD JSON");
    return pd_from_json(j);
  }
  return parse_pd(text);
}

// ---------------------------------------------------------------------------
// Polynomials: {"variable":"t","terms":[{"exp":e,"coef":"c"}...]}, ascending.

inline Json poly_to_json(const LaurentPoly &p) {
  Json terms = Json::array();
  for (const auto &[e, c] : p.terms())
    terms.push_back({{"exp", e}, {"coef", c.str()}});
  return Json{{"variable", std::string(1, variable_symbol(p.variable()))}, {"terms", terms}};
}

inline LaurentPoly poly_from_json(const Json &j) {
  const auto var = detail::field<std::string>(j, "variable");
  if (var != "t" && var != "A")
    fail(ErrorKind::Protocol, "unknown polynomial variable \"" + var + "\"");
  LaurentPoly p(var == "t" ? Variable::T : Variable::A);
  const auto terms = detail::field<Json>(j, "terms");
  if (!terms.is_array())
    fail(ErrorKind::Protocol, "\"terms\" must be an array");
  bool first = true;
  int last = 0;
  for (const auto &t : terms) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("coef") ||
        !t["exp"].is_number_integer() || !t["coef"].is_string())
      fail(ErrorKind::Protocol, "each term needs an integer \"exp\" and a string \"coef\"");
    const int e = t["exp"].get<int>();
    if (!first && e <= last)
      fail(ErrorKind::Protocol, "terms must be sorted by strictly ascending exponent");
    BigInt c;
    try {
      c = BigInt(t["coef"].get<std::string>());
    } catch (const std::exception &) {
      fail(ErrorKind::Protocol, "coefficient is not a decimal integer");
    }
    if (c == 0)
      fail(ErrorKind::Protocol, "zero coefficients must be omitted");
    p.add_term(e, c);
    first = false;
    last = e;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Moves: {"kind": "...", "site": {...}}
//   R1Add        {"arc", "side": "left"|"right", "chirality": 1|-1}
//   R1Remove     {"crossing"}
//   R2Add        {"arc1", "arc2", "face", "over"}
//   R2Remove     {"face"}
//   R3           {"face", "edge"}
//   CrossingFlip {"crossing"}
// Crossing and face ids are 0-based indices; arc ids are PD labels.

inline Json move_to_json(const Move &m) {
  Json site = std::visit(
      [](const auto &s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, R1Add>)
          return {{"arc", s.arc}, {"side", s.side == Side::Left ? "left" : "right"}, {"chirality", s.chirality}};
        else if constexpr (std::is_same_v<T, R2Add>)
          return {{"arc1", s.arc1}, {"arc2", s.arc2}, {"face", s.face}, {"over", s.over}};
        else if constexpr (std::is_same_v<T, R2Remove>)
          return {{"face", s.face}};
        else if constexpr (std::is_same_v<T, R3>)
          return {{"face", s.face}, {"edge", s.edge}};
        else
          return {{"crossing", s.crossing}};
      },
      m);
  return Json{{"kind", kind_name(kind_of(m))}, {"site", site}};
}

inline Move move_from_json(const Json &j) {
  const auto kind = detail::field<std::string>(j, "kind");
  const auto site = detail::field<Json>(j, "site");
  using detail::field;
  if (kind == "R1Add") {
    const auto side = detail::field_or<std::string>(site, "side", "left");
    if (side != "left" && side != "right")
      fail(ErrorKind::Syntax, "R1Add side must be \"left\" or \"right\"");
    return R1Add{field<int>(site, "arc"), side == "left" ? Side::Left : Side::Right,
                 field<int>(site, "chirality")};
  }
  if (kind == "R1Remove")
    return R1Remove{field<int>(site, "crossing")};
  if (kind == "R2Add")
    return R2Add{field<int>(site, "arc1"), field<int>(site, "arc2"), field<int>(site, "face"),
                 detail::field_or<bool>(site, "over", true)};
  if (kind == "R2Remove")
    return R2Remove{field<int>(site, "face")};
  if (kind == "R3")
    return R3{field<int>(site, "face"), field<int>(site, "edge")};
  if (kind == "CrossingFlip")
    return CrossingFlip{field<int>(site, "crossing")};
  fail(ErrorKind::Syntax, "unknown move kind \"" + kind + "\"");
}

inline Json moves_to_json(const std::vector<Move> &moves) {
  Json out = Json::array();
  for (const auto &m : moves)
    out.push_back(move_to_json(m));
  return out;
}

inline std::vector<Move> moves_from_json(const Json &j) {
  if (j.is_object())
    return {move_from_json(j)};
  if (!j.is_array())
    fail(ErrorKind::Syntax, "expected a move object or an array of moves");
  std::vector<Move> out;
  for (const auto &m : j)
    out.push_back(move_from_json(m));
  return out;
}

inline Json site_list_to_json(const MoveSiteList &list) {
  auto dump = [](const auto &v) {
    Json a = Json::array();
    for (const auto &s : v)
      a.push_back(move_to_json(Move{s}));
    return a;
  };
  return Json{{"R1Add", dump(list.r1_add)},       {"R1Remove", dump(list.r1_remove)},
              {"R2Add", dump(list.r2_add)},       {"R2Remove", dump(list.r2_remove)},
              {"R3", dump(list.r3)},              {"CrossingFlip", dump(list.flips)}};
}

inline Json diagram_to_json(const Diagram &d) { return pd_to_json(d.pd()); }

} // namespace knotty
