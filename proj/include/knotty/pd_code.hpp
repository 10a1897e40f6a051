#pragma once

#include "knotty/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace knotty {

/// One crossing of a planar diagram code: four arc labels listed
/// counterclockwise, starting at the incoming under-strand.
using PdCrossing = std::array<int, 4>;

/// Planar diagram code. An empty crossing list is the 0-crossing unknot.
struct PdCode {
  std::vector<PdCrossing> crossings;

  bool is_unknot() const noexcept { return crossings.empty(); }
  std::size_t size() const noexcept { return crossings.size(); }

  friend bool operator==(const PdCode &, const PdCode &) = default;
};

namespace detail {

struct ArcEnd {
  int crossing = -1;
  int slot = -1;
};

/// For each label 1..2n, its two (crossing, slot) ends. Throws unless every
/// label in 1..2n occurs exactly twice.
inline std::vector<std::array<ArcEnd, 2>> arc_ends(const std::vector<PdCrossing> &crossings) {
  const int arcs = static_cast<int>(crossings.size()) * 2;
  std::vector<std::array<ArcEnd, 2>> ends(static_cast<std::size_t>(arcs) + 1);
  std::vector<int> seen(static_cast<std::size_t>(arcs) + 1, 0);
  for (int c = 0; c < static_cast<int>(crossings.size()); ++c) {
    for (int s = 0; s < 4; ++s) {
      const int label = crossings[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)];
      if (label < 1 || label > arcs)
        fail(ErrorKind::Validation, "arc label " + std::to_string(label) +
                                        " outside the contiguous range 1.." +
                                        std::to_string(arcs));
      auto &count = seen[static_cast<std::size_t>(label)];
      if (count == 2)
        fail(ErrorKind::Validation, "arc " + std::to_string(label) + " appears more than twice");
      ends[static_cast<std::size_t>(label)][static_cast<std::size_t>(count++)] = {c, s};
    }
  }
  for (int label = 1; label <= arcs; ++label)
    if (seen[static_cast<std::size_t>(label)] != 2)
      fail(ErrorKind::Validation, "arc " + std::to_string(label) + " appears " +
                                      std::to_string(seen[static_cast<std::size_t>(label)]) +
                                      " time(s), expected 2");
  return ends;
}

inline ArcEnd other_end(const std::array<ArcEnd, 2> &pair, ArcEnd here) {
  return (pair[0].crossing == here.crossing && pair[0].slot == here.slot) ? pair[1] : pair[0];
}

} // namespace detail

/// Checks the PD invariants: labels 1..2n each used twice, and a single
/// closed strand running through every arc.
inline void validate_pd(const PdCode &code) {
  if (code.is_unknot())
    return;
  const auto ends = detail::arc_ends(code.crossings);
  const int arcs = static_cast<int>(code.size()) * 2;
  // Walk the strand entering crossing 0 through slot 0.
  detail::ArcEnd at{0, 0};
  int visited = 0;
  do {
    const int exit_slot = (at.slot + 2) % 4;
    const int label = code.crossings[static_cast<std::size_t>(at.crossing)]
                                    [static_cast<std::size_t>(exit_slot)];
    at = detail::other_end(ends[static_cast<std::size_t>(label)], {at.crossing, exit_slot});
    ++visited;
    if (visited > arcs)
      break;
  } while (!(at.crossing == 0 && at.slot == 0));
  if (visited != arcs)
    fail(ErrorKind::Validation, "diagram has more than one component (strand through arc " +
                                    std::to_string(code.crossings[0][0]) + " closes after " +
                                    std::to_string(visited) + " of " + std::to_string(arcs) +
                                    " arcs)");
}

/// Parses whitespace-separated `X[a,b,c,d]` terms. The empty string is the unknot.
inline PdCode parse_pd(std::string_view text) {
  PdCode code;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  auto expect = [&](char ch) {
    skip_ws();
    if (i >= text.size() || text[i] != ch)
      fail(ErrorKind::Syntax, std::string("expected '") + ch + "' at offset " + std::to_string(i));
    ++i;
  };
  auto integer = [&] {
    skip_ws();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + i)
      fail(ErrorKind::Syntax, "expected an integer at offset " + std::to_string(i));
    i = static_cast<std::size_t>(ptr - text.data());
    if (value <= 0)
      fail(ErrorKind::Syntax, "arc labels must be positive integers");
    return value;
  };

  skip_ws();
  while (i < text.size()) {
    expect('X');
    expect('[');
    PdCrossing x{};
    for (int s = 0; s < 4; ++s) {
      if (s > 0)
        expect(',');
      x[static_cast<std::size_t>(s)] = integer();
    }
    expect(']');
    code.crossings.push_back(x);
    const std::size_t before = i;
    skip_ws();
    if (i < text.size() && i == before)
      fail(ErrorKind::Syntax, "crossing terms must be separated by whitespace");
  }
  validate_pd(code);
  return code;
}

/// Canonical text form: terms separated by single spaces; "" for the unknot.
inline std::string serialize_pd(const PdCode &code) {
  std::string out;
  for (const auto &x : code.crossings) {
    if (!out.empty())
      out += ' ';
    out += "X[" + std::to_string(x[0]) + ',' + std::to_string(x[1]) + ',' + std::to_string(x[2]) +
           ',' + std::to_string(x[3]) + ']';
  }
  return out;
}

} // namespace knotty
