#pragma once

#include "knotty/diagram.hpp"
#include "knotty/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

namespace knotty {

inline constexpr int kDefaultCrossingCap = 24;

enum class Side { Left, Right };

/// Adds a kink on `arc`, bulging into the face on the given side of the
/// arc's orientation; `chirality` is the sign of the new crossing.
struct R1Add {
  int arc = 1;
  Side side = Side::Left;
  int chirality = 1;
  friend bool operator==(const R1Add &, const R1Add &) = default;
};

struct R1Remove {
  int crossing = 0;
  friend bool operator==(const R1Remove &, const R1Remove &) = default;
};

/// Pushes a finger of arc1 across arc2 through their common face, creating
/// a bigon. `over` puts arc1 on top.
struct R2Add {
  int arc1 = 0;
  int arc2 = 0;
  int face = 0;
  bool over = true;
  friend bool operator==(const R2Add &, const R2Add &) = default;
};

struct R2Remove {
  int face = 0;
  friend bool operator==(const R2Remove &, const R2Remove &) = default;
};

/// Slides a strand across the opposite crossing of a triangular face.
/// `edge` is the arc of the triangle that is over (or under) at both ends.
struct R3 {
  int face = 0;
  int edge = 0;
  friend bool operator==(const R3 &, const R3 &) = default;
};

struct CrossingFlip {
  int crossing = 0;
  friend bool operator==(const CrossingFlip &, const CrossingFlip &) = default;
};

using Move = std::variant<R1Add, R1Remove, R2Add, R2Remove, R3, CrossingFlip>;

enum class MoveKind { R1Add, R1Remove, R2Add, R2Remove, R3, CrossingFlip };

inline MoveKind kind_of(const Move &m) noexcept { return static_cast<MoveKind>(m.index()); }

inline const char *kind_name(MoveKind k) noexcept {
  switch (k) {
  case MoveKind::R1Add: return "R1Add";
  case MoveKind::R1Remove: return "R1Remove";
  case MoveKind::R2Add: return "R2Add";
  case MoveKind::R2Remove: return "R2Remove";
  case MoveKind::R3: return "R3";
  case MoveKind::CrossingFlip: return "CrossingFlip";
  }
  return "?";
}

inline bool is_reidemeister(const Move &m) noexcept {
  return kind_of(m) != MoveKind::CrossingFlip;
}

struct MoveSiteList {
  std::vector<R1Add> r1_add;
  std::vector<R1Remove> r1_remove;
  std::vector<R2Add> r2_add;
  std::vector<R2Remove> r2_remove;
  std::vector<R3> r3;
  std::vector<CrossingFlip> flips;

  std::size_t total() const noexcept {
    return r1_add.size() + r1_remove.size() + r2_add.size() + r2_remove.size() + r3.size() +
           flips.size();
  }
};

namespace detail {

[[noreturn]] inline void inapplicable(const std::string &why) {
  fail(ErrorKind::InapplicableMove, why);
}

inline int max_label(const Diagram &d) { return d.arc_count(); }

inline bool valid_face(const Diagram &d, int face) {
  return face >= 0 && face < static_cast<int>(d.faces().size()) && !d.is_unknot();
}

/// First half-edge on the face boundary carrying `label`, or -1.
inline int boundary_edge(const Diagram &d, int face, int label) {
  for (int h : d.faces()[static_cast<std::size_t>(face)].boundary)
    if (d.label(h) == label)
      return h;
  return -1;
}

inline int kink_label(const Diagram &d, int c) {
  for (int s = 0; s < 4; ++s) {
    const int h = 4 * c + s;
    const int p = d.partner(h);
    if (p / 4 == c && (p % 4 == (s + 1) % 4 || p % 4 == (s + 3) % 4))
      return d.label(h);
  }
  return 0;
}

inline bool is_r2_bigon(const Diagram &d, int face) {
  if (!valid_face(d, face))
    return false;
  const auto &b = d.faces()[static_cast<std::size_t>(face)].boundary;
  if (b.size() != 2)
    return false;
  const int h1 = b[0], h2 = b[1];
  if (h1 / 4 == h2 / 4 || d.label(h1) == d.label(h2))
    return false;
  return Diagram::is_over_slot(h1) == Diagram::is_over_slot(d.partner(h1));
}

inline bool r3_triangle(const Diagram &d, int face) {
  if (!valid_face(d, face))
    return false;
  const auto &b = d.faces()[static_cast<std::size_t>(face)].boundary;
  if (b.size() != 3)
    return false;
  const int c0 = b[0] / 4, c1 = b[1] / 4, c2 = b[2] / 4;
  if (c0 == c1 || c1 == c2 || c0 == c2)
    return false;
  const int l0 = d.label(b[0]), l1 = d.label(b[1]), l2 = d.label(b[2]);
  if (l0 == l1 || l1 == l2 || l0 == l2)
    return false;
  return std::any_of(b.begin(), b.end(), [&](int h) {
    return Diagram::is_over_slot(h) == Diagram::is_over_slot(d.partner(h));
  });
}

inline int first_old_crossing(int n, const std::vector<bool> &removed) {
  for (int c = 0; c < n; ++c)
    if (!removed[static_cast<std::size_t>(c)])
      return c;
  return -1;
}

/// Drops removed crossings and merges arc labels that became one arc.
inline Diagram rebuild_after_removal(const Diagram &d, const std::vector<bool> &removed,
                                     const std::vector<std::pair<int, int>> &merges) {
  const int n = d.crossing_count();
  std::vector<int> parent(static_cast<std::size_t>(d.arc_count()) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (auto [a, b] : merges)
    parent[static_cast<std::size_t>(find(a))] = find(b);

  const int keep = first_old_crossing(n, removed);
  if (keep < 0)
    return Diagram{};
  RawDiagram raw;
  for (int c = 0; c < n; ++c) {
    if (removed[static_cast<std::size_t>(c)])
      continue;
    RawCrossing x{d.pd().crossings[static_cast<std::size_t>(c)], 0};
    for (auto &l : x.labels)
      l = find(l);
    raw.crossings.push_back(x);
  }
  raw.hint_crossing = 0;
  raw.hint_slot = 0;
  return canonicalize(raw);
}

inline void check_cap(const Diagram &d, int added, int cap) {
  if (d.crossing_count() + added > cap)
    fail(ErrorKind::CrossingCapExceeded, "move would give " +
                                             std::to_string(d.crossing_count() + added) +
                                             " crossings, cap is " + std::to_string(cap));
}

inline Diagram apply(const Diagram &d, const R1Add &m, int cap) {
  if (m.chirality != 1 && m.chirality != -1)
    inapplicable("R1Add chirality must be +1 or -1");
  if (m.arc < 1 || m.arc > d.arc_count())
    inapplicable("R1Add: no arc " + std::to_string(m.arc));
  check_cap(d, 1, cap);

  // Kink on the left is entered under-first when positive; on the right,
  // over-first when positive.
  const bool under_first = (m.side == Side::Left) == (m.chirality == 1);
  auto kink = [&](int in, int out, int loop) {
    if (under_first)
      return m.chirality == 1 ? RawCrossing{{in, out, loop, loop}, 0}
                              : RawCrossing{{in, loop, loop, out}, 0};
    return m.chirality == 1 ? RawCrossing{{loop, loop, out, in}, 0}
                            : RawCrossing{{loop, in, out, loop}, 0};
  };

  if (d.is_unknot()) {
    RawDiagram raw;
    raw.crossings.push_back(kink(1, 1, 2));
    return canonicalize(raw);
  }

  RawDiagram raw = to_raw(d);
  const int head = d.arc_head(m.arc);
  const int x_out = max_label(d) + 1;
  const int loop = max_label(d) + 2;
  raw.crossings[static_cast<std::size_t>(head / 4)].labels[static_cast<std::size_t>(head % 4)] = x_out;
  raw.crossings.push_back(kink(m.arc, x_out, loop));
  return canonicalize(raw);
}

inline Diagram apply(const Diagram &d, const R1Remove &m) {
  if (m.crossing < 0 || m.crossing >= d.crossing_count())
    inapplicable("R1Remove: no crossing " + std::to_string(m.crossing));
  const int loop = kink_label(d, m.crossing);
  if (loop == 0)
    inapplicable("R1Remove: crossing " + std::to_string(m.crossing) + " is not a kink");
  if (d.crossing_count() == 1)
    return Diagram{};
  std::vector<int> others;
  for (int l : d.pd().crossings[static_cast<std::size_t>(m.crossing)])
    if (l != loop)
      others.push_back(l);
  std::vector<bool> removed(static_cast<std::size_t>(d.crossing_count()), false);
  removed[static_cast<std::size_t>(m.crossing)] = true;
  return rebuild_after_removal(d, removed, {{others[0], others[1]}});
}

inline Diagram apply(const Diagram &d, const R2Add &m, int cap) {
  if (d.is_unknot())
    inapplicable("R2Add needs two distinct arcs");
  if (m.arc1 == m.arc2)
    inapplicable("R2Add: arcs must be distinct");
  if (!valid_face(d, m.face))
    inapplicable("R2Add: no face " + std::to_string(m.face));
  const int hu = boundary_edge(d, m.face, m.arc1);
  const int hv = boundary_edge(d, m.face, m.arc2);
  if (hu < 0 || hv < 0)
    inapplicable("R2Add: arcs " + std::to_string(m.arc1) + " and " + std::to_string(m.arc2) +
                 " do not both bound face " + std::to_string(m.face));
  check_cap(d, 2, cap);

  // Face walk runs u then v counterclockwise around the face. The finger of u
  // meets v first at the crossing nearer u's start (left), then at the right.
  RawDiagram raw = to_raw(d);
  int fresh = max_label(d);
  const int u_a = m.arc1, u_m = ++fresh, u_b = ++fresh;
  const int v_a = m.arc2, v_m = ++fresh, v_b = ++fresh;
  auto set_label = [&](int h, int l) {
    raw.crossings[static_cast<std::size_t>(h / 4)].labels[static_cast<std::size_t>(h % 4)] = l;
  };
  set_label(d.partner(hu), u_b);
  set_label(d.partner(hv), v_b);
  const int parity = m.over ? 0 : 1;
  raw.crossings.push_back(RawCrossing{{v_m, u_m, v_b, u_a}, parity});
  raw.crossings.push_back(RawCrossing{{v_a, u_m, v_m, u_b}, parity});
  return canonicalize(raw);
}

inline Diagram apply(const Diagram &d, const R2Remove &m) {
  if (!is_r2_bigon(d, m.face))
    inapplicable("R2Remove: face " + std::to_string(m.face) + " is not a removable bigon");
  const auto &b = d.faces()[static_cast<std::size_t>(m.face)].boundary;
  const int h1 = b[0], h2 = b[1];
  auto across = [&](int h) {
    return d.label((h / 4) * 4 + (h % 4 + 2) % 4);
  };
  const int alpha = across(h1), beta = across(d.partner(h1));
  const int gamma = across(h2), delta = across(d.partner(h2));
  std::vector<bool> removed(static_cast<std::size_t>(d.crossing_count()), false);
  removed[static_cast<std::size_t>(h1 / 4)] = true;
  removed[static_cast<std::size_t>(h2 / 4)] = true;
  return rebuild_after_removal(d, removed, {{alpha, beta}, {gamma, delta}});
}

inline Diagram apply(const Diagram &d, const R3 &m) {
  if (!r3_triangle(d, m.face))
    inapplicable("R3: face " + std::to_string(m.face) + " is not a slidable triangle");
  const auto &b = d.faces()[static_cast<std::size_t>(m.face)].boundary;
  const auto edge = std::find_if(b.begin(), b.end(), [&](int h) { return d.label(h) == m.edge; });
  if (edge == b.end() || Diagram::is_over_slot(*edge) != Diagram::is_over_slot(d.partner(*edge)))
    inapplicable("R3: arc " + std::to_string(m.edge) +
                 " is not over (or under) at both ends of the triangle");

  // Every strand through the triangle reverses the order of its two
  // crossings: inner slots take the far outer arcs, outer slots are joined.
  RawDiagram raw = to_raw(d);
  const auto &pd = d.pd().crossings;
  for (int h : b) {
    const int x = h / 4, s = h % 4;
    const int p = d.partner(h);
    const int y = p / 4, t = p % 4;
    const int inner = d.label(h);
    auto &rx = raw.crossings[static_cast<std::size_t>(x)].labels;
    auto &ry = raw.crossings[static_cast<std::size_t>(y)].labels;
    rx[static_cast<std::size_t>(s)] = pd[static_cast<std::size_t>(y)][static_cast<std::size_t>((t + 2) % 4)];
    ry[static_cast<std::size_t>(t)] = pd[static_cast<std::size_t>(x)][static_cast<std::size_t>((s + 2) % 4)];
    rx[static_cast<std::size_t>((s + 2) % 4)] = inner;
    ry[static_cast<std::size_t>((t + 2) % 4)] = inner;
  }
  return canonicalize(raw);
}

inline Diagram apply(const Diagram &d, const CrossingFlip &m) {
  if (m.crossing < 0 || m.crossing >= d.crossing_count())
    inapplicable("CrossingFlip: no crossing " + std::to_string(m.crossing));
  RawDiagram raw = to_raw(d);
  raw.crossings[static_cast<std::size_t>(m.crossing)].under_parity = 1;
  return canonicalize(raw);
}

} // namespace detail

/// Applies one move. Moves are checked against their applicability
/// predicate, so they need not come from enumerate_moves.
inline Diagram apply_move(const Diagram &d, const Move &m, int crossing_cap = kDefaultCrossingCap) {
  return std::visit(
      [&](const auto &site) -> Diagram {
        using T = std::decay_t<decltype(site)>;
        if constexpr (std::is_same_v<T, R1Add> || std::is_same_v<T, R2Add>)
          return detail::apply(d, site, crossing_cap);
        else
          return detail::apply(d, site);
      },
      m);
}

inline MoveSiteList enumerate_moves(const Diagram &d) {
  MoveSiteList list;
  if (d.is_unknot()) {
    list.r1_add.push_back({1, Side::Left, 1});
    list.r1_add.push_back({1, Side::Left, -1});
    return list;
  }
  const int n = d.crossing_count();
  for (int arc = 1; arc <= d.arc_count(); ++arc)
    for (Side side : {Side::Left, Side::Right})
      for (int chirality : {1, -1})
        list.r1_add.push_back({arc, side, chirality});
  for (int c = 0; c < n; ++c) {
    if (detail::kink_label(d, c) != 0)
      list.r1_remove.push_back({c});
    list.flips.push_back({c});
  }
  const int face_count = static_cast<int>(d.faces().size());
  for (int f = 0; f < face_count; ++f) {
    std::vector<int> arcs;
    for (int h : d.faces()[static_cast<std::size_t>(f)].boundary)
      if (std::find(arcs.begin(), arcs.end(), d.label(h)) == arcs.end())
        arcs.push_back(d.label(h));
    for (int a : arcs)
      for (int b : arcs)
        if (a != b)
          for (bool over : {true, false})
            list.r2_add.push_back({a, b, f, over});
    if (detail::is_r2_bigon(d, f))
      list.r2_remove.push_back({f});
    if (detail::r3_triangle(d, f)) {
      for (int h : d.faces()[static_cast<std::size_t>(f)].boundary) {
        if (Diagram::is_over_slot(h) == Diagram::is_over_slot(d.partner(h))) {
          list.r3.push_back({f, d.label(h)});
          break;
        }
      }
    }
  }
  return list;
}

/// Removes kinks and removable bigons until none is left. Applied moves are
/// appended to `log` when given.
inline Diagram simplify(Diagram d, std::vector<Move> *log = nullptr) {
  for (;;) {
    const auto sites = enumerate_moves(d);
    Move next;
    if (!sites.r1_remove.empty())
      next = sites.r1_remove.front();
    else if (!sites.r2_remove.empty())
      next = sites.r2_remove.front();
    else
      return d;
    d = apply_move(d, next);
    if (log)
      log->push_back(next);
  }
}

} // namespace knotty
