#pragma once

#include "knotty/error.hpp"
#include "knotty/pd_code.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace knotty {

/// A face of the diagram's planar map: the cycle of directed edges met by
/// walking with the face on the left. Each entry is a half-edge id
/// (4 * crossing + slot) naming the edge that leaves that half-edge.
struct Face {
  std::vector<int> boundary;

  std::size_t size() const noexcept { return boundary.size(); }
};

/// A crossing during surgery. Labels are arbitrary distinct ids per arc;
/// `under_parity` says whether slots {0,2} (0) or {1,3} (1) carry the
/// under-strand. Slots are counterclockwise.
struct RawCrossing {
  std::array<int, 4> labels{};
  int under_parity = 0;
};

/// Unnormalized diagram produced by move surgery. The hint names a
/// half-edge through which the strand enters its crossing; it fixes the
/// orientation of the result.
struct RawDiagram {
  std::vector<RawCrossing> crossings;
  int hint_crossing = 0;
  int hint_slot = 0;
};

class Diagram;
Diagram build_diagram(const PdCode &code);
Diagram canonicalize(const RawDiagram &raw);

/// Oriented knot diagram held as a combinatorial map: half-edge h = 4*c + s
/// sits at slot s of crossing c, slots counterclockwise, slot 0 the incoming
/// under-strand. Arcs are labelled 1..2n along the orientation, arc 1 being
/// the one entering crossing 0 at slot 0. Immutable once built.
class Diagram {
public:
  /// The 0-crossing unknot.
  Diagram() { faces_.push_back(Face{}); }

  bool is_unknot() const noexcept { return code_.is_unknot(); }
  int crossing_count() const noexcept { return static_cast<int>(code_.size()); }
  int arc_count() const noexcept { return is_unknot() ? 1 : 2 * crossing_count(); }
  const PdCode &pd() const noexcept { return code_; }

  int label(int h) const {
    return code_.crossings[static_cast<std::size_t>(h / 4)][static_cast<std::size_t>(h % 4)];
  }
  int partner(int h) const { return partner_[static_cast<std::size_t>(h)]; }
  bool is_outgoing(int h) const { return outgoing_[static_cast<std::size_t>(h)] != 0; }
  static bool is_over_slot(int h) noexcept { return (h % 4) % 2 == 1; }
  int sign(int crossing) const { return signs_[static_cast<std::size_t>(crossing)]; }

  /// Half-edge where arc `label` leaves its tail crossing.
  int arc_tail(int label) const { return tails_[static_cast<std::size_t>(label)]; }
  /// Half-edge where arc `label` enters its head crossing.
  int arc_head(int label) const { return partner(arc_tail(label)); }

  /// Successor of h in its face cycle (turn left at the far crossing).
  int face_next(int h) const {
    const int p = partner(h);
    return (p / 4) * 4 + (p % 4 + 3) % 4;
  }

  const std::vector<Face> &faces() const noexcept { return faces_; }
  int face_of(int h) const { return face_of_[static_cast<std::size_t>(h)]; }

  friend bool operator==(const Diagram &a, const Diagram &b) { return a.code_ == b.code_; }

private:
  friend Diagram build_diagram(const PdCode &code);
  friend Diagram canonicalize(const RawDiagram &raw);

  void build_map() {
    const int n = crossing_count();
    const int halves = 4 * n;
    partner_.assign(static_cast<std::size_t>(halves), -1);
    outgoing_.assign(static_cast<std::size_t>(halves), 0);
    tails_.assign(static_cast<std::size_t>(2 * n) + 1, -1);
    const auto ends = detail::arc_ends(code_.crossings);
    for (int label = 1; label <= 2 * n; ++label) {
      const auto &e = ends[static_cast<std::size_t>(label)];
      const int h0 = 4 * e[0].crossing + e[0].slot;
      const int h1 = 4 * e[1].crossing + e[1].slot;
      partner_[static_cast<std::size_t>(h0)] = h1;
      partner_[static_cast<std::size_t>(h1)] = h0;
    }

    int h = 0; // incoming at crossing 0, slot 0
    int visited = 0;
    do {
      const int out = (h / 4) * 4 + (h % 4 + 2) % 4;
      outgoing_[static_cast<std::size_t>(out)] = 1;
      tails_[static_cast<std::size_t>(label(out))] = out;
      h = partner(out);
      ++visited;
    } while (h != 0 && visited <= 2 * n);
    if (visited != 2 * n)
      fail(ErrorKind::Validation, "diagram has more than one component");

    signs_.assign(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < n; ++c) {
      if (outgoing_[static_cast<std::size_t>(4 * c)])
        fail(ErrorKind::Validation, "crossing " + std::to_string(c) +
                                        ": slot 0 must be the incoming under-strand");
      // Over-strand leaving through slot 1 crosses the under-strand left to right.
      signs_[static_cast<std::size_t>(c)] = outgoing_[static_cast<std::size_t>(4 * c + 1)] ? 1 : -1;
    }

    faces_.clear();
    face_of_.assign(static_cast<std::size_t>(halves), -1);
    for (int start = 0; start < halves; ++start) {
      if (face_of_[static_cast<std::size_t>(start)] >= 0)
        continue;
      Face f;
      const int id = static_cast<int>(faces_.size());
      int cur = start;
      do {
        face_of_[static_cast<std::size_t>(cur)] = id;
        f.boundary.push_back(cur);
        cur = face_next(cur);
      } while (cur != start);
      faces_.push_back(std::move(f));
    }
    // V - E + F = 2 on the sphere with V = n, E = 2n.
    if (static_cast<int>(faces_.size()) != n + 2)
      fail(ErrorKind::Validation, "diagram is not planar: " + std::to_string(faces_.size()) +
                                      " faces, expected " + std::to_string(n + 2));
  }

  PdCode code_;
  std::vector<int> partner_;
  std::vector<std::uint8_t> outgoing_;
  std::vector<int> tails_;
  std::vector<int> signs_;
  std::vector<Face> faces_;
  std::vector<int> face_of_;
};

/// Orients the raw diagram from its hint, rotates every crossing so slot 0
/// is the incoming under-strand, relabels arcs 1..2n along the strand and
/// checks planarity.
inline Diagram canonicalize(const RawDiagram &raw) {
  if (raw.crossings.empty())
    return Diagram{};
  const int n = static_cast<int>(raw.crossings.size());

  std::map<int, std::vector<int>> ends; // label -> half-edges
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s)
      ends[raw.crossings[static_cast<std::size_t>(c)].labels[static_cast<std::size_t>(s)]]
          .push_back(4 * c + s);
  std::vector<int> partner(static_cast<std::size_t>(4 * n), -1);
  for (const auto &[label, hs] : ends) {
    if (hs.size() != 2)
      fail(ErrorKind::Validation, "arc " + std::to_string(label) + " has " +
                                      std::to_string(hs.size()) + " ends");
    partner[static_cast<std::size_t>(hs[0])] = hs[1];
    partner[static_cast<std::size_t>(hs[1])] = hs[0];
  }
  if (static_cast<int>(ends.size()) != 2 * n)
    fail(ErrorKind::Validation, "arc count does not match crossing count");

  std::vector<std::uint8_t> incoming(static_cast<std::size_t>(4 * n), 0);
  const int start = 4 * raw.hint_crossing + raw.hint_slot;
  int h = start;
  int visited = 0;
  do {
    incoming[static_cast<std::size_t>(h)] = 1;
    h = partner[static_cast<std::size_t>((h / 4) * 4 + (h % 4 + 2) % 4)];
    ++visited;
  } while (h != start && visited <= 2 * n);
  if (visited != 2 * n)
    fail(ErrorKind::Validation, "diagram has more than one component");

  // rotation[c]: raw slot that becomes canonical slot 0.
  std::vector<int> rotation(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    const int p = raw.crossings[static_cast<std::size_t>(c)].under_parity;
    rotation[static_cast<std::size_t>(c)] = incoming[static_cast<std::size_t>(4 * c + p)] ? p : p + 2;
  }
  auto to_raw = [&](int canonical_h) {
    const int c = canonical_h / 4;
    return 4 * c + (canonical_h % 4 + rotation[static_cast<std::size_t>(c)]) % 4;
  };
  auto to_canonical = [&](int raw_h) {
    const int c = raw_h / 4;
    return 4 * c + (raw_h % 4 - rotation[static_cast<std::size_t>(c)] + 4) % 4;
  };

  Diagram d;
  d.code_.crossings.assign(static_cast<std::size_t>(n), PdCrossing{});
  // Arc k enters canonical half-edge `in`; the next arc leaves two slots on.
  int in = 0;
  for (int k = 1; k <= 2 * n; ++k) {
    const int out = (in / 4) * 4 + (in % 4 + 2) % 4;
    const int next = k == 2 * n ? 1 : k + 1;
    d.code_.crossings[static_cast<std::size_t>(in / 4)][static_cast<std::size_t>(in % 4)] = k;
    d.code_.crossings[static_cast<std::size_t>(out / 4)][static_cast<std::size_t>(out % 4)] = next;
    in = to_canonical(partner[static_cast<std::size_t>(to_raw(out))]);
  }
  d.build_map();
  return d;
}

inline RawDiagram to_raw(const Diagram &d) {
  RawDiagram raw;
  for (const auto &x : d.pd().crossings)
    raw.crossings.push_back(RawCrossing{x, 0});
  return raw;
}

/// Builds the oriented map for a PD code. Arc labels are renumbered along
/// the strand; the code is otherwise unchanged.
inline Diagram build_diagram(const PdCode &code) {
  validate_pd(code);
  if (code.is_unknot())
    return Diagram{};
  RawDiagram raw;
  for (const auto &x : code.crossings)
    raw.crossings.push_back(RawCrossing{x, 0});
  return canonicalize(raw);
}

inline Diagram diagram_from_text(std::string_view text) { return build_diagram(parse_pd(text)); }

inline const std::vector<Face> &faces(const Diagram &d) { return d.faces(); }

inline int writhe(const Diagram &d) {
  int w = 0;
  for (int c = 0; c < d.crossing_count(); ++c)
    w += d.sign(c);
  return w;
}

/// Swaps over and under at every crossing.
inline Diagram mirror(const Diagram &d) {
  RawDiagram raw = to_raw(d);
  for (auto &x : raw.crossings)
    x.under_parity = 1;
  return canonicalize(raw);
}

/// Equality up to relabelling: tries every start point for the labels of `b`.
inline bool same_diagram(const Diagram &a, const Diagram &b) {
  if (a.crossing_count() != b.crossing_count())
    return false;
  if (a.is_unknot())
    return true;
  auto sorted = [](std::vector<PdCrossing> xs) {
    std::sort(xs.begin(), xs.end());
    return xs;
  };
  const auto target = sorted(a.pd().crossings);
  const int n = b.crossing_count();
  for (int c = 0; c < n; ++c) {
    // Re-start b's labelling at the under-strand entering crossing c.
    std::vector<PdCrossing> relabeled = b.pd().crossings;
    const int offset = b.pd().crossings[static_cast<std::size_t>(c)][0] - 1;
    for (auto &x : relabeled)
      for (auto &l : x)
        l = (l - 1 - offset + 2 * n) % (2 * n) + 1;
    if (sorted(std::move(relabeled)) == target)
      return true;
  }
  return false;
}

} // namespace knotty
