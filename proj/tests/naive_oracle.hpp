#pragma once

// A deliberately slow, self-contained Jones polynomial used as the reference
// for every expected value in the tests. It shares no code with the library:
// its own PD reader, its own orientation walk, its own loop count and its own
// polynomial type (plain long long coefficients are plenty below 16 crossings).

#include <array>
#include <cstdlib>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace naive {

using Quad = std::array<int, 4>;
using Poly = std::map<int, long long>; // exponent -> coefficient

inline std::vector<Quad> read_pd(const std::string &text) {
  static const std::regex term(R"(X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\])");
  std::vector<Quad> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), term); it != std::sregex_iterator(); ++it)
    out.push_back({std::stoi((*it)[1]), std::stoi((*it)[2]), std::stoi((*it)[3]), std::stoi((*it)[4])});
  return out;
}

inline void add(Poly &p, int e, long long c) {
  if ((p[e] += c) == 0)
    p.erase(e);
}

inline Poly mul(const Poly &a, const Poly &b) {
  Poly r;
  for (auto [ea, ca] : a)
    for (auto [eb, cb] : b)
      add(r, ea + eb, ca * cb);
  return r;
}

// Number of closed curves when every crossing is replaced by the given
// pairs of slots; arcs are the edges joining equal labels.
inline int count_loops(const std::vector<Quad> &x, const std::vector<int> &state) {
  const int n = static_cast<int>(x.size());
  // Node per (crossing, slot). Two kinds of links: same label, and smoothing.
  std::vector<int> label_mate(4 * n, -1), smooth_mate(4 * n, -1);
  std::map<int, std::vector<int>> by_label;
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s)
      by_label[x[c][s]].push_back(4 * c + s);
  for (auto &[l, v] : by_label) {
    if (v.size() != 2)
      throw std::runtime_error("label does not occur twice");
    label_mate[v[0]] = v[1];
    label_mate[v[1]] = v[0];
  }
  for (int c = 0; c < n; ++c) {
    // A: (0,1)(2,3)   B: (0,3)(1,2)
    const int p = state[c] == 0 ? 1 : 3;
    const int q = state[c] == 0 ? 3 : 1;
    smooth_mate[4 * c + 0] = 4 * c + p;
    smooth_mate[4 * c + p] = 4 * c + 0;
    smooth_mate[4 * c + 2] = 4 * c + q;
    smooth_mate[4 * c + q] = 4 * c + 2;
  }
  // Every node has one label link and one smoothing link, so each
  // connected component is one loop.
  std::vector<bool> seen(4 * n, false);
  int loops = 0;
  for (int start = 0; start < 4 * n; ++start) {
    if (seen[start])
      continue;
    ++loops;
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : {label_mate[v], smooth_mate[v]})
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return loops;
}

inline Poly bracket(const std::vector<Quad> &x) {
  const int n = static_cast<int>(x.size());
  if (n == 0)
    return {{0, 1}};
  const Poly delta{{2, -1}, {-2, -1}};
  Poly total;
  std::vector<int> state(n);
  for (long s = 0; s < (1L << n); ++s) {
    int a = 0;
    for (int c = 0; c < n; ++c) {
      state[c] = (s >> c) & 1;
      a += state[c] == 0;
    }
    const int loops = count_loops(x, state);
    Poly term{{a - (n - a), 1}};
    for (int i = 1; i < loops; ++i)
      term = mul(term, delta);
    for (auto [e, c] : term)
      add(total, e, c);
  }
  return total;
}

// Walks the single component from slot 0 of the first crossing and marks
// which slots are entered. A crossing is positive when the over strand
// enters at slot 3 and leaves at slot 1.
inline int writhe(const std::vector<Quad> &x) {
  const int n = static_cast<int>(x.size());
  if (n == 0)
    return 0;
  std::vector<int> entered(4 * n, -1);
  int c = 0, s = 0, steps = 0;
  while (entered[4 * c + s] == -1) {
    entered[4 * c + s] = 1;
    const int out = (s + 2) % 4;
    entered[4 * c + out] = 0;
    const int label = x[c][out];
    int nc = -1, ns = -1;
    for (int c2 = 0; c2 < n && nc < 0; ++c2)
      for (int s2 = 0; s2 < 4; ++s2)
        if (x[c2][s2] == label && !(c2 == c && s2 == out)) {
          nc = c2;
          ns = s2;
          break;
        }
    c = nc;
    s = ns;
    if (++steps > 4 * n)
      throw std::runtime_error("walk did not close");
  }
  if (steps != 2 * n)
    throw std::runtime_error("not a single component");
  int w = 0;
  for (int k = 0; k < n; ++k)
    w += entered[4 * k + 3] == 1 ? 1 : -1;
  return w;
}

/// Jones polynomial in t as exponent -> coefficient.
inline Poly jones(const std::string &pd) {
  const auto x = read_pd(pd);
  const int w = writhe(x);
  Poly v;
  for (auto [e, c] : bracket(x)) {
    const int shifted = e - 3 * w;
    if (shifted % 4 != 0)
      throw std::runtime_error("exponent not divisible by 4");
    v[-shifted / 4] = (w % 2 == 0 ? c : -c);
  }
  return v;
}

/// Same textual form as LaurentPoly::to_string, for comparing.
inline std::string to_string(const Poly &p) {
  if (p.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [e, c] : p) {
    long long mag = std::llabs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1)
      os << mag;
    os << 't';
    if (e != 1)
      os << '^' << e;
  }
  return os.str();
}

} // namespace naive
