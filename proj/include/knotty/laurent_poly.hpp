#pragma once

#include "knotty/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <map>
#include <sstream>
#include <string>

namespace knotty {

using BigInt = boost::multiprecision::cpp_int;

/// A = Kauffman bracket variable, T = Jones variable (t = A^-4).
enum class Variable { A, T };

constexpr char variable_symbol(Variable v) noexcept { return v == Variable::A ? 'A' : 't'; }

/// Exact Laurent polynomial in one variable with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored, so the zero polynomial
/// is the empty map and equality is plain map equality.
class LaurentPoly {
public:
  using Terms = std::map<int, BigInt>;

  explicit LaurentPoly(Variable var = Variable::T) : var_(var) {}

  static LaurentPoly zero(Variable var) { return LaurentPoly(var); }
  static LaurentPoly one(Variable var) { return monomial(var, 0, 1); }

  static LaurentPoly monomial(Variable var, int exponent, const BigInt &coef) {
    LaurentPoly p(var);
    p.add_term(exponent, coef);
    return p;
  }

  /// -A^2 - A^-2, the value of one extra loop in the bracket.
  static LaurentPoly loop_value() {
    LaurentPoly d(Variable::A);
    d.add_term(2, -1);
    d.add_term(-2, -1);
    return d;
  }

  Variable variable() const noexcept { return var_; }
  const Terms &terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  BigInt coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  void add_term(int exponent, const BigInt &coef) {
    if (coef == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(exponent, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  LaurentPoly &operator+=(const LaurentPoly &rhs) {
    require_same_variable(rhs);
    for (const auto &[e, c] : rhs.terms_)
      add_term(e, c);
    return *this;
  }

  LaurentPoly &operator-=(const LaurentPoly &rhs) {
    require_same_variable(rhs);
    for (const auto &[e, c] : rhs.terms_)
      add_term(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly &rhs) { return lhs += rhs; }
  friend LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly &rhs) { return lhs -= rhs; }

  friend LaurentPoly operator*(const LaurentPoly &lhs, const LaurentPoly &rhs) {
    lhs.require_same_variable(rhs);
    LaurentPoly out(lhs.var_);
    for (const auto &[e1, c1] : lhs.terms_)
      for (const auto &[e2, c2] : rhs.terms_)
        out.add_term(e1 + e2, c1 * c2);
    return out;
  }

  LaurentPoly scaled(const BigInt &factor) const {
    LaurentPoly out(var_);
    for (const auto &[e, c] : terms_)
      out.add_term(e, c * factor);
    return out;
  }

  /// Multiply by coef * var^shift.
  LaurentPoly shifted(int shift, const BigInt &coef = 1) const {
    LaurentPoly out(var_);
    for (const auto &[e, c] : terms_)
      out.add_term(e + shift, c * coef);
    return out;
  }

  /// Substitute var = to^(num/den): exponent e becomes e*num/den in `to`.
  /// Every e*num must be divisible by den.
  LaurentPoly substitute_monomial(Variable to, int num, int den = 1) const {
    LaurentPoly out(to);
    for (const auto &[e, c] : terms_) {
      const long long scaled = static_cast<long long>(e) * num;
      if (den == 0 || scaled % den != 0)
        fail(ErrorKind::NonKnotExponent, "exponent " + std::to_string(e) + " of " +
                                             variable_symbol(var_) + " is not divisible by " +
                                             std::to_string(den));
      out.add_term(static_cast<int>(scaled / den), c);
    }
    return out;
  }

  friend bool operator==(const LaurentPoly &a, const LaurentPoly &b) {
    return a.var_ == b.var_ && a.terms_ == b.terms_;
  }

  /// Human-readable form, ascending exponents: "-t^-4 + t^-3 + t^-1".
  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : terms_) {
      BigInt mag = c < 0 ? BigInt(-c) : c;
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
      os << variable_symbol(var_);
      if (e != 1)
        os << '^' << e;
    }
    return os.str();
  }

private:
  void require_same_variable(const LaurentPoly &rhs) const {
    if (var_ != rhs.var_)
      fail(ErrorKind::VariableMismatch, std::string("cannot combine polynomials in ") +
                                            variable_symbol(var_) + " and " +
                                            variable_symbol(rhs.var_));
  }

  Variable var_;
  Terms terms_;
};

/// L1 distance between coefficient vectors; zero iff the polynomials are equal.
inline BigInt jp_distance(const LaurentPoly &p, const LaurentPoly &q) {
  if (p.variable() != q.variable())
    fail(ErrorKind::VariableMismatch, "jp_distance needs polynomials in the same variable");
  const LaurentPoly diff = p - q;
  BigInt total = 0;
  for (const auto &[e, c] : diff.terms())
    total += c < 0 ? BigInt(-c) : c;
  return total;
}

} // namespace knotty
