#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weyllab/rational.hpp"

namespace weyllab {

// Polynomial with rational coefficients in at most eight commuting
// variables.  Exponents are packed one byte per variable into a 64-bit key,
// variable 0 in the top byte, so std::map order on keys is lex order with
// x0 > x1 > ... .
class HPoly {
public:
  using Key = std::uint64_t;
  static constexpr int kMaxVars = 8;
  static constexpr int kMaxExponent = 255;

  HPoly() = default;
  HPoly(const Rational& c);  // NOLINT: constants convert implicitly
  HPoly(long c) : HPoly(Rational(c)) {}  // NOLINT

  static HPoly variable(int var, int exp = 1);
  static HPoly monomial(const std::vector<int>& exps, const Rational& c);

  static int exponent(Key key, int var) {
    return static_cast<int>((key >> (8 * (kMaxVars - 1 - var))) & 0xff);
  }
  static Key make_key(const std::vector<int>& exps);

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const std::vector<int>& exps) const;

  int degree(int var) const;
  int total_degree() const;
  // Highest variable index with nonzero exponent in some term, or -1.
  int max_variable() const;

  bool is_integral() const;
  // Lowest p-adic valuation of a coefficient.
  int valuation(long p) const;
  Integer content_gcd() const;

  HPoly& operator+=(const HPoly& o);
  HPoly& operator-=(const HPoly& o);
  HPoly& operator*=(const HPoly& o);
  HPoly& operator*=(const Rational& c);
  HPoly operator-() const;
  friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
  friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }
  friend HPoly operator*(const HPoly& a, const HPoly& b);
  friend HPoly operator*(HPoly a, const Rational& c) { return a *= c; }
  friend HPoly operator*(const Rational& c, HPoly a) { return a *= c; }
  friend bool operator==(const HPoly& a, const HPoly& b) { return a.terms_ == b.terms_; }

  HPoly pow(int n) const;

  // P(x + shift).  Missing trailing entries count as zero.
  HPoly translate(const std::vector<Rational>& shift) const;
  HPoly translate(const std::vector<long>& shift) const;
  // Replace variable var by value.
  HPoly substitute(int var, const HPoly& value) const;
  Rational evaluate(const std::vector<Rational>& values) const;
  // Substitute numbers for a subset of variables; entries that are nullopt stay symbolic.
  HPoly partial_evaluate(const std::vector<std::optional<Rational>>& values) const;

  // Multivariate division by a single divisor with lex leading terms.
  // Remainder is zero exactly when divisor divides *this.
  void divmod(const HPoly& divisor, HPoly& quotient, HPoly& remainder) const;
  std::optional<HPoly> exact_div(const HPoly& divisor) const;

  // View as a univariate polynomial in var: coefficient list indexed by power.
  std::vector<HPoly> coefficients_in(int var) const;

  std::string str(const std::vector<std::string>& names) const;

private:
  void add_term(Key k, const Rational& c);
  std::map<Key, Rational> terms_;
};

// Falling-factorial binomial binom(p, k) for a polynomial argument.
HPoly binomial_poly(const HPoly& p, int k);

// Lagrange/Newton interpolation through (x_i, y_i) with distinct x_i;
// result is a polynomial in variable var.
HPoly interpolate(const std::vector<Rational>& xs, const std::vector<HPoly>& ys, int var);

}  // namespace weyllab
