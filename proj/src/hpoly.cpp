#include "weyllab/hpoly.hpp"

#include <algorithm>
#include <sstream>

#include "weyllab/errors.hpp"

namespace weyllab {

namespace {

constexpr int kShift(int var) { return 8 * (HPoly::kMaxVars - 1 - var); }

bool key_divides(HPoly::Key a, HPoly::Key b) {
  for (int v = 0; v < HPoly::kMaxVars; ++v)
    if (HPoly::exponent(a, v) > HPoly::exponent(b, v)) return false;
  return true;
}

HPoly::Key key_add(HPoly::Key a, HPoly::Key b) {
  for (int v = 0; v < HPoly::kMaxVars; ++v)
    if (HPoly::exponent(a, v) + HPoly::exponent(b, v) > HPoly::kMaxExponent)
      throw BudgetExceeded("polynomial exponent overflow");
  return a + b;
}

}  // namespace

HPoly::HPoly(const Rational& c) {
  if (c != 0) terms_.emplace(0, c);
}

HPoly HPoly::variable(int var, int exp) {
  if (var < 0 || var >= kMaxVars) throw InternalDataError("variable index out of range");
  HPoly p;
  p.terms_.emplace(static_cast<Key>(exp) << kShift(var), Rational(1));
  return p;
}

HPoly::Key HPoly::make_key(const std::vector<int>& exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars))
    throw InternalDataError("too many variables");
  Key k = 0;
  for (std::size_t v = 0; v < exps.size(); ++v) {
    if (exps[v] < 0 || exps[v] > kMaxExponent) throw BudgetExceeded("exponent out of range");
    k |= static_cast<Key>(exps[v]) << kShift(static_cast<int>(v));
  }
  return k;
}

HPoly HPoly::monomial(const std::vector<int>& exps, const Rational& c) {
  HPoly p;
  if (c != 0) p.terms_.emplace(make_key(exps), c);
  return p;
}

bool HPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Rational HPoly::constant_term() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational HPoly::coefficient(const std::vector<int>& exps) const {
  auto it = terms_.find(make_key(exps));
  return it == terms_.end() ? Rational(0) : it->second;
}

int HPoly::degree(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [k, c] : terms_) d = std::max(d, exponent(k, var));
  return d;
}

int HPoly::total_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [k, c] : terms_) {
    int s = 0;
    for (int v = 0; v < kMaxVars; ++v) s += exponent(k, v);
    d = std::max(d, s);
  }
  return d;
}

int HPoly::max_variable() const {
  int m = -1;
  for (const auto& [k, c] : terms_)
    for (int v = 0; v < kMaxVars; ++v)
      if (exponent(k, v) > 0) m = std::max(m, v);
  return m;
}

bool HPoly::is_integral() const {
  for (const auto& [k, c] : terms_)
    if (!weyllab::is_integer(c)) return false;
  return true;
}

int HPoly::valuation(long p) const {
  int v = kInfiniteValuation;
  for (const auto& [k, c] : terms_) v = std::min(v, weyllab::valuation(c, p));
  return v;
}

Integer HPoly::content_gcd() const {
  Integer g = 0;
  for (const auto& [k, c] : terms_) {
    if (!weyllab::is_integer(c)) throw InternalDataError("content of non-integral polynomial");
    Integer n = c.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  return g;
}

void HPoly::add_term(Key k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HPoly& HPoly::operator+=(const HPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

HPoly& HPoly::operator-=(const HPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

HPoly operator*(const HPoly& a, const HPoly& b) {
  HPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) r.add_term(key_add(ka, kb), ca * cb);
  return r;
}

HPoly& HPoly::operator*=(const HPoly& o) {
  *this = *this * o;
  return *this;
}

HPoly& HPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

HPoly HPoly::operator-() const {
  HPoly r = *this;
  for (auto& [k, v] : r.terms_) v = -v;
  return r;
}

HPoly HPoly::pow(int n) const {
  HPoly r(1);
  HPoly b = *this;
  while (n > 0) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

HPoly HPoly::translate(const std::vector<Rational>& shift) const {
  bool trivial = true;
  for (const auto& s : shift)
    if (s != 0) trivial = false;
  if (trivial || terms_.empty()) return *this;
  HPoly result;
  // Powers of (x_v + s_v) are reused across terms.
  std::vector<std::vector<HPoly>> powers(shift.size());
  auto power = [&](int v, int e) -> const HPoly& {
    auto& tab = powers[static_cast<std::size_t>(v)];
    if (tab.empty()) tab.push_back(HPoly(1));
    while (static_cast<int>(tab.size()) <= e)
      tab.push_back(tab.back() * (variable(v) + HPoly(shift[static_cast<std::size_t>(v)])));
    return tab[static_cast<std::size_t>(e)];
  };
  for (const auto& [k, c] : terms_) {
    HPoly term(c);
    Key rest = k;
    for (std::size_t v = 0; v < shift.size(); ++v) {
      int e = exponent(k, static_cast<int>(v));
      if (e == 0 || shift[v] == 0) continue;
      rest -= static_cast<Key>(e) << kShift(static_cast<int>(v));
      term *= power(static_cast<int>(v), e);
    }
    HPoly mono;
    mono.terms_.emplace(rest, Rational(1));
    result += term * mono;
  }
  return result;
}

HPoly HPoly::translate(const std::vector<long>& shift) const {
  std::vector<Rational> s(shift.begin(), shift.end());
  return translate(s);
}

HPoly HPoly::substitute(int var, const HPoly& value) const {
  HPoly result;
  std::vector<HPoly> powers{HPoly(1)};
  for (const auto& [k, c] : terms_) {
    int e = exponent(k, var);
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
    HPoly mono;
    mono.terms_.emplace(k - (static_cast<Key>(e) << kShift(var)), c);
    result += mono * powers[static_cast<std::size_t>(e)];
  }
  return result;
}

Rational HPoly::evaluate(const std::vector<Rational>& values) const {
  Rational total = 0;
  for (const auto& [k, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = exponent(k, v);
      if (e == 0) continue;
      if (static_cast<std::size_t>(v) >= values.size())
        throw InternalDataError("evaluate: missing variable value");
      Rational x = values[static_cast<std::size_t>(v)];
      for (int i = 0; i < e; ++i) t *= x;
    }
    total += t;
  }
  return total;
}

HPoly HPoly::partial_evaluate(const std::vector<std::optional<Rational>>& values) const {
  HPoly result;
  for (const auto& [k, c] : terms_) {
    Rational t = c;
    Key rest = k;
    for (std::size_t v = 0; v < values.size(); ++v) {
      if (!values[v]) continue;
      int e = exponent(k, static_cast<int>(v));
      if (e == 0) continue;
      rest -= static_cast<Key>(e) << kShift(static_cast<int>(v));
      for (int i = 0; i < e; ++i) t *= *values[v];
    }
    result.add_term(rest, t);
  }
  return result;
}

void HPoly::divmod(const HPoly& divisor, HPoly& quotient, HPoly& remainder) const {
  if (divisor.is_zero()) throw InternalDataError("division by zero polynomial");
  quotient = HPoly();
  remainder = HPoly();
  HPoly p = *this;
  auto lead = std::prev(divisor.terms_.end());
  while (!p.is_zero()) {
    auto top = std::prev(p.terms_.end());
    if (key_divides(lead->first, top->first)) {
      HPoly t;
      t.terms_.emplace(top->first - lead->first, top->second / lead->second);
      quotient += t;
      p -= t * divisor;
    } else {
      remainder.add_term(top->first, top->second);
      p.terms_.erase(top);
    }
  }
}

std::optional<HPoly> HPoly::exact_div(const HPoly& divisor) const {
  HPoly q, r;
  divmod(divisor, q, r);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

std::vector<HPoly> HPoly::coefficients_in(int var) const {
  std::vector<HPoly> out(static_cast<std::size_t>(std::max(0, degree(var) + 1)));
  for (const auto& [k, c] : terms_) {
    int e = exponent(k, var);
    out[static_cast<std::size_t>(e)].add_term(k - (static_cast<Key>(e) << kShift(var)), c);
  }
  return out;
}

std::string HPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      out << (neg ? "-" : "");
    else
      out << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = exponent(it->first, v);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += static_cast<std::size_t>(v) < names.size() ? names[static_cast<std::size_t>(v)]
                                                          : "x" + std::to_string(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      out << c.get_str();
    else if (c == 1)
      out << mono;
    else
      out << c.get_str() << "*" << mono;
  }
  return out.str();
}

HPoly binomial_poly(const HPoly& p, int k) {
  HPoly r(1);
  for (int i = 0; i < k; ++i) r *= p - HPoly(i);
  return r * Rational(Integer(1), factorial(k));
}

HPoly interpolate(const std::vector<Rational>& xs, const std::vector<HPoly>& ys, int var) {
  if (xs.size() != ys.size() || xs.empty()) throw InternalDataError("interpolate: bad sample set");
  std::size_t n = xs.size();
  std::vector<HPoly> dd = ys;
  // Newton divided differences in place.
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      Rational den = xs[i] - xs[i - j];
      if (den == 0) throw InternalDataError("interpolate: repeated abscissa");
      dd[i] = (dd[i] - dd[i - 1]) * Rational(1 / den);
      if (i == j) break;
    }
  HPoly x = HPoly::variable(var);
  HPoly result = dd[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) result = result * (x - HPoly(xs[i])) + dd[i];
  return result;
}

}  // namespace weyllab
