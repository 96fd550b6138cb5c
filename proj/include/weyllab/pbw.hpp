#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weyllab/hpoly.hpp"
#include "weyllab/rootdata.hpp"

namespace weyllab {

// Loop realization of affine sl2: X (x) t^k for X in {E, F, H}, the central
// element C and the scaling element D.
struct LoopGenerator {
  enum class Kind : int { E = 0, F = 1, H = 2, C = 3, D = 4 };
  Kind kind = Kind::E;
  int k = 0;

  static LoopGenerator E(int k) { return {Kind::E, k}; }
  static LoopGenerator F(int k) { return {Kind::F, k}; }
  static LoopGenerator H(int k) { return {Kind::H, k}; }
  static LoopGenerator central() { return {Kind::C, 0}; }
  static LoopGenerator scaling() { return {Kind::D, 0}; }

  // Root as coefficients on (alpha_0, alpha_1); zero for C, D, H(0).
  std::pair<long, long> root() const;
  bool negative() const;
  bool positive() const;
  bool cartan() const { return !negative() && !positive(); }
  std::string id() const;  // "E:-2", "F:0", "H:-1", "C", "D"
  static LoopGenerator parse(const std::string& id);

  auto operator<=>(const LoopGenerator&) const = default;
};

// Variables of the Cartan polynomial ring.
enum : int { kVarH0 = 0, kVarH1 = 1, kVarD = 2, kNumVars = 3 };
const std::vector<std::string>& cartan_variable_names();

// Total orders on negative generators.  Positive generators always use the
// canonical order.  The F*Last orders move one simple root vector to the end
// and are used for right division by powers of f_0 or f_1.
enum class PbwOrder { Canonical, F0Last, F1Last };
PbwOrder simple_last_order(int k);
std::string order_key(PbwOrder order);

struct Letter {
  int gen = 0;  // packed LoopGenerator
  int exp = 0;
  auto operator<=>(const Letter&) const = default;
};
using Word = std::vector<Letter>;

int pack(const LoopGenerator& g);
LoopGenerator unpack(int code);

struct PbwMonomial {
  Word f;
  Word e;
  auto operator<=>(const PbwMonomial&) const = default;
  long degree() const;
  // Weight as coefficients on (alpha_0, alpha_1).
  std::pair<long, long> weight() const;
};

class UEAElement {
public:
  using Terms = std::map<PbwMonomial, HPoly>;

  explicit UEAElement(PbwOrder order = PbwOrder::Canonical) : order_(order) {}
  static UEAElement scalar(const HPoly& c, PbwOrder order = PbwOrder::Canonical);
  static UEAElement generator(const LoopGenerator& g, PbwOrder order = PbwOrder::Canonical);
  // f_beta for a positive root beta of affine sl2 (multiplicity one).
  static UEAElement lowering(const RootElement& beta, PbwOrder order = PbwOrder::Canonical);
  static UEAElement raising(const RootElement& beta, PbwOrder order = PbwOrder::Canonical);

  PbwOrder order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const PbwMonomial& m, const HPoly& c);
  HPoly coefficient(const PbwMonomial& m) const;

  UEAElement& operator+=(const UEAElement& o);
  UEAElement& operator-=(const UEAElement& o);
  UEAElement& operator*=(const HPoly& c);  // coefficient-wise, c placed in the middle slot
  friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
  friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }
  friend UEAElement operator*(UEAElement a, const Rational& c) { return a *= HPoly(c); }
  friend bool operator==(const UEAElement& a, const UEAElement& b) { return a.terms_ == b.terms_; }

  std::optional<std::pair<long, long>> weight() const;
  bool in_borel_minus() const;
  bool is_integral() const;
  // Printed in root-vector notation, f-part then coefficient then e-part.
  std::string str() const;

private:
  PbwOrder order_;
  Terms terms_;
};

UEAElement bracket(const LoopGenerator& a, const LoopGenerator& b);
UEAElement normal_form(const std::vector<std::pair<LoopGenerator, int>>& word,
                       PbwOrder order = PbwOrder::Canonical);
UEAElement multiply(const UEAElement& u, const UEAElement& v);
UEAElement power(const UEAElement& u, int n);
UEAElement reorder(const UEAElement& u, PbwOrder order);
UEAElement tau(const UEAElement& u);
HPoly project_h(const UEAElement& u);
UEAElement project_bminus(const UEAElement& u);
UEAElement evaluate(const UEAElement& u, const Weight& lambda);
// Substitute values (nullopt keeps the variable) into every coefficient.
UEAElement substitute(const UEAElement& u, const std::vector<std::optional<Rational>>& values);
UEAElement map_coefficients(const UEAElement& u, const std::function<HPoly(const HPoly&)>& fn);

// Positive root of affine sl2 attached to a negative loop generator, and the
// sign s with f_beta = s * generator.
RootElement lowering_root(const LoopGenerator& g);
LoopGenerator lowering_generator(const RootElement& beta);
int lowering_sign(const RootElement& beta);
std::string root_vector_name(const RootElement& beta);

// Coefficient of an f-monomial (root-vector basis, ordinary powers) and the
// divided-power basis f_pi = prod f_beta^(n).
Rational root_vector_coefficient(const PbwMonomial& m, const Rational& loop_coeff);
Rational divided_power_coefficient(const PbwMonomial& m, const Rational& loop_coeff);

// A word in divided powers of root vectors, e.g. f_1 f_0^(2).
struct DividedWord {
  std::vector<std::pair<RootElement, int>> letters;
  std::string str() const;
};
DividedWord parse_divided_word(const std::string& text);
UEAElement divided_word_element(const DividedWord& w, PbwOrder order = PbwOrder::Canonical);
// Divided power monomial f_pi (canonical order) for a PBW f-part.
UEAElement divided_monomial_element(const Word& f);

struct Coordinates {
  std::vector<Rational> values;
  bool integral = false;
};
Coordinates divided_power_coordinates(const UEAElement& u, const std::vector<DividedWord>& basis);

// C_{omega,pi,i}(m): key (pi, i) in root-vector basis with the canonical order.
std::map<std::pair<Word, int>, HPoly> c_polynomials(const Word& omega, int alpha, int m_max);

// Elements of U(n^-) of a given weight: all canonical f-monomials whose
// weight is -beta, beta given on (alpha_0, alpha_1).
std::vector<Word> negative_monomials(long b0, long b1);

// f_alpha^n with ordinary power.
UEAElement simple_power(int i, int n, bool raising, PbwOrder order = PbwOrder::Canonical);

}  // namespace weyllab
