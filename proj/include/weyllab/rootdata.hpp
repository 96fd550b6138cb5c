#pragma once

#include <memory>
#include <string>
#include <vector>

#include "weyllab/rational.hpp"

namespace weyllab {

enum class Family { A, B, C, D, E, F, G };

// Element of the affine root lattice: coefficients on alpha_0..alpha_r.
using RootElement = std::vector<long>;

// Integral weight: lambda(h_0..h_r) together with lambda(d).
struct Weight {
  std::vector<long> h;
  Rational d = 0;

  friend bool operator==(const Weight& a, const Weight& b) { return a.h == b.h && a.d == b.d; }
  friend bool operator<(const Weight& a, const Weight& b) {
    if (a.h != b.h) return a.h < b.h;
    return a.d < b.d;
  }
};

enum class RootKind { Real, Imaginary, NotARoot };

// Untwisted affine root datum.  Cartan convention a_ij = alpha_j(h_i);
// node 0 is the affine node, nodes 1..r follow Bourbaki except G2, where
// alpha_1 is long and alpha_2 short.
class RootDatum {
public:
  static std::shared_ptr<const RootDatum> load(Family family, int rank);
  // Accepts "A1", "A3", "B4", "G2", "E8" and the affine spellings "A1~".
  static std::shared_ptr<const RootDatum> load(const std::string& name);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  int size() const { return rank_ + 1; }
  std::string name() const;

  int cartan(int i, int j) const { return cartan_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<long>& marks() const { return marks_; }
  const std::vector<long>& comarks() const { return comarks_; }
  long coxeter_number() const { return coxeter_; }
  long dual_coxeter_number() const { return dual_coxeter_; }
  // (alpha_i, alpha_i) with long roots of length 2.
  const Rational& simple_norm(int i) const { return norms_[static_cast<std::size_t>(i)]; }

  RootElement simple_root(int i) const;
  RootElement delta() const { return marks_; }
  // Positive finite roots, as affine root elements with zero alpha_0 entry.
  const std::vector<RootElement>& finite_positive_roots() const { return finite_pos_; }
  const RootElement& highest_root() const { return theta_; }

  Rational inner(const RootElement& a, const RootElement& b) const;
  long height(const RootElement& a) const;
  RootKind classify(const RootElement& a) const;
  bool is_positive_root(const RootElement& a) const;
  // Multiple of delta, or 0 when not a multiple.
  long delta_multiple(const RootElement& a) const;

  // Coefficients g_i^vee with h_gamma = sum g_i^vee h_i.
  std::vector<long> coroot_coeffs(const RootElement& gamma) const;
  // <lambda + rho, gamma^vee> for a real root gamma.
  long pairing(const Weight& lambda, const RootElement& gamma) const;
  // lambda(h_gamma) without rho.
  long evaluate_coroot(const Weight& lambda, const RootElement& gamma) const;
  // alpha(h_i) for an element of the root lattice.
  std::vector<long> root_on_coroots(const RootElement& a) const;
  Weight subtract_root(const Weight& lambda, const RootElement& gamma, long n = 1) const;
  Weight add_root(const Weight& lambda, const RootElement& gamma, long n = 1) const {
    return subtract_root(lambda, gamma, -n);
  }
  // Root lattice element beta with lambda - mu = beta, if it exists.
  bool weight_difference(const Weight& lambda, const Weight& mu, RootElement& beta) const;

  Weight rho() const;
  Weight fundamental(int i) const;
  long level(const Weight& lambda) const;
  bool dominant(const Weight& lambda) const;
  Weight plus(const Weight& a, const Weight& b) const;
  Weight scaled(const Weight& a, long k) const;

  // Base roots Phi_1^+ = {alpha, delta - alpha : alpha finite positive}.
  std::vector<RootElement> base_roots() const;
  bool is_base_root(const RootElement& a) const;
  // Positive real roots of height <= max_height, ordered by height.
  std::vector<RootElement> positive_real_roots(long max_height) const;

  std::string format_weight(const Weight& w, bool ascii = false) const;
  std::string format_root(const RootElement& a, bool ascii = false) const;
  Weight parse_weight(const std::string& text) const;
  RootElement parse_root(const std::string& text) const;

private:
  RootDatum() = default;
  void build(Family family, int rank);

  Family family_ = Family::A;
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<long> marks_, comarks_;
  std::vector<Rational> norms_;
  std::vector<RootElement> finite_pos_;
  RootElement theta_;
  long coxeter_ = 0, dual_coxeter_ = 0;
};

using RootDatumPtr = std::shared_ptr<const RootDatum>;

}  // namespace weyllab
