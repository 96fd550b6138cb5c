#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "weyllab/pbw.hpp"
#include "weyllab/rootdata.hpp"

namespace weyllab {

struct ShapovalovElement {
  UEAElement element;  // canonical order, inside U(b^-)
  RootElement gamma;
  int D = 1;
  std::optional<int> avoided;
  Integer leading_scale = 1;
};

struct PathStep {
  RootElement root;
  int reflection = -1;  // simple reflection taking the previous root to this one
};

// gamma = gamma_0 > gamma_1 > ... > gamma_n = alpha_eta.
std::vector<PathStep> gamma_path(const RootDatum& rd, const RootElement& gamma);

enum class ShapovalovMethod {
  // Structure polynomials C(m) with h_i -> h_i - a_ik (h_k + 1); integral in every h_i.
  Substitute,
  // Sample the one-parameter family chi(h_k) = -q - 1 on the hyperplane and interpolate in q.
  // The result only involves h_k, agrees with Substitute modulo the hyperplane, and may have
  // non-integral coefficients when g_j > 1.
  Interpolate,
};

struct ShapovalovOptions {
  ShapovalovMethod method = ShapovalovMethod::Substitute;
  int first_sample = 1;
  long max_size = 8;  // bound on D * ht(gamma)
};

ShapovalovElement integral_shapovalov(const RootDatum& rd, const RootElement& gamma, int D,
                                      const ShapovalovOptions& options = {});
ShapovalovElement eta_avoiding(const RootDatum& rd, const ShapovalovElement& z, int eta);

// h_gamma + rho(h_gamma) - D.
HPoly hyperplane_poly(const RootDatum& rd, const RootElement& gamma, int D);
// Image of u modulo the ideal generated by h_gamma + rho(h_gamma) - D,
// eliminating the variable var.
UEAElement reduce_on_hyperplane(const RootDatum& rd, const UEAElement& u, const RootElement& gamma, int D, int var);
bool leading_term_ok(const ShapovalovElement& z);

struct SingularSample {
  Weight chi;
  bool annihilated = false;
  bool integral = false;
};
struct SingularReport {
  std::vector<SingularSample> samples;
  bool passed = false;
};
SingularReport verify_singular(const RootDatum& rd, const ShapovalovElement& z, int sample_count);

struct FactorEntry {
  Word u;
  HPoly value;
  bool divisible = false;
  bool scalar_multiple = false;
};
struct FactorReport {
  HPoly predicted;
  std::vector<FactorEntry> entries;
  bool passed = false;
  // When the given representative fails, a representative Z - W (h_gamma + rho(h_gamma) - D)
  // whose every column is a multiple of the predicted product, if one exists.
  std::optional<UEAElement> normal_form;
  // Same search against the weight-bounded exponents.
  HPoly weight_bound_product;
  bool weight_bound_representative = false;
};
// Exponent of the factors attached to beta_i: the path pairing D b_i with
// b_i = <gamma_{i-1}, eps_i^vee> (b = 1 for the final simple root), or the largest j with
// j beta_i <= D gamma.
enum class FactorExponents { Path, WeightBound };
HPoly factor_product(const RootDatum& rd, const RootElement& gamma, int D,
                     FactorExponents exponents = FactorExponents::Path);
// With search_representatives, a failing element is followed by a linear-algebra search for
// another representative modulo the hyperplane ideal (cost grows quickly past height 5).
FactorReport factor_formula_check(const RootDatum& rd, const ShapovalovElement& z, bool search_representatives = false);
std::optional<UEAElement> factor_normal_form(const RootDatum& rd, const ShapovalovElement& z);
std::optional<UEAElement> factor_normal_form(const RootDatum& rd, const ShapovalovElement& z, const HPoly& product);

// P_{b^-}(e_i^(n) Z_eta) = sum_m u_m binom(h_gamma + rho(h_gamma) - D, m);
// returns u_0, u_1, ... with coefficients free of h_eta.
std::vector<UEAElement> bminus_binomial_expansion(const RootDatum& rd, const ShapovalovElement& z_eta, int i, int n);

// Coordinates of an evaluated element of U(n^-) in the divided-power PBW basis.
std::vector<std::pair<Word, Rational>> divided_power_pbw_coordinates(const UEAElement& u);

class ShapovalovCache {
public:
  static constexpr const char* kEngineVersion = "weyllab-pbw-1";
  explicit ShapovalovCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  // Directory from WEYLLAB_CACHE, if set.
  static std::optional<ShapovalovCache> from_environment();

  std::filesystem::path path_for(const RootDatum& rd, const RootElement& gamma, int D, std::optional<int> eta) const;
  void store(const RootDatum& rd, const ShapovalovElement& z) const;
  std::optional<ShapovalovElement> load(const RootDatum& rd, const RootElement& gamma, int D,
                                        std::optional<int> eta) const;

private:
  std::filesystem::path dir_;
};

}  // namespace weyllab
