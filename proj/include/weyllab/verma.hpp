#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weyllab/linalg.hpp"
#include "weyllab/pbw.hpp"
#include "weyllab/rootdata.hpp"

namespace weyllab {

constexpr std::size_t kMaxWeightSpaceDim = 60;

struct WeightSpace {
  Weight base_weight;
  RootElement offset;
  std::vector<Word> basis;  // canonical PBW monomials of weight -offset
  RatMatrix gram;           // C^lambda(F_pi, F_omega)
};

std::vector<Word> weight_space_basis(const RootDatum& rd, const RootElement& beta,
                                     std::size_t max_dim = kMaxWeightSpaceDim);
long kostant_partition(const RootDatum& rd, const RootElement& beta);

// Class of e_i^(n) u v_lambda^+ in M(lambda), as an evaluated element of U(n^-).
UEAElement e_action(const RootDatum& rd, int i, int n, const UEAElement& u, const Weight& lambda);

std::vector<std::vector<HPoly>> symbolic_gram(const RootDatum& rd, const RootElement& beta);
WeightSpace contravariant_gram(const RootDatum& rd, const Weight& lambda, const RootElement& beta);
// PBW coefficient vector of an evaluated element of U(n^-) over space.basis.
RatVector pbw_vector(const WeightSpace& space, const UEAElement& u);
// C^lambda(F_pi, u) for all pi: the image of u v^+ in L(lambda).
RatVector quotient_image(const WeightSpace& space, const UEAElement& u);

struct DeterminantReport {
  RootElement beta;
  HPoly determinant;
  HPoly predicted;
  Rational ratio;  // determinant / predicted when constant
  bool passed = false;
};
HPoly kac_kazhdan_product(const RootDatum& rd, const RootElement& beta);
DeterminantReport determinant_check(const RootDatum& rd, const RootElement& beta);

// Divided-power words in the simple generators f_i^(n) of weight -beta.
std::vector<DividedWord> simple_words(const RootDatum& rd, const RootElement& beta);

struct QuotientLattice {
  WeightSpace space;
  std::vector<DividedWord> words;
  RatMatrix word_images;
  RatMatrix basis;  // rows, in image coordinates
  bool word_basis = false;  // basis rows are the word images themselves
  std::vector<std::string> basis_names;
  std::size_t rank() const { return basis.size(); }
};
QuotientLattice simple_quotient_lattice(const RootDatum& rd, const Weight& lambda, const RootElement& beta);
// Coordinates of an image vector in the lattice basis; nullopt if outside the span.
std::optional<RatVector> lattice_coordinates(const QuotientLattice& lattice, const RatVector& image);

struct HomCheck {
  int i = 0;
  int n = 0;
  bool pass = false;
};

struct HomCertificate {
  Weight lambda;
  Weight mu;
  RootElement gamma;
  long D = 0;
  int e = 0;
  long M = 0;
  long prime = 0;
  int eta = 0;
  int g = 0;
  std::vector<Integer> coordinates;
  std::vector<std::string> basis;
  std::vector<HomCheck> checks;
  bool valid = false;
};

HomCertificate verma_hom_check(const RootDatum& rd, const Weight& lambda, const RootElement& gamma, int D, int eta,
                               long p);
HomCertificate weyl_hom_check(const RootDatum& rd, const Weight& lambda, const RootElement& gamma, int D, int eta,
                              long p);

struct StabilityReport {
  bool hypothesis_ok = false;
  bool passed = false;
  std::vector<std::string> basis;
  // coefficients[k][w] = expansion of word w over the basis at lambda + k varpi_eta
  std::vector<std::vector<RatVector>> coefficients;
  std::string message;
};
StabilityReport basis_stability_check(const RootDatum& rd, const Weight& lambda, const RootElement& beta, int eta,
                                      int k_max);

}  // namespace weyllab
