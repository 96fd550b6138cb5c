#pragma once

#include <optional>
#include <vector>

#include "weyllab/rootdata.hpp"

namespace weyllab {

struct MirrorWitness {
  RootElement gamma;
  int e = 0;
  long M = 0;
  long D = 0;
  long prime = 0;
};

// One step x "up-arrow" y: y - x = (n - m p) beta.
struct LinkageStep {
  RootElement beta;
  long n = 0;
  long m = 0;

  friend bool operator==(const LinkageStep& a, const LinkageStep& b) {
    return a.beta == b.beta && a.n == b.n && a.m == b.m;
  }
  friend bool operator<(const LinkageStep& a, const LinkageStep& b) {
    if (a.beta != b.beta) return a.beta < b.beta;
    if (a.n != b.n) return a.n < b.n;
    return a.m < b.m;
  }
};

struct SearchBounds {
  long max_height = 20;
  long max_n = 50;
  long max_m = 20;
  int max_depth = 4;
};

Weight reflect(const RootDatum& rd, const Weight& lambda, const RootElement& gamma);
// s_gamma on the root lattice: beta - <beta, gamma^vee> gamma.
RootElement reflect_root(const RootDatum& rd, const RootElement& beta, const RootElement& gamma);
Weight dot_reflect(const RootDatum& rd, const Weight& lambda, const RootElement& gamma, long m);

struct NearestLower {
  long M = 0;
  long D = 0;
  Weight mu;
};
NearestLower nearest_lower(const RootDatum& rd, const Weight& lambda, const RootElement& gamma, long p, int e);

std::optional<MirrorWitness> mirrored(const RootDatum& rd, const Weight& mu, const Weight& lambda,
                                      const RootElement& gamma, long p, int e_max);
// Every e <= e_max for which lambda is (gamma, p^e)-mirrored to mu, in increasing e.
std::vector<MirrorWitness> mirror_witnesses(const RootDatum& rd, const Weight& mu, const Weight& lambda,
                                            const RootElement& gamma, long p, int e_max);

std::vector<LinkageStep> linked_char0(const RootDatum& rd, const Weight& x, const Weight& y,
                                      const SearchBounds& bounds = {});
// p == 0 reproduces linked_char0.
std::vector<LinkageStep> linked_modp(const RootDatum& rd, const Weight& x, const Weight& y, long p,
                                     const SearchBounds& bounds = {});

struct LinkageChain {
  std::vector<Weight> weights;  // mu = weights.front(), lambda = weights.back()
  std::vector<LinkageStep> steps;
};
std::optional<LinkageChain> linkage_chain(const RootDatum& rd, const Weight& mu, const Weight& lambda, long p,
                                          const SearchBounds& bounds = {});

}  // namespace weyllab
