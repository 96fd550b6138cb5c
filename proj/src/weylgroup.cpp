#include "weyllab/weylgroup.hpp"

#include <algorithm>
#include <functional>

#include "weyllab/errors.hpp"

namespace weyllab {

namespace {

void require_real(const RootDatum& rd, const RootElement& gamma) {
  if (rd.classify(gamma) != RootKind::Real) throw NotRealRoot("expected a real root: " + rd.format_root(gamma, true));
}

bool nonnegative(const RootElement& a) {
  return std::all_of(a.begin(), a.end(), [](long x) { return x >= 0; });
}

// k > 0 with diff = k * beta, or 0.
long positive_multiple(const RootElement& diff, const RootElement& beta) {
  long k = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] == 0) {
      if (diff[i] != 0) return 0;
      continue;
    }
    if (diff[i] % beta[i] != 0) return 0;
    long q = diff[i] / beta[i];
    if (q <= 0 || (k != 0 && q != k)) return 0;
    k = q;
  }
  return k;
}

// (y + rho, beta) for beta a multiple of delta, up to the positive factor j.
long critical_value(const RootDatum& rd, const Weight& y) { return rd.level(y) + rd.dual_coxeter_number(); }

void steps_for_root(const RootDatum& rd, const Weight& y, const RootElement& beta, long k, long p,
                    const SearchBounds& bounds, std::vector<LinkageStep>& out) {
  if (rd.classify(beta) == RootKind::Real) {
    long n = rd.pairing(y, beta);
    if (n < 1 || n > bounds.max_n) return;
    if (p == 0) {
      if (n == k) out.push_back({beta, n, 0});
      return;
    }
    if ((n - k) % p != 0) return;
    long m = (n - k) / p;
    if (std::labs(m) <= bounds.max_m) out.push_back({beta, n, m});
    return;
  }
  if (critical_value(rd, y) != 0) return;
  if (p == 0) {
    if (k <= bounds.max_n) out.push_back({beta, k, 0});
    return;
  }
  for (long m = -bounds.max_m; m <= bounds.max_m; ++m) {
    long n = k + m * p;
    if (n >= 1 && n <= bounds.max_n) out.push_back({beta, n, m});
  }
}

std::vector<RootElement> candidate_roots(const RootDatum& rd, long max_height) {
  std::vector<RootElement> roots = rd.positive_real_roots(max_height);
  for (long j = 1; j * rd.coxeter_number() <= max_height; ++j) {
    RootElement b = rd.delta();
    for (auto& x : b) x *= j;
    roots.push_back(b);
  }
  return roots;
}

}  // namespace

Weight reflect(const RootDatum& rd, const Weight& lambda, const RootElement& gamma) {
  require_real(rd, gamma);
  return rd.subtract_root(lambda, gamma, rd.evaluate_coroot(lambda, gamma));
}

RootElement reflect_root(const RootDatum& rd, const RootElement& beta, const RootElement& gamma) {
  require_real(rd, gamma);
  auto g = rd.coroot_coeffs(gamma);
  auto v = rd.root_on_coroots(beta);
  long c = 0;
  for (std::size_t i = 0; i < g.size(); ++i) c += g[i] * v[i];
  RootElement out = beta;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * gamma[i];
  return out;
}

Weight dot_reflect(const RootDatum& rd, const Weight& lambda, const RootElement& gamma, long m) {
  require_real(rd, gamma);
  return rd.subtract_root(lambda, gamma, rd.pairing(lambda, gamma) - m);
}

NearestLower nearest_lower(const RootDatum& rd, const Weight& lambda, const RootElement& gamma, long p, int e) {
  long q = ipow(p, e);
  long val = rd.pairing(lambda, gamma);
  NearestLower r;
  r.D = ((val % q) + q) % q;
  r.M = (val - r.D) / q;
  r.mu = rd.subtract_root(lambda, gamma, r.D);
  return r;
}

std::vector<MirrorWitness> mirror_witnesses(const RootDatum& rd, const Weight& mu, const Weight& lambda,
                                            const RootElement& gamma, long p, int e_max) {
  std::vector<MirrorWitness> out;
  if (rd.classify(gamma) != RootKind::Real) return out;
  if (!rd.dominant(lambda) || !rd.dominant(mu)) return out;
  long val = rd.pairing(lambda, gamma);
  long q = 1;
  for (int e = 1; e <= e_max; ++e) {
    if (q > val / p) break;  // p^e > val leaves M = 0
    q *= p;
    NearestLower nl = nearest_lower(rd, lambda, gamma, p, e);
    if (nl.D > 0 && nl.M >= 1 && nl.mu == mu) out.push_back(MirrorWitness{gamma, e, nl.M, nl.D, p});
  }
  return out;
}

std::optional<MirrorWitness> mirrored(const RootDatum& rd, const Weight& mu, const Weight& lambda,
                                      const RootElement& gamma, long p, int e_max) {
  auto all = mirror_witnesses(rd, mu, lambda, gamma, p, e_max);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<LinkageStep> linked_modp(const RootDatum& rd, const Weight& x, const Weight& y, long p,
                                     const SearchBounds& bounds) {
  std::vector<LinkageStep> out;
  RootElement diff;
  if (!rd.weight_difference(y, x, diff)) return out;
  if (!nonnegative(diff) || rd.height(diff) == 0) return out;
  for (const auto& beta : candidate_roots(rd, bounds.max_height)) {
    long k = positive_multiple(diff, beta);
    if (k > 0) steps_for_root(rd, y, beta, k, p, bounds, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LinkageStep> linked_char0(const RootDatum& rd, const Weight& x, const Weight& y,
                                      const SearchBounds& bounds) {
  return linked_modp(rd, x, y, 0, bounds);
}

std::optional<LinkageChain> linkage_chain(const RootDatum& rd, const Weight& mu, const Weight& lambda, long p,
                                          const SearchBounds& bounds) {
  RootElement total;
  if (!rd.weight_difference(lambda, mu, total) || !nonnegative(total)) return std::nullopt;
  if (rd.height(total) == 0) return LinkageChain{{mu}, {}};
  auto roots = candidate_roots(rd, bounds.max_height);

  // Iterative deepening from lambda downwards gives shortest chains first.
  std::vector<Weight> path{lambda};
  std::vector<LinkageStep> steps;
  std::function<bool(const Weight&, const RootElement&, int)> dfs = [&](const Weight& y, const RootElement& rest,
                                                                        int left) -> bool {
    if (rd.height(rest) == 0) return true;
    if (left == 0) return false;
    std::vector<std::pair<LinkageStep, long>> moves;
    for (const auto& beta : roots) {
      // Largest k with k beta <= rest.
      long kmax = -1;
      for (std::size_t i = 0; i < beta.size(); ++i)
        if (beta[i] > 0) {
          long q = rest[i] / beta[i];
          kmax = kmax < 0 ? q : std::min(kmax, q);
        }
      for (long k = 1; k <= kmax; ++k) {
        std::vector<LinkageStep> found;
        steps_for_root(rd, y, beta, k, p, bounds, found);
        for (auto& s : found) moves.emplace_back(s, k);
      }
    }
    std::sort(moves.begin(), moves.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [s, k] : moves) {
      Weight x = rd.subtract_root(y, s.beta, k);
      RootElement r2 = rest;
      for (std::size_t i = 0; i < r2.size(); ++i) r2[i] -= k * s.beta[i];
      path.push_back(x);
      steps.push_back(s);
      if (dfs(x, r2, left - 1)) return true;
      path.pop_back();
      steps.pop_back();
    }
    return false;
  };
  for (int depth = 1; depth <= bounds.max_depth; ++depth) {
    path.assign(1, lambda);
    steps.clear();
    if (dfs(lambda, total, depth)) {
      LinkageChain c;
      c.weights.assign(path.rbegin(), path.rend());
      c.steps.assign(steps.rbegin(), steps.rend());
      return c;
    }
  }
  return std::nullopt;
}

}  // namespace weyllab
