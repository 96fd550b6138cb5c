#include "weyllab/verma.hpp"

#include <functional>
#include <future>
#include <map>
#include <mutex>

#include "weyllab/errors.hpp"
#include "weyllab/shapovalov.hpp"
#include "weyllab/weylgroup.hpp"

namespace weyllab {

namespace {

void require_affine_sl2(const RootDatum& rd) {
  if (rd.family() != Family::A || rd.rank() != 1)
    throw UnsupportedType("Verma module computations are implemented for A1 tilde only, got " + rd.name());
}

bool nonnegative(const RootElement& b) {
  for (long c : b)
    if (c < 0) return false;
  return true;
}

UEAElement monomial_element(const Word& w) {
  UEAElement u(PbwOrder::Canonical);
  u.add(PbwMonomial{w, {}}, HPoly(1));
  return u;
}

std::mutex gram_mutex;
std::map<RootElement, std::vector<std::vector<HPoly>>>& gram_cache() {
  static std::map<RootElement, std::vector<std::vector<HPoly>>> c;
  return c;
}

std::vector<Rational> h_values(const Weight& lambda) {
  std::vector<Rational> v;
  for (long x : lambda.h) v.emplace_back(x);
  v.push_back(lambda.d);
  return v;
}

int min_valuation(const RatVector& v, long p) {
  int f = kInfiniteValuation;
  for (const auto& c : v) f = std::min(f, valuation(c, p));
  return f;
}

bool divisible_by_p(const RatVector& v, long p) {
  for (const auto& c : v)
    if (c != 0 && valuation(c, p) < 1) return false;
  return true;
}

std::vector<Integer> to_integers(const RatVector& v) {
  std::vector<Integer> out;
  for (const auto& c : v) {
    if (!is_integer(c)) throw InternalDataError("expected integral coordinates, got " + c.get_str());
    out.push_back(c.get_num());
  }
  return out;
}

std::string divided_monomial_name(const Word& w) {
  DividedWord d;
  for (const auto& l : w) d.letters.emplace_back(lowering_root(unpack(l.gen)), l.exp);
  return d.str();
}

Rational p_power(long p, int g) {
  Integer x = 1;
  for (int i = 0; i < g; ++i) x *= p;
  return Rational(x);
}

struct Hypotheses {
  MirrorWitness witness;
  ShapovalovElement z_eta;
  Weight mu;
};

Hypotheses check_hypotheses(const RootDatum& rd, const Weight& lambda, const RootElement& gamma, int D, int eta,
                            long p, bool weyl) {
  require_affine_sl2(rd);
  if (p < 2) throw HypothesisError("p must be a prime");
  if (rd.classify(gamma) != RootKind::Real || !rd.is_positive_root(gamma))
    throw NotRealRoot(rd.format_root(gamma, true) + " is not a positive real root");
  if (eta < 0 || eta >= rd.size()) throw HypothesisError("eta out of range");
  Weight mu = rd.subtract_root(lambda, gamma, D);
  // The bound D g_eta < p^e only has to hold for one mirror exponent; the largest is the weakest.
  auto all = mirror_witnesses(rd, mu, lambda, gamma, p, 40);
  std::optional<MirrorWitness> witness;
  if (!all.empty()) witness = all.back();
  std::vector<std::string> failed;
  auto g = rd.coroot_coeffs(gamma);
  long g_eta = g[static_cast<std::size_t>(eta)];
  if (!witness) failed.push_back("mu = lambda - D gamma is not the mirror of lambda for any p^e");
  if (g_eta == 0 || g_eta % p == 0 || rd.inner(rd.simple_root(eta), rd.simple_root(eta)) != rd.inner(gamma, gamma))
    failed.push_back("gamma is not eta-good for p");
  if (witness) {
    Integer pe = 1;
    for (int i = 0; i < witness->e; ++i) pe *= p;
    if (!(Integer(D * g_eta) < pe)) failed.push_back("D g_eta < p^e fails");
  }
  if (weyl && !(D * g_eta < lambda.h[static_cast<std::size_t>(eta)] + 1))
    failed.push_back("D g_eta < <lambda + rho, alpha_eta^vee> fails");
  if (!failed.empty()) {
    std::string msg;
    for (const auto& f : failed) msg += (msg.empty() ? "" : "; ") + f;
    throw HypothesisError(msg);
  }
  ShapovalovElement z = eta_avoiding(rd, integral_shapovalov(rd, gamma, D), eta);
  return {*witness, z, mu};
}

HomCertificate certificate_shell(const Weight& lambda, const Hypotheses& h, int D, int eta, long p) {
  HomCertificate c;
  c.lambda = lambda;
  c.mu = h.mu;
  c.gamma = h.witness.gamma;
  c.D = D;
  c.e = h.witness.e;
  c.M = h.witness.M;
  c.prime = p;
  c.eta = eta;
  return c;
}

}  // namespace

std::vector<Word> weight_space_basis(const RootDatum& rd, const RootElement& beta, std::size_t max_dim) {
  require_affine_sl2(rd);
  if (!nonnegative(beta)) return {};
  auto words = negative_monomials(beta[0], beta[1]);
  if (words.size() > max_dim)
    throw BudgetExceeded("weight space of dimension " + std::to_string(words.size()) + " exceeds " +
                         std::to_string(max_dim));
  return words;
}

long kostant_partition(const RootDatum& rd, const RootElement& beta) {
  require_affine_sl2(rd);
  if (!nonnegative(beta)) return 0;
  return static_cast<long>(negative_monomials(beta[0], beta[1]).size());
}

UEAElement e_action(const RootDatum& rd, int i, int n, const UEAElement& u, const Weight& lambda) {
  require_affine_sl2(rd);
  UEAElement e = simple_power(i, n, true) * Rational(Integer(1), factorial(n));
  return evaluate(project_bminus(multiply(e, u)), lambda);
}

std::vector<std::vector<HPoly>> symbolic_gram(const RootDatum& rd, const RootElement& beta) {
  {
    std::lock_guard<std::mutex> lock(gram_mutex);
    auto it = gram_cache().find(beta);
    if (it != gram_cache().end()) return it->second;
  }
  auto basis = weight_space_basis(rd, beta);
  std::vector<std::vector<HPoly>> g(basis.size(), std::vector<HPoly>(basis.size()));
  std::vector<std::future<void>> rows;
  for (std::size_t a = 0; a < basis.size(); ++a)
    rows.push_back(std::async(std::launch::async, [&, a] {
      UEAElement t = tau(monomial_element(basis[a]));
      for (std::size_t b = 0; b < basis.size(); ++b) g[a][b] = project_h(multiply(t, monomial_element(basis[b])));
    }));
  for (auto& r : rows) r.get();
  std::lock_guard<std::mutex> lock(gram_mutex);
  gram_cache().emplace(beta, g);
  return g;
}

WeightSpace contravariant_gram(const RootDatum& rd, const Weight& lambda, const RootElement& beta) {
  WeightSpace w;
  w.base_weight = lambda;
  w.offset = beta;
  w.basis = weight_space_basis(rd, beta);
  auto values = h_values(lambda);
  for (const auto& row : symbolic_gram(rd, beta)) {
    RatVector r;
    for (const auto& c : row) r.push_back(c.evaluate(values));
    w.gram.push_back(r);
  }
  return w;
}

RatVector pbw_vector(const WeightSpace& space, const UEAElement& u) {
  RatVector v(space.basis.size(), Rational(0));
  UEAElement c = reorder(u, PbwOrder::Canonical);
  for (const auto& [m, p] : c.terms()) {
    if (!m.e.empty() || !p.is_constant()) throw HypothesisError("expected an evaluated element of U(n^-)");
    auto it = std::find(space.basis.begin(), space.basis.end(), m.f);
    if (it == space.basis.end()) throw HypothesisError("element has the wrong weight");
    v[static_cast<std::size_t>(it - space.basis.begin())] = p.constant_term();
  }
  return v;
}

RatVector quotient_image(const WeightSpace& space, const UEAElement& u) {
  return mat_vec(space.gram, pbw_vector(space, u));
}

HPoly kac_kazhdan_product(const RootDatum& rd, const RootElement& beta) {
  require_affine_sl2(rd);
  HPoly product(1);
  auto shifted = [&](const RootElement& a) {
    auto g = rd.coroot_coeffs(a);
    HPoly h;
    for (int i = 0; i < rd.size(); ++i)
      h += (HPoly::variable(i) + HPoly(1)) * Rational(g[static_cast<std::size_t>(i)]);
    return h;
  };
  auto minus = [&](const RootElement& a, long n) {
    RootElement r = beta;
    for (std::size_t c = 0; c < r.size(); ++c) r[c] -= n * a[c];
    return r;
  };
  for (const auto& a : rd.positive_real_roots(rd.height(beta))) {
    HPoly h = shifted(a);
    for (long n = 1;; ++n) {
      RootElement r = minus(a, n);
      if (!nonnegative(r)) break;
      long mult = kostant_partition(rd, r);
      if (mult > 0) product *= (h - HPoly(Rational(n))).pow(static_cast<int>(mult));
    }
  }
  RootElement delta = rd.delta();
  for (long k = 1;; ++k) {
    RootElement a{k * delta[0], k * delta[1]};
    if (!nonnegative(minus(a, 1))) break;
    long total = 0;
    for (long n = 1; nonnegative(minus(a, n)); ++n) total += kostant_partition(rd, minus(a, n));
    if (total > 0) product *= shifted(a).pow(static_cast<int>(total));
  }
  return product;
}

DeterminantReport determinant_check(const RootDatum& rd, const RootElement& beta) {
  DeterminantReport r;
  r.beta = beta;
  r.determinant = bareiss_determinant(symbolic_gram(rd, beta));
  r.predicted = kac_kazhdan_product(rd, beta);
  auto q = r.determinant.exact_div(r.predicted);
  r.passed = q.has_value() && q->is_constant() && !q->is_zero();
  if (r.passed) r.ratio = q->constant_term();
  return r;
}

std::vector<DividedWord> simple_words(const RootDatum& rd, const RootElement& beta) {
  require_affine_sl2(rd);
  std::vector<DividedWord> out;
  if (!nonnegative(beta)) return out;
  DividedWord cur;
  std::function<void(RootElement, int)> rec = [&](RootElement rest, int last) {
    bool done = true;
    for (long c : rest) done = done && c == 0;
    if (done) {
      out.push_back(cur);
      return;
    }
    for (int i = rd.size() - 1; i >= 0; --i) {
      if (i == last) continue;
      for (long n = 1; n <= rest[static_cast<std::size_t>(i)]; ++n) {
        RootElement next = rest;
        next[static_cast<std::size_t>(i)] -= n;
        cur.letters.emplace_back(rd.simple_root(i), static_cast<int>(n));
        rec(next, i);
        cur.letters.pop_back();
      }
    }
  };
  rec(beta, -1);
  return out;
}

QuotientLattice simple_quotient_lattice(const RootDatum& rd, const Weight& lambda, const RootElement& beta) {
  QuotientLattice l;
  l.space = contravariant_gram(rd, lambda, beta);
  l.words = simple_words(rd, beta);
  for (const auto& w : l.words) l.word_images.push_back(quotient_image(l.space, divided_word_element(w)));
  std::size_t r = l.word_images.empty() ? 0 : rank(l.word_images);
  if (r == l.words.size()) {
    l.word_basis = true;
    l.basis = l.word_images;
    for (const auto& w : l.words) l.basis_names.push_back(w.str());
    return l;
  }
  // Integer Hermite basis of the span of the word images.
  Integer denom = 1;
  for (const auto& row : l.word_images)
    for (const auto& c : row) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), c.get_den_mpz_t());
  IntMatrix rows;
  for (const auto& row : l.word_images) {
    IntVector ir;
    for (const auto& c : row) { Rational s = c * Rational(denom); ir.push_back(s.get_num()); }
    rows.push_back(ir);
  }
  for (const auto& row : hermite_basis(rows)) {
    RatVector rr;
    for (const auto& c : row) {
      Rational q(c, denom);
      q.canonicalize();
      rr.push_back(q);
    }
    l.basis.push_back(rr);
    l.basis_names.push_back("b" + std::to_string(l.basis_names.size() + 1));
  }
  return l;
}

std::optional<RatVector> lattice_coordinates(const QuotientLattice& lattice, const RatVector& image) {
  if (lattice.basis.empty()) {
    for (const auto& c : image)
      if (c != 0) return std::nullopt;
    return RatVector{};
  }
  return solve_unique(transpose(lattice.basis), image);
}

HomCertificate verma_hom_check(const RootDatum& rd, const Weight& lambda, const RootElement& gamma, int D, int eta,
                               long p) {
  Hypotheses h = check_hypotheses(rd, lambda, gamma, D, eta, p, false);
  HomCertificate c = certificate_shell(lambda, h, D, eta, p);
  UEAElement x = evaluate(h.z_eta.element, lambda);
  RatVector coords;
  for (const auto& [w, v] : divided_power_pbw_coordinates(x)) {
    coords.push_back(v);
    c.basis.push_back(divided_monomial_name(w));
  }
  c.coordinates = to_integers(coords);
  c.g = min_valuation(coords, p);
  if (c.g == kInfiniteValuation) throw NonzeroImageError("Z_eta(lambda) vanished in M(lambda)_Z");
  UEAElement scaled = x * (Rational(1) / p_power(p, c.g));
  bool ok = true;
  long bound = D * rd.height(gamma);
  for (int i = 0; i < rd.size(); ++i)
    for (int n = 1; n <= bound; ++n) {
      RootElement w{D * gamma[0], D * gamma[1]};
      w[static_cast<std::size_t>(i)] -= n;
      if (!nonnegative(w)) break;
      RatVector out;
      for (const auto& [word, v] : divided_power_pbw_coordinates(e_action(rd, i, n, scaled, lambda))) out.push_back(v);
      bool pass = divisible_by_p(out, p);
      c.checks.push_back({i, n, pass});
      ok = ok && pass;
    }
  c.valid = ok;
  return c;
}

HomCertificate weyl_hom_check(const RootDatum& rd, const Weight& lambda, const RootElement& gamma, int D, int eta,
                              long p) {
  Hypotheses h = check_hypotheses(rd, lambda, gamma, D, eta, p, true);
  HomCertificate c = certificate_shell(lambda, h, D, eta, p);
  RootElement top{D * gamma[0], D * gamma[1]};
  QuotientLattice lat = simple_quotient_lattice(rd, lambda, top);
  UEAElement x = evaluate(h.z_eta.element, lambda);
  auto coords = lattice_coordinates(lat, quotient_image(lat.space, x));
  if (!coords) throw InternalDataError("Z_eta v^+ lies outside the span of the word lattice");
  c.coordinates = to_integers(*coords);
  c.basis = lat.basis_names;
  c.g = min_valuation(*coords, p);
  if (c.g == kInfiniteValuation) throw NonzeroImageError("Z_eta v^+ vanished in L(lambda)_Z");
  UEAElement scaled = x * (Rational(1) / p_power(p, c.g));
  bool ok = true;
  long bound = D * rd.height(gamma);
  for (int i = 0; i < rd.size(); ++i)
    for (int n = 1; n <= bound; ++n) {
      RootElement w = top;
      w[static_cast<std::size_t>(i)] -= n;
      if (!nonnegative(w)) break;
      QuotientLattice below = simple_quotient_lattice(rd, lambda, w);
      auto y = lattice_coordinates(below, quotient_image(below.space, e_action(rd, i, n, scaled, lambda)));
      bool pass = y.has_value() && divisible_by_p(*y, p);
      c.checks.push_back({i, n, pass});
      ok = ok && pass;
    }
  c.valid = ok;
  return c;
}

StabilityReport basis_stability_check(const RootDatum& rd, const Weight& lambda, const RootElement& beta, int eta,
                                      int k_max) {
  require_affine_sl2(rd);
  StabilityReport r;
  if (eta < 0 || eta >= rd.size()) {
    r.message = "eta out of range";
    return r;
  }
  long m_eta = beta[static_cast<std::size_t>(eta)];
  if (!(lambda.h[static_cast<std::size_t>(eta)] + 1 > m_eta)) {
    r.message = "<lambda + rho, alpha_eta^vee> must exceed the alpha_eta-coefficient of beta";
    return r;
  }
  r.hypothesis_ok = true;
  auto words = simple_words(rd, beta);
  std::vector<std::size_t> chosen;
  r.passed = true;
  for (int k = 0; k <= k_max; ++k) {
    Weight lk = rd.plus(lambda, rd.scaled(rd.fundamental(eta), k));
    WeightSpace space = contravariant_gram(rd, lk, beta);
    RatMatrix images;
    for (const auto& w : words) images.push_back(quotient_image(space, divided_word_element(w)));
    if (k == 0) {
      chosen = independent_rows(images);
      for (auto idx : chosen) r.basis.push_back(words[idx].str());
    }
    RatMatrix basis;
    for (auto idx : chosen) basis.push_back(images[idx]);
    if (!basis.empty() && rank(basis) != chosen.size()) {
      r.passed = false;
      r.message = "basis words become dependent at k=" + std::to_string(k);
      return r;
    }
    std::vector<RatVector> expansion;
    for (const auto& img : images) {
      auto sol = basis.empty() ? std::optional<RatVector>(RatVector{}) : solve_unique(transpose(basis), img);
      if (!sol) {
        r.passed = false;
        r.message = "word outside the span at k=" + std::to_string(k);
        return r;
      }
      expansion.push_back(*sol);
    }
    if (k > 0 && expansion != r.coefficients.front()) r.passed = false;
    r.coefficients.push_back(expansion);
  }
  if (!r.passed) r.message = "coefficients depend on k";
  return r;
}

}  // namespace weyllab
