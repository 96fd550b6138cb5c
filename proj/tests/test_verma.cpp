#include <gtest/gtest.h>

#include <map>
#include <random>

#include "weyllab/errors.hpp"
#include "weyllab/shapovalov.hpp"
#include "weyllab/verma.hpp"

using namespace weyllab;

namespace {

const RootDatum& a1() { return *RootDatum::load("A1"); }

Weight weight(long h0, long h1) { return Weight{{h0, h1}, 0}; }

UEAElement fpow(int i, int n) { return power(UEAElement::lowering(a1().simple_root(i)), n); }

// Partition count by the generating function prod 1/(1 - x^alpha) over positive
// roots, every root of A1 tilde having multiplicity one.
long partition_oracle(long a, long b) {
  std::vector<std::pair<long, long>> roots;
  for (long j = 0; j <= a + b; ++j) {
    if (j <= a && j + 1 <= b) roots.push_back({j, j + 1});
    if (j + 1 <= a && j <= b) roots.push_back({j + 1, j});
    if (j >= 1 && j <= a && j <= b) roots.push_back({j, j});
  }
  std::vector<std::vector<long>> count(a + 1, std::vector<long>(b + 1, 0));
  count[0][0] = 1;
  for (auto [ra, rb] : roots)
    for (long x = ra; x <= a; ++x)
      for (long y = rb; y <= b; ++y) count[x][y] += count[x - ra][y - rb];
  return count[a][b];
}

Rational binom_rational(long top, long k) {
  Rational r = 1;
  for (long j = 0; j < k; ++j) r = r * Rational(top - j) / Rational(j + 1);
  return r;
}

Rational scalar_part(const UEAElement& u) {
  return project_h(u).constant_term();
}

// Apply simple raising words of total weight beta to x v+ and read off the
// coefficient of v+.
void e_word_values(const Weight& lambda, const RootElement& beta, const UEAElement& x, std::vector<Rational>& out) {
  if (beta[0] == 0 && beta[1] == 0) {
    out.push_back(scalar_part(x));
    return;
  }
  for (int i = 0; i < 2; ++i)
    if (beta[static_cast<std::size_t>(i)] > 0) {
      RootElement rest = beta;
      rest[static_cast<std::size_t>(i)] -= 1;
      e_word_values(lambda, rest, e_action(a1(), i, 1, x, lambda), out);
    }
}

// Rank over F_p of the contravariant form on the divided-power words of weight
// -beta: a drop against the rational rank means a singular vector mod p.
std::pair<std::size_t, std::size_t> word_form_ranks(const Weight& lam, const RootElement& beta, long p) {
  auto l = simple_quotient_lattice(a1(), lam, beta);
  RatMatrix form;
  for (const auto& w : l.words) {
    auto c = pbw_vector(l.space, divided_word_element(w));
    RatVector row;
    for (const auto& img : l.word_images) {
      Rational s = 0;
      for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * img[k];
      row.push_back(s);
    }
    form.push_back(row);
  }
  std::size_t rational_rank = rank(form);
  std::vector<std::vector<long>> m;
  for (const auto& row : form) {
    std::vector<long> r;
    for (const auto& x : row) {
      Integer q = x.get_num() % p;
      r.push_back((q.get_si() + p) % p);
    }
    m.push_back(r);
  }
  std::size_t rk = 0;
  for (std::size_t col = 0; col < (m.empty() ? 0 : m[0].size()) && rk < m.size(); ++col) {
    std::size_t piv = rk;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rk]);
    long inv = 1;
    while (m[rk][col] * inv % p != 1) ++inv;
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rk && m[r][col] != 0) {
        long f = m[r][col] * inv % p;
        for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] = ((m[r][c] - f * m[rk][c]) % p + p) % p;
      }
    ++rk;
  }
  return {rational_rank, rk};
}

UEAElement from_vector(const WeightSpace& s, const RatVector& c) {
  UEAElement u(PbwOrder::Canonical);
  for (std::size_t k = 0; k < c.size(); ++k) u.add(PbwMonomial{s.basis[k], {}}, HPoly(c[k]));
  return u;
}

}  // namespace

TEST(Verma, WeightSpaceDimensions) {
  EXPECT_EQ(weight_space_basis(a1(), {2, 1}).size(), 3u);
  EXPECT_EQ(weight_space_basis(a1(), {0, 1}).size(), 1u);
  EXPECT_EQ(weight_space_basis(a1(), {1, 1}).size(), 2u);
  EXPECT_THROW(weight_space_basis(a1(), {6, 6}), BudgetExceeded);
}

TEST(Verma, KostantPartitionMatchesGeneratingFunction) {
  for (long a = 0; a <= 5; ++a)
    for (long b = 0; b <= 5; ++b) EXPECT_EQ(kostant_partition(a1(), {a, b}), partition_oracle(a, b)) << a << "," << b;
}

TEST(Verma, EActionSl2) {
  for (long l = -3; l <= 5; ++l) {
    auto r = e_action(a1(), 1, 1, fpow(1, 1), weight(0, l));
    EXPECT_EQ(scalar_part(r), Rational(l));
  }
}

TEST(Verma, DividedPowerCommutation) {
  // e^(a) f^(b) v+ = binom(lambda(h) - b + a, a) f^(b-a) v+
  for (int i = 0; i < 2; ++i)
    for (long l = -3; l <= 5; ++l)
      for (int b = 0; b <= 4; ++b)
        for (int a = 1; a <= b; ++a) {
          Weight lam = i == 0 ? weight(l, 0) : weight(0, l);
          UEAElement fb = fpow(i, b) * (Rational(1) / Rational(factorial(b)));
          UEAElement expect = fpow(i, b - a) * (binom_rational(l - b + a, a) / Rational(factorial(b - a)));
          EXPECT_EQ(e_action(a1(), i, a, fb, lam), evaluate(expect, lam)) << i << " " << l << " " << a << " " << b;
        }
}

TEST(Verma, ShapovalovElementIsSingularOnHyperplane) {
  auto z = integral_shapovalov(a1(), {2, 1}, 1);
  // 2(h0+1) + (h1+1) = 1
  for (long h0 = -4; h0 <= 4; ++h0) {
    Weight lam = weight(h0, -2 - 2 * h0);
    for (int i = 0; i < 2; ++i) EXPECT_TRUE(e_action(a1(), i, 1, evaluate(z.element, lam), lam).is_zero());
  }
}

TEST(Verma, GramSmallCases) {
  auto w = contravariant_gram(a1(), weight(5, 2), {1, 0});
  ASSERT_EQ(w.gram.size(), 1u);
  EXPECT_EQ(w.gram[0][0], Rational(5));
  auto g = symbolic_gram(a1(), {1, 1});
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) EXPECT_EQ(g[a][b], g[b][a]);
}

TEST(Verma, DeterminantFormula) {
  for (long a = 0; a <= 4; ++a)
    for (long b = 0; a + b <= 4; ++b) {
      if (a + b == 0) continue;
      auto r = determinant_check(a1(), {a, b});
      EXPECT_TRUE(r.passed) << a << "," << b;
    }
  auto d = determinant_check(a1(), {1, 1});
  HPoly h0 = HPoly::variable(0), h1 = HPoly::variable(1);
  EXPECT_EQ(d.predicted, h1 * h0 * (h0 + h1 + HPoly(2)));
  EXPECT_EQ(determinant_check(a1(), {0, 1}).predicted, h1);
}

TEST(Verma, Contravariance) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> hv(-4, 6);
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; a + b <= 3; ++b)
      for (int i = 0; i < 2; ++i) {
        Weight lam = weight(hv(rng), hv(rng));
        RootElement up{a, b};
        up[static_cast<std::size_t>(i)] += 1;
        auto low = contravariant_gram(a1(), lam, {a, b});
        auto high = contravariant_gram(a1(), lam, up);
        UEAElement fi = UEAElement::lowering(a1().simple_root(i));
        for (const auto& u : low.basis)
          for (const auto& v : high.basis) {
            UEAElement ue(PbwOrder::Canonical);
            ue.add(PbwMonomial{u, {}}, HPoly(1));
            UEAElement ve(PbwOrder::Canonical);
            ve.add(PbwMonomial{v, {}}, HPoly(1));
            RatVector left = quotient_image(high, evaluate(multiply(fi, ue), lam));
            Rational lhs = 0;
            auto cv = pbw_vector(high, ve);
            for (std::size_t k = 0; k < cv.size(); ++k) lhs += left[k] * cv[k];
            RatVector right = quotient_image(low, e_action(a1(), i, 1, ve, lam));
            Rational rhs = 0;
            auto cu = pbw_vector(low, ue);
            for (std::size_t k = 0; k < cu.size(); ++k) rhs += right[k] * cu[k];
            EXPECT_EQ(lhs, rhs);
          }
      }
}

TEST(Verma, RadicalIsAnnihilator) {
  for (const Weight& lam : {weight(3, -8), weight(4, -10), weight(-5, 8)}) {
    RootElement beta{2, 1};
    auto s = contravariant_gram(a1(), lam, beta);
    ASSERT_EQ(rank(s.gram), 2u);
    for (std::size_t k = 0; k < s.basis.size(); ++k) {
      RatVector unit(s.basis.size(), 0);
      unit[k] = 1;
      std::vector<Rational> values;
      e_word_values(lam, beta, from_vector(s, unit), values);
      bool nonzero = false;
      for (const auto& v : values) nonzero = nonzero || v != 0;
      bool radical = true;
      for (const auto& c : mat_vec(s.gram, unit)) radical = radical && c == 0;
      EXPECT_NE(nonzero, radical);
    }
    // The singular vector spans the kernel.
    UEAElement z = evaluate(integral_shapovalov(a1(), beta, 1).element, lam);
    std::vector<Rational> values;
    e_word_values(lam, beta, z, values);
    for (const auto& v : values) EXPECT_EQ(v, 0);
    for (const auto& c : quotient_image(s, z)) EXPECT_EQ(c, 0);
  }
}

TEST(Verma, QuotientLattice) {
  auto l = simple_quotient_lattice(a1(), weight(2, 1), {2, 1});
  EXPECT_EQ(l.rank(), 3u);
  EXPECT_TRUE(l.word_basis);
  EXPECT_EQ(l.basis_names, (std::vector<std::string>{"f1 f0^(2)", "f0 f1 f0", "f0^(2) f1"}));
  auto singular = simple_quotient_lattice(a1(), weight(3, -8), {2, 1});
  EXPECT_EQ(singular.rank(), 2u);
  EXPECT_FALSE(singular.word_basis);
}

TEST(Verma, WorkedCertificate) {
  auto c = weyl_hom_check(a1(), weight(2, 1), {2, 1}, 1, 1, 7);
  EXPECT_TRUE(c.valid);
  EXPECT_EQ(c.g, 0);
  EXPECT_EQ(c.e, 1);
  EXPECT_EQ(c.mu.h, (std::vector<long>{0, 3}));
  EXPECT_EQ(c.mu.d, Rational(-2));
  EXPECT_EQ(c.coordinates, (std::vector<Integer>{6, -3, 2}));
  auto v = verma_hom_check(a1(), weight(2, 1), {2, 1}, 1, 1, 7);
  EXPECT_TRUE(v.valid);
  EXPECT_EQ(v.g, 0);
  for (long p : {2L, 3L, 5L, 11L, 13L}) EXPECT_THROW(weyl_hom_check(a1(), weight(2, 1), {2, 1}, 1, 1, p), HypothesisError);
}

TEST(Verma, UnrescaledRootVectorGivesNoCertificate) {
  // 8 f1 f0^(2) - 5 f0 f1 f0 + 4 f0^(2) f1 is Z with f_gamma replaced by [f0, f_delta].
  auto words = simple_words(a1(), {2, 1});
  UEAElement x(PbwOrder::Canonical);
  const int coeffs[] = {8, -5, 4};
  for (int k = 0; k < 3; ++k) x += divided_word_element(words[static_cast<std::size_t>(k)]) * Rational(coeffs[k]);
  Weight lam = weight(2, 1);
  auto below = simple_quotient_lattice(a1(), lam, {1, 1});
  auto y = lattice_coordinates(below, quotient_image(below.space, e_action(a1(), 0, 1, x, lam)));
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ(*y, (RatVector{-2, 2}));
}

TEST(Verma, CertificatesOverRandomWeights) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> hv(0, 16);
  const long primes[] = {2, 3, 5, 7, 11, 13};
  int valid = 0, attempts = 0;
  while (valid < 25 && attempts < 20000) {
    ++attempts;
    Weight lam = weight(hv(rng), hv(rng));
    for (const auto& g : a1().positive_real_roots(6))
      for (int D = 1; D * a1().height(g) <= 6; ++D)
        for (int eta = 0; eta < 2; ++eta)
          for (long p : primes) {
            std::string where = a1().format_weight(lam, true) + " " + a1().format_root(g, true) +
                                " D=" + std::to_string(D) + " eta=" + std::to_string(eta) + " p=" + std::to_string(p);
            HomCertificate c;
            try {
              c = weyl_hom_check(a1(), lam, g, D, eta, p);
            } catch (const HypothesisError&) {
              continue;
            } catch (const NonzeroImageError&) {
              // Cross-check the vanishing through raising words on M(lambda).
              auto z = eta_avoiding(a1(), integral_shapovalov(a1(), g, D), eta);
              std::vector<Rational> values;
              e_word_values(lam, {D * g[0], D * g[1]}, evaluate(z.element, lam), values);
              for (const auto& v : values) EXPECT_EQ(v, 0) << where;
              continue;
            }
            EXPECT_TRUE(c.valid) << where;
            bool nonzero_mod_p = false;
            for (const auto& x : c.coordinates) {
              Integer q = x;
              for (int k = 0; k < c.g; ++k) q /= p;
              nonzero_mod_p = nonzero_mod_p || q % p != 0;
            }
            EXPECT_TRUE(nonzero_mod_p) << where;
            ++valid;
          }
  }
  EXPECT_GE(valid, 25);
}

TEST(Verma, VanishingImageWithoutSingularVector) {
  // lambda = 2 varpi_0, gamma = alpha_0 + delta, D = 1, eta = 0, p = 3 meets every
  // hypothesis, yet Z_0(lambda) = 4 f1 f0^2 + 8 f_delta f0 + 8 f_gamma kills v+ in
  // L(lambda), and the form on L(lambda)_Z at lambda - gamma stays nondegenerate mod 3.
  Weight lam = weight(2, 0);
  EXPECT_THROW(weyl_hom_check(a1(), lam, {2, 1}, 1, 0, 3), NonzeroImageError);
  auto [rq, rp] = word_form_ranks(lam, {2, 1}, 3);
  EXPECT_EQ(rq, 2u);
  EXPECT_EQ(rp, 2u);
  // The worked weight does carry a singular vector mod 7.
  auto [wq, wp] = word_form_ranks(weight(2, 1), {2, 1}, 7);
  EXPECT_EQ(wq, 3u);
  EXPECT_EQ(wp, 2u);
}

TEST(Verma, BasisStability) {
  auto r = basis_stability_check(a1(), weight(2, 1), {2, 1}, 1, 3);
  EXPECT_TRUE(r.hypothesis_ok);
  EXPECT_TRUE(r.passed) << r.message;
  EXPECT_EQ(r.coefficients.size(), 4u);
  EXPECT_TRUE(basis_stability_check(a1(), weight(2, 1), {2, 1}, 1, 0).passed);
  auto bad = basis_stability_check(a1(), weight(1, 1), {2, 1}, 0, 3);
  EXPECT_FALSE(bad.hypothesis_ok);
  EXPECT_FALSE(bad.passed);
}

TEST(Verma, LargestMirrorExponentIsUsed) {
  // g_1 = 3 exceeds 2^1 but not 2^4; 17 = 2^4 + 1 gives the usable exponent.
  auto c = weyl_hom_check(a1(), weight(0, 4), {2, 3}, 1, 1, 2);
  EXPECT_EQ(c.e, 4);
  EXPECT_EQ(c.M, 1);
  EXPECT_TRUE(c.valid);
}
