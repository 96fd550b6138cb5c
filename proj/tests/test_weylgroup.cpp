#include <gtest/gtest.h>

#include <random>

#include "weyllab/errors.hpp"
#include "weyllab/weylgroup.hpp"

using namespace weyllab;

namespace {

Weight random_weight(const RootDatum& rd, std::mt19937& rng, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  Weight w;
  for (int i = 0; i < rd.size(); ++i) w.h.push_back(dist(rng));
  w.d = dist(rng);
  return w;
}

}  // namespace

TEST(WeylGroup, ReflectExamples) {
  auto a2 = RootDatum::load("A2");
  EXPECT_EQ(reflect(*a2, a2->fundamental(1), a2->simple_root(2)), a2->fundamental(1));
  auto a1 = RootDatum::load("A1");
  EXPECT_EQ(reflect_root(*a1, a1->parse_root("α0+δ"), a1->simple_root(0)), a1->simple_root(1));
  EXPECT_THROW(reflect(*a1, a1->rho(), a1->delta()), NotRealRoot);
  EXPECT_THROW(dot_reflect(*a1, a1->rho(), a1->delta(), 0), NotRealRoot);
}

TEST(WeylGroup, ReflectIsInvolution) {
  std::mt19937 rng(1);
  for (const auto& t : {"A1", "A3", "C2", "G2"}) {
    auto rd = RootDatum::load(t);
    auto roots = rd->positive_real_roots(10);
    for (int it = 0; it < 100; ++it) {
      Weight w = random_weight(*rd, rng, -9, 9);
      const auto& g = roots[static_cast<std::size_t>(it) % roots.size()];
      EXPECT_EQ(reflect(*rd, reflect(*rd, w, g), g), w);
      long m = static_cast<long>(it % 7) - 3;
      Weight x = dot_reflect(*rd, w, g, m);
      EXPECT_EQ(dot_reflect(*rd, x, g, m), w);
      EXPECT_EQ(dot_reflect(*rd, w, g, rd->pairing(w, g)), w);
    }
  }
}

TEST(WeylGroup, DotReflectExample) {
  auto a1 = RootDatum::load("A1");
  Weight lam = a1->parse_weight("2ϖ0+ϖ1");
  EXPECT_EQ(dot_reflect(*a1, lam, a1->parse_root("α0+δ"), 7), a1->parse_weight("3ϖ1-2δ"));
}

TEST(WeylGroup, NearestLowerExamples) {
  auto a1 = RootDatum::load("A1");
  Weight lam = a1->parse_weight("2,1");
  auto r = nearest_lower(*a1, lam, a1->parse_root("α0+δ"), 7, 1);
  EXPECT_EQ(r.M, 1);
  EXPECT_EQ(r.D, 1);
  EXPECT_EQ(r.mu, a1->parse_weight("0,3;-2"));
  auto z = nearest_lower(*a1, a1->parse_weight("1,1"), a1->simple_root(1), 2, 1);
  EXPECT_EQ(z.M, 1);
  EXPECT_EQ(z.D, 0);
  EXPECT_EQ(z.mu, a1->parse_weight("1,1"));
}

TEST(WeylGroup, NearestLowerMirrorProperty) {
  std::mt19937 rng(2);
  auto a2 = RootDatum::load("A2");
  auto roots = a2->positive_real_roots(9);
  for (int it = 0; it < 200; ++it) {
    Weight w = random_weight(*a2, rng, 0, 30);
    const auto& g = roots[static_cast<std::size_t>(it) % roots.size()];
    long p = std::vector<long>{2, 3, 5, 7}[static_cast<std::size_t>(it % 4)];
    int e = 1 + it % 3;
    auto r = nearest_lower(*a2, w, g, p, e);
    long q = ipow(p, e);
    EXPECT_GE(r.D, 0);
    EXPECT_LT(r.D, q);
    EXPECT_EQ(a2->pairing(w, g), r.M * q + r.D);
    EXPECT_EQ(a2->pairing(r.mu, g), r.M * q - r.D);
  }
}

TEST(WeylGroup, MirroredExamples) {
  auto a1 = RootDatum::load("A1");
  Weight lam = a1->parse_weight("2,1");
  Weight mu = a1->parse_weight("0,3;-2");
  RootElement g = a1->parse_root("α0+δ");
  auto w = mirrored(*a1, mu, lam, g, 7, 4);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->e, 1);
  EXPECT_EQ(w->M, 1);
  EXPECT_EQ(w->D, 1);
  EXPECT_FALSE(mirrored(*a1, lam, lam, g, 7, 4).has_value());
  // Brute-force negative control: mu is not lambda - D gamma for any e <= 6 when p = 5.
  for (int e = 1; e <= 6; ++e) {
    auto nl = nearest_lower(*a1, lam, g, 5, e);
    EXPECT_FALSE(nl.D > 0 && nl.mu == mu);
  }
  EXPECT_FALSE(mirrored(*a1, mu, lam, g, 5, 6).has_value());
}

TEST(WeylGroup, LinkageExamples) {
  auto a1 = RootDatum::load("A1");
  Weight y = a1->parse_weight("2,1");
  Weight x = a1->parse_weight("0,3;-2");
  SearchBounds b;
  b.max_height = 10;
  b.max_n = 10;
  EXPECT_TRUE(linked_char0(*a1, x, y, b).empty());
  EXPECT_TRUE(linked_char0(*a1, y, y, b).empty());
  auto steps = linked_modp(*a1, x, y, 7, {});
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0], (LinkageStep{a1->parse_root("α0+δ"), 8, 1}));
  EXPECT_TRUE(linked_modp(*a1, y, y, 7, {}).empty());
}

TEST(WeylGroup, ImaginaryStepsAtCriticalLevel) {
  auto a1 = RootDatum::load("A1");
  // Level -2 = -h^vee: (y + rho, delta) = 0.
  Weight y = a1->parse_weight("-1,-1");
  Weight x = a1->subtract_root(y, a1->delta(), 2);
  auto steps = linked_char0(*a1, x, y, {});
  bool imaginary = false;
  for (const auto& s : steps)
    if (a1->classify(s.beta) == RootKind::Imaginary) imaginary = true;
  EXPECT_TRUE(imaginary);
  // Away from the critical level no imaginary step exists.
  Weight y2 = a1->parse_weight("1,1");
  for (const auto& s : linked_char0(*a1, a1->subtract_root(y2, a1->delta(), 2), y2, {}))
    EXPECT_EQ(a1->classify(s.beta), RootKind::Real);
}

TEST(WeylGroup, ModpAtZeroIsChar0) {
  std::mt19937 rng(3);
  auto a1 = RootDatum::load("A1");
  auto roots = a1->positive_real_roots(12);
  for (int it = 0; it < 50; ++it) {
    Weight y = random_weight(*a1, rng, -4, 8);
    const auto& beta = roots[static_cast<std::size_t>(it) % roots.size()];
    Weight x = a1->subtract_root(y, beta, 1 + it % 4);
    EXPECT_EQ(linked_modp(*a1, x, y, 0, {}), linked_char0(*a1, x, y, {}));
  }
}

TEST(WeylGroup, MirrorWitnessIsOneModularStep) {
  std::mt19937 rng(4);
  auto a1 = RootDatum::load("A1");
  auto roots = a1->positive_real_roots(9);
  int checked = 0;
  for (int it = 0; checked < 200 && it < 100000; ++it) {
    Weight lam = random_weight(*a1, rng, 0, 25);
    lam.d = 0;
    const auto& g = roots[static_cast<std::size_t>(it) % roots.size()];
    long p = std::vector<long>{2, 3, 5, 7}[static_cast<std::size_t>(it % 4)];
    auto nl = nearest_lower(*a1, lam, g, p, 1);
    if (nl.D == 0 || !a1->dominant(nl.mu)) continue;
    auto w = mirrored(*a1, nl.mu, lam, g, p, 1);
    ASSERT_TRUE(w.has_value());
    SearchBounds b;
    b.max_n = 1000;
    b.max_m = 1000;
    auto steps = linked_modp(*a1, nl.mu, lam, p, b);
    LinkageStep expect{g, a1->pairing(lam, g), nl.M};
    EXPECT_NE(std::find(steps.begin(), steps.end(), expect), steps.end());
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

TEST(WeylGroup, LinkageChains) {
  auto a1 = RootDatum::load("A1");
  Weight y = a1->parse_weight("2,1");
  auto c0 = linkage_chain(*a1, y, y, 7, {});
  ASSERT_TRUE(c0.has_value());
  EXPECT_TRUE(c0->steps.empty());
  auto c1 = linkage_chain(*a1, a1->parse_weight("0,3;-2"), y, 7, {});
  ASSERT_TRUE(c1.has_value());
  EXPECT_EQ(c1->steps.size(), 1u);
  EXPECT_FALSE(linkage_chain(*a1, a1->parse_weight("0,2"), y, 7, {}).has_value());
}

TEST(WeylGroup, MirrorRequiresDominance) {
  // lambda = varpi_1: the nearest lower 3-reflection in alpha_0 + delta leaves the dominant chamber.
  Weight lam{{0, 1}, 0};
  auto nl = nearest_lower(*RootDatum::load("A1"), lam, {2, 1}, 3, 1);
  ASSERT_GT(nl.D, 0);
  EXPECT_FALSE(RootDatum::load("A1")->dominant(nl.mu));
  EXPECT_FALSE(mirrored(*RootDatum::load("A1"), nl.mu, lam, {2, 1}, 3, 4).has_value());
}

TEST(WeylGroup, MirrorWitnessesListsEveryExponent) {
  auto a1 = RootDatum::load("A1");
  Weight lam = a1->parse_weight("4w1");
  RootElement g = a1->parse_root("a1+2delta");
  // <lambda + rho, gamma^vee> = 2*1 + 3*5 = 17 = 8*2 + 1 = 4*4 + 1 = 2*8 + 1 = 1*16 + 1.
  auto all = mirror_witnesses(*a1, a1->subtract_root(lam, g, 1), lam, g, 2, 40);
  ASSERT_EQ(all.size(), 4u);
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].e, static_cast<int>(i) + 1);
    EXPECT_EQ(all[i].M, 8 >> i);
    EXPECT_EQ(all[i].D, 1);
  }
  EXPECT_EQ(mirrored(*a1, a1->subtract_root(lam, g, 1), lam, g, 2, 40)->e, 1);
}
