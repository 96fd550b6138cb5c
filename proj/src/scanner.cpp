#include "weyllab/scanner.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <thread>

#include "weyllab/errors.hpp"
#include "weyllab/weylgroup.hpp"

namespace weyllab {

namespace {

int vp(long n, long p) {
  if (n == 0) return 1 << 20;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

long mod(long a, long m) { return ((a % m) + m) % m; }

long inverse_mod(long a, long m) {
  // extended Euclid; a and m coprime
  long old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    long q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  return mod(old_s, m);
}

RootElement family_root(int r, int k, long t) {
  RootElement g(static_cast<std::size_t>(r + 1), t);
  g[static_cast<std::size_t>(k)] += 1;
  return g;
}

long level_of(const std::vector<long>& xi) { return std::accumulate(xi.begin(), xi.end(), 0L); }

// Smallest t >= 0 with step*t + x + 1 - D = M p^e, M >= 1; assumes solvable.
std::pair<long, long> solve_t(long step, long x, long D, long pe) {
  long g = std::gcd(step, pe);
  long m = pe / g;
  long rhs = D - x - 1;
  long t = m == 1 ? 0 : mod((rhs / g) % m * inverse_mod((step / g) % m, m), m);
  while (step * t + x + 1 - D < pe) t += m;
  return {t, (step * t + x + 1 - D) / pe};
}

// Congruence test for the alpha_k + t delta family with xi_k = x.
std::optional<ScanWitness> family_member(int r, int k, long step, long x, long p) {
  int v = vp(step, p);
  long pe = 1;
  for (int e = 1;; ++e) {
    if (pe > (1L << 40) / p) return std::nullopt;
    pe *= p;
    long g = 1;
    for (int i = 0; i < std::min(v, e); ++i) g *= p;
    for (long D = 1; D <= x / 2 && D < pe; ++D)
      if (mod(x + 1 - D, g) == 0) {
        auto [t, M] = solve_t(step, x, D, pe);
        return ScanWitness{k, t, e, M, D, 0, -1, family_root(r, k, t)};
      }
    if (e >= v && pe > x / 2) return std::nullopt;
  }
}

Membership cyclic_member(int r, const std::vector<long>& xi, long p) {
  Membership m;
  long step = level_of(xi) + r + 1;
  for (int k = 0; k <= r; ++k)
    if (auto w = family_member(r, k, step, xi[static_cast<std::size_t>(k)], p)) m.witnesses.push_back(*w);
  m.member = !m.witnesses.empty();
  return m;
}

std::vector<ScanWitness> cyclic_reducible(int r, const std::vector<long>& xi, long p) {
  std::vector<ScanWitness> out;
  long level = level_of(xi);
  long step = level + r + 1;
  int n = r + 1;
  for (int k = 0; k < n; ++k) {
    long x = xi[static_cast<std::size_t>(k)];
    // (i) needs D(t+1) <= x, the others Dt <= xi_eta <= level.
    for (long t = 0; t <= level; ++t)
      for (long D = 1; 2 * D <= x; ++D) {
        long val = step * t + x + 1 - D;
        long pe = 1;
        for (int e = 1; pe <= val / p; ++e) {
          pe *= p;
          if (val % pe != 0 || D >= pe) continue;
          long M = val / pe;
          ScanWitness w{k, t, e, M, D, 0, -1, family_root(r, k, t)};
          if (std::gcd(t + 1, p) == 1 && D * (t + 1) < std::min(x + 1, pe)) {
            w.condition = 1;
            w.eta = k;
            out.push_back(w);
          }
          if (std::gcd(t, p) == 1)
            for (int i = 1; i <= r; ++i) {
              int eta = (k + i) % n;
              if (D * t < std::min(xi[static_cast<std::size_t>(eta)] + 1, pe)) {
                w.condition = (r > 1 && i == r) ? 3 : 2;
                w.eta = eta;
                out.push_back(w);
              }
            }
        }
      }
  }
  return out;
}

ScanEntry cyclic_classify(int r, const std::vector<long>& xi, long p) {
  ScanEntry e;
  e.xi = xi;
  e.level = level_of(xi);
  e.weight = Weight{xi, 0};
  if (!cyclic_member(r, xi, p).member) return e;
  e.witnesses = cyclic_reducible(r, xi, p);
  e.status = e.witnesses.empty() ? ScanStatus::QuasiSimple : ScanStatus::Reducible;
  return e;
}

void compositions(int parts, long total, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long a = total; a >= 0; --a) {
    cur.push_back(a);
    compositions(parts, total - a, cur, out);
    cur.pop_back();
  }
}

template <class F>
std::vector<ScanEntry> parallel_levels(long level_min, long level_max, F per_level) {
  std::vector<std::future<std::vector<ScanEntry>>> jobs;
  for (long l = level_min; l <= level_max; ++l) jobs.push_back(std::async(std::launch::async, per_level, l));
  std::vector<ScanEntry> out;
  for (auto& j : jobs) {
    auto part = j.get();
    out.insert(out.end(), part.begin(), part.end());
  }
  std::stable_sort(out.begin(), out.end(), [](const ScanEntry& a, const ScanEntry& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.xi < b.xi;
  });
  return out;
}

void require_rank(int r) {
  if (r < 1) throw HypothesisError("rank must be at least 1");
}

}  // namespace

std::string status_name(ScanStatus s) {
  switch (s) {
    case ScanStatus::Reducible: return "reducible";
    case ScanStatus::QuasiSimple: return "quasi-simple";
    case ScanStatus::NotInYPlus: return "not-in-Y+";
  }
  return "?";
}

Membership y_plus_a1(long level, long xi0, long p) { return cyclic_member(1, {xi0, level - xi0}, p); }

Membership y_plus_a1_bruteforce(long level, long xi0, long p, long t_bound) {
  const RootDatum& rd = *RootDatum::load(Family::A, 1);
  Weight lam{{xi0, level - xi0}, 0};
  Membership m;
  for (int k = 0; k < 2; ++k)
    for (long t = 0; t <= t_bound; ++t) {
      RootElement g = family_root(1, k, t);
      long pairing = rd.pairing(lam, g);
      bool found = false;
      long pe = 1;
      for (int e = 1; pe <= pairing / p; ++e) {
        pe *= p;
        NearestLower nl = nearest_lower(rd, lam, g, p, e);
        if (nl.D > 0 && nl.M >= 1 && rd.dominant(nl.mu)) {
          m.witnesses.push_back({k, t, e, nl.M, nl.D, 0, -1, g});
          found = true;
          break;
        }
      }
      if (found) break;
    }
  m.member = !m.witnesses.empty();
  return m;
}

std::vector<ScanWitness> reducible_a1_all(long level, long xi0, long p) {
  return cyclic_reducible(1, {xi0, level - xi0}, p);
}

std::optional<ScanWitness> reducible_a1(long level, long xi0, long p) {
  auto all = reducible_a1_all(level, xi0, p);
  if (all.empty()) return std::nullopt;
  return all.front();
}

ScanEntry classify_a1(long level, long xi0, long p) { return cyclic_classify(1, {xi0, level - xi0}, p); }

std::vector<ScanEntry> scan_a1(long p, long level_min, long level_max) {
  return parallel_levels(level_min, level_max, [p](long l) {
    std::vector<ScanEntry> out;
    for (long x = 0; x <= l; ++x) out.push_back(classify_a1(l, x, p));
    return out;
  });
}

std::vector<ScanEntry> quasi_simple_a1(long p, long level_max) {
  std::vector<ScanEntry> out;
  for (auto& e : scan_a1(p, 1, level_max))
    if (e.status == ScanStatus::QuasiSimple) out.push_back(std::move(e));
  return out;
}

LowestLevel lowest_level(long p, long level_cap) {
  LowestLevel r;
  for (long l = 0; l <= level_cap; ++l) {
    for (long x = 0; x <= l; ++x)
      if (reducible_a1(l, x, p)) r.xi0.push_back(x);
    if (!r.xi0.empty()) {
      r.level = l;
      return r;
    }
  }
  return r;
}

Membership y_plus_ar(int r, const std::vector<long>& xi, long p) {
  require_rank(r);
  if (xi.size() != static_cast<std::size_t>(r + 1)) throw HypothesisError("expected r+1 weight coordinates");
  return cyclic_member(r, xi, p);
}

std::vector<ScanWitness> reducible_ar_all(int r, const std::vector<long>& xi, long p) {
  require_rank(r);
  if (xi.size() != static_cast<std::size_t>(r + 1)) throw HypothesisError("expected r+1 weight coordinates");
  return cyclic_reducible(r, xi, p);
}

std::optional<ScanWitness> reducible_ar(int r, const std::vector<long>& xi, long p) {
  auto all = reducible_ar_all(r, xi, p);
  if (all.empty()) return std::nullopt;
  return all.front();
}

ScanEntry classify_ar(int r, const std::vector<long>& xi, long p) {
  require_rank(r);
  if (xi.size() != static_cast<std::size_t>(r + 1)) throw HypothesisError("expected r+1 weight coordinates");
  return cyclic_classify(r, xi, p);
}

std::vector<ScanEntry> scan_ar(int r, long p, long level_min, long level_max) {
  require_rank(r);
  return parallel_levels(level_min, level_max, [r, p](long l) {
    std::vector<std::vector<long>> all;
    std::vector<long> cur;
    compositions(r + 1, l, cur, all);
    std::vector<ScanEntry> out;
    for (const auto& xi : all) out.push_back(cyclic_classify(r, xi, p));
    return out;
  });
}

std::vector<ScanWitness> mirror_bruteforce(const RootDatum& rd, const Weight& lambda, long p, long t_bound) {
  std::vector<ScanWitness> out;
  RootElement delta = rd.delta();
  for (const auto& g0 : rd.base_roots())
    for (long t = 0; t <= t_bound; ++t) {
      RootElement g = g0;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += t * delta[i];
      long pairing = rd.pairing(lambda, g);
      long pe = 1;
      for (int e = 1; pe <= pairing / p; ++e) {
        pe *= p;
        NearestLower nl = nearest_lower(rd, lambda, g, p, e);
        if (nl.D > 0 && nl.M >= 1 && rd.dominant(nl.mu)) {
          out.push_back({-1, t, e, nl.M, nl.D, 0, -1, g});
          break;
        }
      }
    }
  return out;
}

std::vector<RotationDiscrepancy> rotation_closure_check(int r, long p, long level_max, long t_bound) {
  require_rank(r);
  const RootDatum& rd = *RootDatum::load(Family::A, r);
  std::vector<RotationDiscrepancy> out;
  for (long l = 0; l <= level_max; ++l) {
    std::vector<std::vector<long>> all;
    std::vector<long> cur;
    compositions(r + 1, l, cur, all);
    for (const auto& xi : all) {
      bool fast = cyclic_member(r, xi, p).member;
      bool brute = !mirror_bruteforce(rd, Weight{xi, 0}, p, t_bound).empty();
      if (fast != brute) out.push_back({xi, fast, brute});
    }
  }
  return out;
}

LevelOneReport level_one_scan(const RootDatum& rd, long p, long t_bound) {
  LevelOneReport rep;
  rep.type = rd.name();
  rep.p = p;
  rep.t_bound = t_bound > 0 ? t_bound : 4 * p * p;
  long level = 1;
  for (int j = 0; j < rd.size(); ++j) {
    if (rd.comarks()[static_cast<std::size_t>(j)] != 1) continue;
    Weight lam = rd.fundamental(j);
    bool member = false, literal = false;
    for (const auto& g0 : rd.base_roots()) {
      Rational cq = Rational(2) / rd.inner(g0, g0) * Rational(level + rd.dual_coxeter_number());
      if (!is_integer(cq)) throw InternalDataError("C is not integral for " + rd.format_root(g0, true));
      long c = cq.get_num().get_si();
      if (rd.dominant(rd.subtract_root(lam, g0, std::gcd(c, p)))) literal = true;
      long pairing = rd.pairing(lam, g0);
      // lambda - D gamma_0 is dominant only for D up to the smallest positive ratio.
      long d_max = 0;
      while (d_max < 1000 && rd.dominant(rd.subtract_root(lam, g0, d_max + 1))) ++d_max;
      int v = vp(c, p);
      long pe = 1;
      for (int e = 1; !member; ++e) {
        pe *= p;
        long g = std::gcd(c, pe);
        for (long D = 1; D <= d_max && D < pe; ++D)
          if (mod(pairing - D, g) == 0) member = true;
        if (e > v && pe > d_max) break;
      }
    }
    if (member) rep.members.push_back(j);
    if (literal) rep.gcd_test.push_back(j);
    if (!mirror_bruteforce(rd, lam, p, rep.t_bound).empty()) rep.bruteforce.push_back(j);
  }
  rep.agree = rep.members == rep.bruteforce;
  return rep;
}

BoundReport bound_remark_check(int r, long level, long p) {
  require_rank(r);
  BoundReport rep;
  long hv = r + 1;
  rep.applicable = p > level * (level + hv) - hv;
  if (!rep.applicable) return rep;
  for (const auto& e : scan_ar(r, p, level, level)) {
    if (e.status != ScanStatus::NotInYPlus) ++rep.members;
    if (e.status == ScanStatus::Reducible) ++rep.reducible;
  }
  rep.passed = rep.reducible == 0;
  return rep;
}

}  // namespace weyllab
