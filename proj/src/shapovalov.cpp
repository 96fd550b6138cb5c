#include "weyllab/shapovalov.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <tuple>

#include "weyllab/errors.hpp"
#include "weyllab/linalg.hpp"
#include "weyllab/serialize.hpp"
#include "weyllab/weylgroup.hpp"

namespace weyllab {

namespace {

void require_affine_sl2(const RootDatum& rd) {
  if (rd.family() != Family::A || rd.rank() != 1)
    throw UnsupportedType("Shapovalov elements are implemented for A1 tilde only, got " + rd.name());
}

void require_real_positive(const RootDatum& rd, const RootElement& gamma) {
  if (rd.classify(gamma) != RootKind::Real || !rd.is_positive_root(gamma))
    throw NotRealRoot(rd.format_root(gamma, true) + " is not a positive real root");
}

int simple_index(const RootDatum& rd, const RootElement& gamma) {
  for (int i = 0; i < rd.size(); ++i)
    if (gamma == rd.simple_root(i)) return i;
  return -1;
}

int lowering_code(int k) { return pack(k == 0 ? LoopGenerator::E(-1) : LoopGenerator::F(0)); }

// sum g_i (h_i + 1) - D with g the coroot coefficients.
HPoly shifted_coroot(const RootDatum& rd, const RootElement& gamma) {
  auto g = rd.coroot_coeffs(gamma);
  HPoly p;
  for (int i = 0; i < rd.size(); ++i) p += (HPoly::variable(i) + HPoly(1)) * Rational(g[static_cast<std::size_t>(i)]);
  return p;
}

// Value of h_var forced by h_gamma + rho(h_gamma) = D + s, with s the variable in slot `s_var`
// (or zero if s_var < 0).
HPoly solve_for(const RootDatum& rd, const RootElement& gamma, int D, int var, int s_var) {
  auto g = rd.coroot_coeffs(gamma);
  long gv = g[static_cast<std::size_t>(var)];
  if (gv == 0) throw NotEtaGood("coroot of " + rd.format_root(gamma, true) + " has no h_" + std::to_string(var));
  HPoly rest = HPoly(Rational(D));
  if (s_var >= 0) rest += HPoly::variable(s_var);
  for (int i = 0; i < rd.size(); ++i) {
    long gi = g[static_cast<std::size_t>(i)];
    rest -= HPoly(Rational(gi));
    if (i != var) rest -= HPoly::variable(i) * Rational(gi);
  }
  return rest * frac(1, gv);
}

struct MemoKey {
  RootElement gamma;
  int D;
  int method;
  int first;
  auto operator<=>(const MemoKey&) const = default;
};

std::mutex memo_mutex;
std::map<MemoKey, UEAElement>& memo() {
  static std::map<MemoKey, UEAElement> m;
  return m;
}

UEAElement build(const RootDatum& rd, const RootElement& gamma, int D, const ShapovalovOptions& opt);

UEAElement interpolate_step(const RootDatum& rd, const RootElement& gamma, int D, int k, const UEAElement& zb,
                            long b, const ShapovalovOptions& opt) {
  auto g = rd.coroot_coeffs(gamma);
  int j = 1 - k;
  long gk = g[static_cast<std::size_t>(k)], gj = g[static_cast<std::size_t>(j)];
  int fk = lowering_code(k);
  PbwOrder order = simple_last_order(k);
  UEAElement zb_order = reorder(zb, order);
  UEAElement f = UEAElement::generator(unpack(fk), order);

  long deg = static_cast<long>(D) * rd.height(gamma);
  long count = deg + 2;
  std::vector<Rational> xs;
  std::map<PbwMonomial, std::vector<Rational>> values;
  for (long s = 0; s < count; ++s) {
    long q = opt.first_sample + s;
    std::vector<Rational> chi(2), nu(2);
    chi[static_cast<std::size_t>(k)] = Rational(-q - 1);
    chi[static_cast<std::size_t>(j)] = frac(D + gk * q, gj) - 1;
    for (int i = 0; i < 2; ++i) nu[static_cast<std::size_t>(i)] = chi[static_cast<std::size_t>(i)] + Rational(q * rd.cartan(i, k));
    UEAElement zb_nu = substitute(zb_order, {nu[0], nu[1], Rational(0)});
    UEAElement rhs = multiply(power(f, static_cast<int>(q + D * b)), zb_nu);
    UEAElement quotient(order);
    for (const auto& [m, c] : rhs.terms()) {
      if (!m.e.empty() || m.f.empty() || m.f.back().gen != fk || m.f.back().exp < q)
        throw ConstructionError("right division by f_" + std::to_string(k) + "^" + std::to_string(q) + " failed");
      PbwMonomial r = m;
      r.f.back().exp -= static_cast<int>(q);
      if (r.f.back().exp == 0) r.f.pop_back();
      quotient.add(r, c);
    }
    UEAElement z_chi = reorder(quotient, PbwOrder::Canonical);
    for (auto& [m, v] : values) v.push_back(z_chi.coefficient(m).constant_term());
    for (const auto& [m, c] : z_chi.terms())
      if (!values.count(m)) {
        std::vector<Rational> v(xs.size(), Rational(0));
        v.push_back(c.constant_term());
        values.emplace(m, std::move(v));
      }
    xs.push_back(Rational(q));
  }

  std::size_t fit = static_cast<std::size_t>(deg);
  std::vector<Rational> fit_x(xs.begin(), xs.begin() + static_cast<long>(fit));
  HPoly q_of_h = -HPoly::variable(k) - HPoly(1);
  UEAElement out(PbwOrder::Canonical);
  for (const auto& [m, v] : values) {
    std::vector<HPoly> ys;
    for (std::size_t t = 0; t < fit; ++t) ys.emplace_back(v[t]);
    HPoly c = interpolate(fit_x, ys, k);
    for (std::size_t t = fit; t < xs.size(); ++t) {
      std::vector<Rational> at(2, Rational(0));
      at[static_cast<std::size_t>(k)] = xs[t];
      if (c.evaluate(at) != v[t]) throw ConstructionError("sampled coefficients exceed the degree bound");
    }
    out.add(m, c.substitute(k, q_of_h));
  }
  return out;
}

UEAElement substitute_step(const RootDatum& rd, const RootElement& gamma, int D, int k, const UEAElement& zb, long b) {
  int fk = lowering_code(k);
  PbwOrder order = simple_last_order(k);
  long db = D * b;
  // Simultaneous h_i -> h_i - a_ik (h_k + 1), routed through a spare variable slot.
  const int spare = HPoly::kMaxVars - 1;
  auto shift = [&](const HPoly& p) {
    HPoly x = HPoly::variable(spare);
    HPoly r = p;
    for (int i = 0; i < rd.size(); ++i) {
      HPoly base = i == k ? x : HPoly::variable(i);
      r = r.substitute(i, base - (x + HPoly(1)) * Rational(rd.cartan(i, k)));
    }
    return r.substitute(spare, HPoly::variable(k));
  };
  HPoly m_of_h = HPoly(Rational(db - 1)) - HPoly::variable(k);
  UEAElement out(order);
  std::map<std::pair<Word, int>, HPoly> overflow;
  for (const auto& [mono, c] : zb.terms()) {
    long deg = 0;
    for (const auto& l : mono.f) deg += l.exp;
    Rational omega_sign = root_vector_coefficient(mono, 1);
    HPoly p = shift(c) * omega_sign;
    for (const auto& [key, cpoly] : c_polynomials(mono.f, k, static_cast<int>(deg + 2))) {
      const auto& [pi, i] = key;
      HPoly coeff = cpoly.substitute(0, m_of_h) * p;
      if (i > db) {
        overflow[key] += coeff;
        continue;
      }
      Word w = pi;
      if (db - i > 0) w.push_back({fk, static_cast<int>(db - i)});
      PbwMonomial target{w, {}};
      out.add(target, coeff * root_vector_coefficient(PbwMonomial{pi, {}}, 1));
    }
  }
  // Z_beta is only determined modulo its hyperplane, so these cancel on the hyperplane of gamma
  // rather than identically.
  int var = rd.coroot_coeffs(gamma)[0] != 0 ? 0 : 1;
  HPoly value = solve_for(rd, gamma, D, var, -1);
  for (const auto& [key, c] : overflow)
    if (!c.substitute(var, value).is_zero())
      throw ConstructionError("substitution leaves a term not divisible by f_k^q");
  return reorder(out, PbwOrder::Canonical);
}

UEAElement build(const RootDatum& rd, const RootElement& gamma, int D, const ShapovalovOptions& opt) {
  MemoKey key{gamma, D, static_cast<int>(opt.method), opt.first_sample};
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo().find(key);
    if (it != memo().end()) return it->second;
  }
  UEAElement result(PbwOrder::Canonical);
  int eta = simple_index(rd, gamma);
  if (eta >= 0) {
    result = power(UEAElement::lowering(gamma), D);
  } else {
    auto path = gamma_path(rd, gamma);
    int k = path[1].reflection;
    long b = rd.root_on_coroots(gamma)[static_cast<std::size_t>(k)];
    UEAElement zb = build(rd, path[1].root, D, opt);
    result = opt.method == ShapovalovMethod::Interpolate ? interpolate_step(rd, gamma, D, k, zb, b, opt)
                                                          : substitute_step(rd, gamma, D, k, zb, b);
  }
  if (opt.method == ShapovalovMethod::Substitute && !result.is_integral())
    throw ConstructionError("non-integral Shapovalov element for " + rd.format_root(gamma, true));
  std::lock_guard<std::mutex> lock(memo_mutex);
  memo().emplace(key, result);
  return result;
}

}  // namespace

std::vector<PathStep> gamma_path(const RootDatum& rd, const RootElement& gamma) {
  require_real_positive(rd, gamma);
  std::vector<PathStep> path{{gamma, -1}};
  RootElement cur = gamma;
  while (simple_index(rd, cur) < 0) {
    auto pairs = rd.root_on_coroots(cur);
    int k = -1;
    for (int i = 0; i < rd.size(); ++i)
      if (pairs[static_cast<std::size_t>(i)] > 0) {
        k = i;
        break;
      }
    if (k < 0) throw InternalDataError("no descending reflection for " + rd.format_root(cur, true));
    cur[static_cast<std::size_t>(k)] -= pairs[static_cast<std::size_t>(k)];
    path.push_back({cur, k});
  }
  return path;
}

ShapovalovElement integral_shapovalov(const RootDatum& rd, const RootElement& gamma, int D,
                                      const ShapovalovOptions& options) {
  require_affine_sl2(rd);
  require_real_positive(rd, gamma);
  if (D < 1) throw HypothesisError("D must be positive");
  if (static_cast<long>(D) * rd.height(gamma) > options.max_size)
    throw BudgetExceeded("D * ht(gamma) = " + std::to_string(static_cast<long>(D) * rd.height(gamma)) +
                         " exceeds the limit " + std::to_string(options.max_size));
  ShapovalovElement z;
  z.element = build(rd, gamma, D, options);
  z.gamma = gamma;
  z.D = D;
  if (options.method == ShapovalovMethod::Interpolate) {
    // Compare leading terms on the hyperplane only; the representative is univariate.
    ShapovalovElement reduced = z;
    reduced.element = reduce_on_hyperplane(rd, z.element, gamma, D, rd.coroot_coeffs(gamma)[0] != 0 ? 0 : 1);
    if (!leading_term_ok(reduced)) throw ConstructionError("unexpected leading term in " + z.element.str());
    return z;
  }
  if (!leading_term_ok(z)) throw ConstructionError("unexpected leading term in " + z.element.str());
  return z;
}

HPoly hyperplane_poly(const RootDatum& rd, const RootElement& gamma, int D) {
  return shifted_coroot(rd, gamma) - HPoly(Rational(D));
}

UEAElement reduce_on_hyperplane(const RootDatum& rd, const UEAElement& u, const RootElement& gamma, int D, int var) {
  HPoly value = solve_for(rd, gamma, D, var, -1);
  return map_coefficients(u, [&](const HPoly& p) { return p.substitute(var, value); });
}

ShapovalovElement eta_avoiding(const RootDatum& rd, const ShapovalovElement& z, int eta) {
  require_affine_sl2(rd);
  if (eta < 0 || eta >= rd.size()) throw HypothesisError("eta out of range");
  if (z.avoided) throw HypothesisError("element already avoids h_" + std::to_string(*z.avoided));
  auto g = rd.coroot_coeffs(z.gamma);
  long gv = g[static_cast<std::size_t>(eta)];
  if (gv == 0) throw NotEtaGood("h_" + std::to_string(eta) + " does not occur in the coroot");
  int n = 0;
  for (const auto& [m, c] : z.element.terms()) n = std::max(n, c.degree(eta));
  Integer scale = 1;
  for (int i = 0; i < n; ++i) scale *= gv;
  HPoly value = solve_for(rd, z.gamma, z.D, eta, -1);
  ShapovalovElement out = z;
  out.element = map_coefficients(z.element, [&](const HPoly& p) { return p.substitute(eta, value) * Rational(scale); });
  if (!out.element.is_integral()) throw ConstructionError("eta-avoiding element is not integral");
  out.avoided = eta;
  out.leading_scale = scale;
  return out;
}

bool leading_term_ok(const ShapovalovElement& z) {
  Word lead;
  long n1 = z.D * z.gamma[1], n0 = z.D * z.gamma[0];
  if (n1 > 0) lead.push_back({lowering_code(1), static_cast<int>(n1)});
  if (n0 > 0) lead.push_back({lowering_code(0), static_cast<int>(n0)});
  PbwMonomial m{lead, {}};
  if (z.element.coefficient(m) != HPoly(Rational(z.leading_scale))) return false;
  for (const auto& [mono, c] : z.element.terms()) {
    if (!mono.e.empty()) return false;
    if (c.degree(kVarD) > 0) return false;
  }
  return true;
}

std::vector<std::pair<Word, Rational>> divided_power_pbw_coordinates(const UEAElement& u) {
  std::vector<std::pair<Word, Rational>> out;
  UEAElement c = reorder(u, PbwOrder::Canonical);
  for (const auto& [m, p] : c.terms()) {
    if (!m.e.empty() || !p.is_constant()) throw HypothesisError("expected an evaluated element of U(n^-)");
    out.emplace_back(m.f, divided_power_coefficient(m, p.constant_term()));
  }
  return out;
}

SingularReport verify_singular(const RootDatum& rd, const ShapovalovElement& z, int sample_count) {
  require_affine_sl2(rd);
  auto g = rd.coroot_coeffs(z.gamma);
  long g0 = g[0], g1 = g[1];
  // g0 x0 + g1 x1 = D with x_i = chi(h_i) + 1.
  long a = g0, b = g1, x = 1, y = 0, u = 0, v = 1;
  while (b != 0) {
    long t = a / b;
    std::tie(a, b) = std::make_pair(b, a - t * b);
    std::tie(x, u) = std::make_pair(u, x - t * u);
    std::tie(y, v) = std::make_pair(v, y - t * v);
  }
  if (z.D % a != 0) throw HypothesisError("hyperplane has no integral points");
  long x0 = x * (z.D / a), x1 = y * (z.D / a);
  long s0 = g1 / a, s1 = -g0 / a;

  std::vector<UEAElement> checks;
  for (int i = 0; i < rd.size(); ++i)
    checks.push_back(project_bminus(multiply(UEAElement::raising(rd.simple_root(i)), z.element)));

  SingularReport report;
  report.passed = true;
  for (int s = 0; s < sample_count; ++s) {
    long t = s - sample_count / 2;
    Weight chi{{x0 + t * s0 - 1, x1 + t * s1 - 1}, 0};
    SingularSample sample{chi, true, true};
    for (const auto& c : checks)
      if (!evaluate(c, chi).is_zero()) sample.annihilated = false;
    for (const auto& [w, c] : divided_power_pbw_coordinates(evaluate(z.element, chi)))
      if (!is_integer(c)) sample.integral = false;
    report.passed = report.passed && sample.annihilated && sample.integral;
    report.samples.push_back(sample);
  }
  return report;
}

HPoly factor_product(const RootDatum& rd, const RootElement& gamma, int D, FactorExponents exponents) {
  auto path = gamma_path(rd, gamma);
  std::vector<RootElement> eps;
  std::vector<long> bs;
  for (std::size_t i = 1; i < path.size(); ++i) {
    int k = path[i].reflection;
    eps.push_back(rd.simple_root(k));
    bs.push_back(rd.root_on_coroots(path[i - 1].root)[static_cast<std::size_t>(k)]);
  }
  eps.push_back(path.back().root);
  bs.push_back(1);
  HPoly product(1);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    RootElement beta = eps[i];
    for (std::size_t j = i; j-- > 0;) beta = reflect_root(rd, beta, eps[j]);
    HPoly h = shifted_coroot(rd, beta);
    long top = D * bs[i];
    if (exponents == FactorExponents::WeightBound) {
      top = 0;
      for (;;) {
        bool fits = true;
        for (std::size_t c = 0; c < beta.size(); ++c)
          if ((top + 1) * beta[c] > D * gamma[c]) fits = false;
        if (!fits) break;
        ++top;
      }
    }
    for (long j = 1; j <= top; ++j) product *= h - HPoly(Rational(j));
  }
  return product;
}

namespace {

std::vector<HPoly::Key> monomials_up_to(int vars, int degree) {
  std::vector<HPoly::Key> out;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) {
      std::vector<int> e(static_cast<std::size_t>(vars), 0);
      e[0] = a;
      if (vars > 1) e[1] = b;
      out.push_back(HPoly::make_key(e));
      if (vars == 1) break;
    }
  return out;
}

}  // namespace

std::optional<UEAElement> factor_normal_form(const RootDatum& rd, const ShapovalovElement& z) {
  return factor_normal_form(rd, z, factor_product(rd, z.gamma, z.D));
}

std::optional<UEAElement> factor_normal_form(const RootDatum& rd, const ShapovalovElement& z, const HPoly& pi) {
  require_affine_sl2(rd);
  HPoly s = hyperplane_poly(rd, z.gamma, z.D);
  auto words = negative_monomials(z.D * z.gamma[0], z.D * z.gamma[1]);
  std::vector<UEAElement> taus;
  std::vector<UEAElement> fs;
  for (const Word& w : words) {
    UEAElement u(PbwOrder::Canonical);
    u.add(PbwMonomial{w, {}}, HPoly(1));
    taus.push_back(tau(u));
    fs.push_back(u);
  }
  std::size_t n = words.size();
  // gram[u][w] = P_h(tau(F_u) F_w)
  std::vector<std::vector<HPoly>> gram(n, std::vector<HPoly>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w = 0; w < n; ++w) gram[u][w] = project_h(multiply(taus[u], fs[w]));

  int wdeg = std::max(0, static_cast<int>(z.D * rd.height(z.gamma)) - 2);
  auto hmons = monomials_up_to(2, wdeg);
  // Unknowns: y[w][a] (W = sum_w F_w sum_a y h^a) followed by c[u].
  std::size_t nw = n * hmons.size();
  std::size_t unknowns = nw + n;
  // Equation rows: coefficient of each h-monomial in
  // sum_w gram[u][w] (Z_w - s W_w) - c_u pi = 0.
  RatMatrix rows;
  RatVector rhs;
  for (std::size_t u = 0; u < n; ++u) {
    std::map<HPoly::Key, RatVector> eq;
    auto row_for = [&](HPoly::Key k) -> RatVector& {
      auto it = eq.find(k);
      if (it == eq.end()) it = eq.emplace(k, RatVector(unknowns + 1, Rational(0))).first;
      return it->second;
    };
    HPoly known;
    for (std::size_t w = 0; w < n; ++w) known += gram[u][w] * z.element.coefficient(PbwMonomial{words[w], {}});
    for (const auto& [k, c] : known.terms()) row_for(k)[unknowns] -= c;
    for (std::size_t w = 0; w < n; ++w) {
      HPoly gs = gram[u][w] * s;
      for (std::size_t a = 0; a < hmons.size(); ++a) {
        HPoly term = gs * HPoly::monomial({HPoly::exponent(hmons[a], 0), HPoly::exponent(hmons[a], 1)}, 1);
        for (const auto& [k, c] : term.terms()) row_for(k)[w * hmons.size() + a] -= c;
      }
    }
    for (const auto& [k, c] : pi.terms()) row_for(k)[nw + u] -= c;
    for (auto& [k, r] : eq) {
      rhs.push_back(r[unknowns]);
      r.pop_back();
      rows.push_back(r);
    }
  }
  auto sol = solve_any(rows, rhs);
  if (!sol) return std::nullopt;
  UEAElement out = z.element;
  for (std::size_t w = 0; w < n; ++w) {
    HPoly coeff;
    for (std::size_t a = 0; a < hmons.size(); ++a)
      coeff += HPoly::monomial({HPoly::exponent(hmons[a], 0), HPoly::exponent(hmons[a], 1)},
                               (*sol)[w * hmons.size() + a]);
    UEAElement t(PbwOrder::Canonical);
    t.add(PbwMonomial{words[w], {}}, coeff * s);
    out -= t;
  }
  return out;
}

FactorReport factor_formula_check(const RootDatum& rd, const ShapovalovElement& z, bool search_representatives) {
  require_affine_sl2(rd);
  FactorReport report;
  report.predicted = factor_product(rd, z.gamma, z.D);
  report.passed = true;
  bool any_nonzero = false;
  for (const Word& w : negative_monomials(z.D * z.gamma[0], z.D * z.gamma[1])) {
    UEAElement u(PbwOrder::Canonical);
    u.add(PbwMonomial{w, {}}, HPoly(1));
    FactorEntry e;
    e.u = w;
    e.value = project_h(multiply(tau(u), z.element));
    auto q = e.value.exact_div(report.predicted);
    e.divisible = q.has_value();
    e.scalar_multiple = e.divisible && q->is_constant();
    if (!e.value.is_zero()) any_nonzero = true;
    report.passed = report.passed && e.scalar_multiple;
    report.entries.push_back(std::move(e));
  }
  report.passed = report.passed && any_nonzero;
  report.weight_bound_product = factor_product(rd, z.gamma, z.D, FactorExponents::WeightBound);
  if (!report.passed && search_representatives) {
    report.normal_form = factor_normal_form(rd, z);
    report.weight_bound_representative =
        report.weight_bound_product == report.predicted ? report.normal_form.has_value()
                                                        : factor_normal_form(rd, z, report.weight_bound_product).has_value();
  } else if (report.passed) {
    report.weight_bound_representative = report.weight_bound_product == report.predicted;
  }
  return report;
}

std::vector<UEAElement> bminus_binomial_expansion(const RootDatum& rd, const ShapovalovElement& z_eta, int i, int n) {
  require_affine_sl2(rd);
  if (!z_eta.avoided) throw HypothesisError("expected an eta-avoiding element");
  int eta = *z_eta.avoided;
  UEAElement e = simple_power(i, n, true) * Rational(Integer(1), factorial(n));
  UEAElement x = project_bminus(multiply(e, z_eta.element));
  HPoly value = solve_for(rd, z_eta.gamma, z_eta.D, eta, eta);
  // Coefficients in (s, h_{other}) with s stored in slot eta.
  std::vector<UEAElement> out;
  std::map<PbwMonomial, HPoly> in_s;
  int top = 0;
  for (const auto& [m, c] : x.terms()) {
    HPoly p = c.substitute(eta, value);
    in_s.emplace(m, p);
    top = std::max(top, p.degree(eta));
  }
  for (int m = 0; m <= top; ++m) {
    UEAElement um(PbwOrder::Canonical);
    for (const auto& [mono, p] : in_s) {
      HPoly acc;
      for (int j = 0; j <= m; ++j) {
        std::vector<std::optional<Rational>> at(static_cast<std::size_t>(kNumVars));
        at[static_cast<std::size_t>(eta)] = Rational(j);
        Integer sgn = ((m - j) % 2 == 0) ? 1 : -1;
        acc += p.partial_evaluate(at) * Rational(sgn * binomial(m, j));
      }
      um.add(mono, acc);
    }
    out.push_back(um);
  }
  return out;
}

std::optional<ShapovalovCache> ShapovalovCache::from_environment() {
  const char* dir = std::getenv("WEYLLAB_CACHE");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return ShapovalovCache(dir);
}

std::filesystem::path ShapovalovCache::path_for(const RootDatum& rd, const RootElement& gamma, int D,
                                                std::optional<int> eta) const {
  std::string g;
  for (long c : gamma) g += (g.empty() ? "" : "-") + std::to_string(c);
  std::string name = "shap_" + rd.name() + "_" + g + "_" + std::to_string(D) + "_" +
                     (eta ? std::to_string(*eta) : std::string("none")) + ".json";
  return dir_ / name;
}

void ShapovalovCache::store(const RootDatum& rd, const ShapovalovElement& z) const {
  nlohmann::json j = {{"type", rd.name()},
                      {"gamma", z.gamma},
                      {"D", z.D},
                      {"eta", z.avoided ? nlohmann::json(*z.avoided) : nlohmann::json(nullptr)},
                      {"order", order_key(z.element.order())},
                      {"engine", kEngineVersion},
                      {"leading_scale", z.leading_scale.get_str()},
                      {"element", to_json(z.element)}};
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  auto path = path_for(rd, z.gamma, z.D, z.avoided);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << j.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CacheError("cannot move cache file into place: " + ec.message());
}

std::optional<ShapovalovElement> ShapovalovCache::load(const RootDatum& rd, const RootElement& gamma, int D,
                                                       std::optional<int> eta) const {
  auto path = path_for(rd, gamma, D, eta);
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CacheError("corrupt cache file " + path.string() + ": " + e.what());
  }
  try {
    if (j.at("engine").get<std::string>() != kEngineVersion)
      throw CacheError("cache " + path.string() + " was written by engine " + j.at("engine").get<std::string>());
    if (j.at("order").get<std::string>() != order_key(PbwOrder::Canonical))
      throw CacheError("cache " + path.string() + " uses PBW order " + j.at("order").get<std::string>());
    if (j.at("type").get<std::string>() != rd.name() || j.at("gamma").get<RootElement>() != gamma ||
        j.at("D").get<int>() != D)
      throw CacheError("cache " + path.string() + " does not match the request");
    ShapovalovElement z;
    z.gamma = gamma;
    z.D = D;
    if (!j.at("eta").is_null()) z.avoided = j.at("eta").get<int>();
    if (z.avoided != eta) throw CacheError("cache " + path.string() + " has a different eta");
    z.leading_scale = Integer(j.at("leading_scale").get<std::string>());
    z.element = uea_from_json(j.at("element"));
    return z;
  } catch (const nlohmann::json::exception& e) {
    throw CacheError("malformed cache file " + path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw CacheError("malformed cache file " + path.string() + ": " + e.what());
  }
}

}  // namespace weyllab
