#include "weyllab/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "weyllab/errors.hpp"
#include "weyllab/linalg.hpp"

namespace weyllab {

namespace {

using IntMat = std::vector<std::vector<int>>;

// Finite Cartan matrix in Bourbaki numbering, 0-based (entry [i][j] = alpha_j(h_i)).
IntMat finite_cartan(Family family, int r) {
  IntMat a(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  auto link = [&](int i, int j) {  // 1-based simple edge
    a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = -1;
    a[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = -1;
  };
  auto set = [&](int i, int j, int v) {
    a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v;
  };
  for (int i = 0; i < r; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  switch (family) {
    case Family::A:
      for (int i = 1; i < r; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 1; i < r - 1; ++i) link(i, i + 1);
      set(r - 1, r, -1);
      set(r, r - 1, -2);
      break;
    case Family::C:
      for (int i = 1; i < r - 1; ++i) link(i, i + 1);
      set(r - 1, r, -2);
      set(r, r - 1, -1);
      break;
    case Family::D:
      for (int i = 1; i < r - 1; ++i) link(i, i + 1);
      link(r - 2, r);
      break;
    case Family::E:
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < r; ++i) link(i, i + 1);
      break;
    case Family::F:
      link(1, 2);
      set(2, 3, -1);
      set(3, 2, -2);
      link(3, 4);
      break;
    case Family::G:
      // alpha_1 long, alpha_2 short.
      set(1, 2, -1);
      set(2, 1, -3);
      break;
  }
  return a;
}

struct Expected {
  long h, hv;
};

Expected expected_numbers(Family f, long r) {
  switch (f) {
    case Family::A: return {r + 1, r + 1};
    case Family::B: return {2 * r, 2 * r - 1};
    case Family::C: return {2 * r, r + 1};
    case Family::D: return {2 * r - 2, 2 * r - 2};
    case Family::E: return r == 6 ? Expected{12, 12} : r == 7 ? Expected{18, 18} : Expected{30, 30};
    case Family::F: return {12, 9};
    case Family::G: return {6, 4};
  }
  return {0, 0};
}

void check_supported(Family f, int r) {
  bool ok = false;
  switch (f) {
    case Family::A: ok = r >= 1; break;
    case Family::B: ok = r >= 3; break;
    case Family::C: ok = r >= 2; break;
    case Family::D: ok = r >= 4; break;
    case Family::E: ok = r >= 6 && r <= 8; break;
    case Family::F: ok = r == 4; break;
    case Family::G: ok = r == 2; break;
  }
  if (!ok) throw UnsupportedType("unsupported affine type");
  if (r > 32) throw UnsupportedType("rank too large");
}

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

}  // namespace

std::shared_ptr<const RootDatum> RootDatum::load(Family family, int rank) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const RootDatum>> cache;
  check_supported(family, rank);
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(family), rank);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<RootDatum> d(new RootDatum());
  d->build(family, rank);
  cache.emplace(key, d);
  return d;
}

std::shared_ptr<const RootDatum> RootDatum::load(const std::string& name) {
  std::string s;
  for (char c : name)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '~' && c != '_') s.push_back(c);
  if (s.size() < 2) throw UnsupportedType("bad type name '" + name + "'");
  char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  if (letter < 'A' || letter > 'G') throw UnsupportedType("bad type name '" + name + "'");
  std::string digits = s.substr(1);
  if (digits.size() >= 3 && digits.substr(digits.size() - 3) == "(1)") digits.resize(digits.size() - 3);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw UnsupportedType("bad type name '" + name + "'");
  if (digits.size() > 3) throw UnsupportedType("rank too large");
  return load(static_cast<Family>(letter - 'A'), std::stoi(digits));
}

std::string RootDatum::name() const { return std::string(1, family_letter(family_)) + std::to_string(rank_); }

void RootDatum::build(Family family, int r) {
  family_ = family;
  rank_ = r;
  IntMat fin = finite_cartan(family, r);
  std::size_t n = static_cast<std::size_t>(r);

  // Symmetrizer from the Dynkin graph, then normalize long roots to length 2.
  std::vector<Rational> dsym(n, Rational(0));
  dsym[0] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (dsym[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (fin[i][j] != 0 && i != j && dsym[j] == 0) {
          dsym[j] = dsym[i] * fin[i][j] / fin[j][i];
          changed = true;
        }
    }
  }
  Rational dmax = *std::max_element(dsym.begin(), dsym.end());
  std::vector<Rational> fin_norm(n);
  for (std::size_t i = 0; i < n; ++i) fin_norm[i] = 2 * dsym[i] / dmax;

  // Positive roots by height.
  std::set<std::vector<long>> known;
  std::vector<std::vector<long>> roots, layer;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    layer.push_back(e);
  }
  while (!layer.empty()) {
    for (auto& b : layer) {
      known.insert(b);
      roots.push_back(b);
    }
    std::set<std::vector<long>> next;
    for (auto& b : layer) {
      for (std::size_t i = 0; i < n; ++i) {
        long pair = 0;
        for (std::size_t j = 0; j < n; ++j) pair += b[j] * fin[i][j];
        long p = 0;
        std::vector<long> c = b;
        while (true) {
          c[i] -= 1;
          if (!known.count(c)) break;
          ++p;
        }
        long q = p - pair;
        if (q > 0) {
          std::vector<long> up = b;
          up[i] += 1;
          next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
  }
  std::vector<long> theta = roots.back();
  long best = 0;
  for (auto& b : roots) {
    long ht = 0;
    for (long x : b) ht += x;
    if (ht > best) {
      best = ht;
      theta = b;
    }
  }

  std::size_t m = n + 1;
  cartan_.assign(m, std::vector<int>(m, 0));
  cartan_[0][0] = 2;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cartan_[i + 1][j + 1] = fin[i][j];
  for (std::size_t i = 0; i < n; ++i) {
    long th = 0;
    for (std::size_t j = 0; j < n; ++j) th += theta[j] * fin[i][j];
    cartan_[i + 1][0] = static_cast<int>(-th);
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += theta[j] * fin_norm[j] / 2 * fin[j][i];
    if (!is_integer(s)) throw InternalDataError("non-integral affine Cartan entry");
    cartan_[0][i + 1] = static_cast<int>(-s.get_num().get_si());
  }
  marks_.assign(m, 1);
  comarks_.assign(m, 1);
  norms_.assign(m, Rational(2));
  for (std::size_t i = 0; i < n; ++i) {
    marks_[i + 1] = theta[i];
    Rational c = theta[i] * fin_norm[i] / 2;
    if (!is_integer(c)) throw InternalDataError("non-integral comark");
    comarks_[i + 1] = c.get_num().get_si();
    norms_[i + 1] = fin_norm[i];
  }
  for (std::size_t i = 0; i < m; ++i) {
    long row = 0, col = 0;
    for (std::size_t j = 0; j < m; ++j) {
      row += cartan_[i][j] * marks_[j];
      col += comarks_[j] * cartan_[j][i];
    }
    if (row != 0 || col != 0) throw InternalDataError("marks/comarks are not null vectors");
  }
  coxeter_ = 0;
  dual_coxeter_ = 0;
  for (std::size_t i = 0; i < m; ++i) {
    coxeter_ += marks_[i];
    dual_coxeter_ += comarks_[i];
  }
  Expected ex = expected_numbers(family, r);
  if (ex.h != coxeter_ || ex.hv != dual_coxeter_)
    throw InternalDataError("Coxeter numbers disagree with the known values for " + name());

  finite_pos_.clear();
  std::sort(roots.begin(), roots.end(), [](const std::vector<long>& a, const std::vector<long>& b) {
    long ha = 0, hb = 0;
    for (long x : a) ha += x;
    for (long x : b) hb += x;
    return ha != hb ? ha < hb : a > b;
  });
  for (auto& b : roots) {
    RootElement e(m, 0);
    for (std::size_t i = 0; i < n; ++i) e[i + 1] = b[i];
    finite_pos_.push_back(e);
  }
  theta_.assign(m, 0);
  for (std::size_t i = 0; i < n; ++i) theta_[i + 1] = theta[i];
}

RootElement RootDatum::simple_root(int i) const {
  RootElement e(static_cast<std::size_t>(size()), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

Rational RootDatum::inner(const RootElement& a, const RootElement& b) const {
  Rational s = 0;
  for (int i = 0; i < size(); ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < size(); ++j) {
      if (b[static_cast<std::size_t>(j)] == 0) continue;
      s += Rational(a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] * cartan(i, j)) *
           norms_[static_cast<std::size_t>(i)] / 2;
    }
  }
  return s;
}

long RootDatum::height(const RootElement& a) const {
  long h = 0;
  for (long x : a) h += x;
  return h;
}

long RootDatum::delta_multiple(const RootElement& a) const {
  if (a.size() != marks_.size()) return 0;
  long k = a[0];
  if (k == 0) return 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != k * marks_[i]) return 0;
  return k;
}

RootKind RootDatum::classify(const RootElement& a) const {
  if (a.size() != marks_.size()) return RootKind::NotARoot;
  if (delta_multiple(a) != 0) return RootKind::Imaginary;
  long k = a[0];
  RootElement alpha = a;
  for (std::size_t i = 0; i < a.size(); ++i) alpha[i] -= k * marks_[i];
  RootElement neg = alpha;
  for (auto& x : neg) x = -x;
  for (const auto& b : finite_pos_)
    if (b == alpha || b == neg) return RootKind::Real;
  return RootKind::NotARoot;
}

bool RootDatum::is_positive_root(const RootElement& a) const {
  if (classify(a) == RootKind::NotARoot) return false;
  return std::all_of(a.begin(), a.end(), [](long x) { return x >= 0; });
}

std::vector<long> RootDatum::coroot_coeffs(const RootElement& gamma) const {
  RootKind kind = classify(gamma);
  if (kind == RootKind::NotARoot) throw NotRealRoot("not a root: " + format_root(gamma, true));
  std::vector<long> g(static_cast<std::size_t>(size()), 0);
  if (kind == RootKind::Imaginary) {
    long k = delta_multiple(gamma);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = k * comarks_[i];
    return g;
  }
  Rational len = inner(gamma, gamma);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Rational c = gamma[i] * norms_[i] / len;
    if (!is_integer(c)) throw InternalDataError("non-integral coroot coefficient");
    g[i] = c.get_num().get_si();
  }
  return g;
}

long RootDatum::evaluate_coroot(const Weight& lambda, const RootElement& gamma) const {
  auto g = coroot_coeffs(gamma);
  long s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * lambda.h[i];
  return s;
}

long RootDatum::pairing(const Weight& lambda, const RootElement& gamma) const {
  if (classify(gamma) != RootKind::Real) throw NotRealRoot("pairing needs a real root: " + format_root(gamma, true));
  auto g = coroot_coeffs(gamma);
  long s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * (lambda.h[i] + 1);
  return s;
}

std::vector<long> RootDatum::root_on_coroots(const RootElement& a) const {
  std::vector<long> v(static_cast<std::size_t>(size()), 0);
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) v[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(j)] * cartan(i, j);
  return v;
}

Weight RootDatum::subtract_root(const Weight& lambda, const RootElement& gamma, long n) const {
  Weight w = lambda;
  auto v = root_on_coroots(gamma);
  for (std::size_t i = 0; i < v.size(); ++i) w.h[i] -= n * v[i];
  w.d -= n * gamma[0];
  return w;
}

bool RootDatum::weight_difference(const Weight& lambda, const Weight& mu, RootElement& beta) const {
  Rational dd = lambda.d - mu.d;
  if (!is_integer(dd)) return false;
  long b0 = dd.get_num().get_si();
  std::size_t n = static_cast<std::size_t>(rank_);
  RatMatrix a(n, RatVector(n));
  RatVector rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = cartan(static_cast<int>(i + 1), static_cast<int>(j + 1));
    rhs[i] = lambda.h[i + 1] - mu.h[i + 1] - b0 * cartan(static_cast<int>(i + 1), 0);
  }
  auto x = solve_unique(a, rhs);
  if (!x) return false;
  RootElement b(n + 1, 0);
  b[0] = b0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_integer((*x)[i])) return false;
    b[i + 1] = (*x)[i].get_num().get_si();
  }
  if (subtract_root(lambda, b) != mu) return false;
  beta = b;
  return true;
}

Weight RootDatum::rho() const {
  Weight w;
  w.h.assign(static_cast<std::size_t>(size()), 1);
  return w;
}

Weight RootDatum::fundamental(int i) const {
  Weight w;
  w.h.assign(static_cast<std::size_t>(size()), 0);
  w.h[static_cast<std::size_t>(i)] = 1;
  return w;
}

long RootDatum::level(const Weight& lambda) const {
  long s = 0;
  for (std::size_t i = 0; i < comarks_.size(); ++i) s += comarks_[i] * lambda.h[i];
  return s;
}

bool RootDatum::dominant(const Weight& lambda) const {
  return std::all_of(lambda.h.begin(), lambda.h.end(), [](long x) { return x >= 0; });
}

Weight RootDatum::plus(const Weight& a, const Weight& b) const {
  Weight w = a;
  for (std::size_t i = 0; i < w.h.size(); ++i) w.h[i] += b.h[i];
  w.d += b.d;
  return w;
}

Weight RootDatum::scaled(const Weight& a, long k) const {
  Weight w = a;
  for (auto& x : w.h) x *= k;
  w.d *= k;
  return w;
}

std::vector<RootElement> RootDatum::base_roots() const {
  std::vector<RootElement> out;
  for (const auto& a : finite_pos_) out.push_back(a);
  for (const auto& a : finite_pos_) {
    RootElement b = marks_;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] -= a[i];
    out.push_back(b);
  }
  return out;
}

bool RootDatum::is_base_root(const RootElement& a) const {
  for (const auto& b : base_roots())
    if (a == b) return true;
  return false;
}

std::vector<RootElement> RootDatum::positive_real_roots(long max_height) const {
  std::vector<RootElement> out;
  for (long k = 0; k * coxeter_ <= max_height + coxeter_; ++k) {
    for (const auto& a : finite_pos_)
      for (int sign : {1, -1}) {
        if (k == 0 && sign < 0) continue;
        RootElement b(a.size());
        for (std::size_t i = 0; i < b.size(); ++i) b[i] = sign * a[i] + k * marks_[i];
        if (height(b) <= max_height && height(b) > 0) out.push_back(b);
      }
  }
  std::sort(out.begin(), out.end(), [this](const RootElement& a, const RootElement& b) {
    long ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a < b;
  });
  return out;
}

namespace {

std::string coef_prefix(const Rational& c, bool first) {
  std::string s;
  Rational a = c;
  if (c < 0) {
    s = first ? "-" : "-";
    a = -c;
  } else if (!first) {
    s = "+";
  }
  if (a != 1) s += a.get_str();
  return s;
}

// Replace Unicode symbols by ASCII spellings and drop whitespace.
std::string normalize(const std::string& text) {
  static const std::vector<std::pair<std::string, std::string>> subs = {
      {"\xce\xb1", "a"},          // alpha
      {"\xcf\x96", "w"},          // varpi
      {"\xce\x9b", "w"},          // Lambda
      {"\xce\xb4", "delta"},      // delta
      {"\xe2\x88\x92", "-"},      // minus sign
      {"\xc2\xb7", "*"},          // middle dot
      {"\xe2\x82\x80", "0"}, {"\xe2\x82\x81", "1"}, {"\xe2\x82\x82", "2"}, {"\xe2\x82\x83", "3"},
      {"\xe2\x82\x84", "4"}, {"\xe2\x82\x85", "5"}, {"\xe2\x82\x86", "6"}, {"\xe2\x82\x87", "7"},
      {"\xe2\x82\x88", "8"}, {"\xe2\x82\x89", "9"},
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  for (const auto& [from, to] : subs) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
      s.replace(pos, from.size(), to);
      pos += to.size();
    }
  }
  return s;
}

struct Term {
  Rational coef;
  char symbol;  // 'a', 'w' or 'd'
  int index;
};

std::vector<Term> parse_terms(const std::string& text) {
  std::string s = normalize(text);
  std::vector<Term> out;
  std::size_t i = 0;
  if (s.empty()) throw ParseError("empty expression");
  while (i < s.size()) {
    Rational sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    std::string num;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) num.push_back(s[i++]);
    if (i < s.size() && s[i] == '*') ++i;
    std::string word;
    while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i++]))));
    if (i < s.size() && s[i] == '_') ++i;
    std::string idx;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) idx.push_back(s[i++]);
    Term t;
    t.coef = sign * (num.empty() ? Rational(1) : parse_rational(num));
    if (word == "a" || word == "alpha") {
      t.symbol = 'a';
    } else if (word == "w" || word == "omega" || word == "varpi" || word == "lambda") {
      t.symbol = 'w';
    } else if (word == "delta" || word == "d") {
      t.symbol = 'd';
    } else {
      throw ParseError("unknown symbol '" + word + "' in '" + text + "'");
    }
    if (t.symbol == 'd') {
      if (!idx.empty()) throw ParseError("delta takes no index in '" + text + "'");
      t.index = -1;
    } else {
      if (idx.empty()) throw ParseError("missing index in '" + text + "'");
      t.index = std::stoi(idx);
    }
    out.push_back(t);
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw ParseError("unexpected '" + std::string(1, s[i]) + "' in '" + text + "'");
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

long to_long(const Rational& q, const std::string& what) {
  if (!is_integer(q)) throw ParseError(what + " must be an integer");
  if (!q.get_num().fits_slong_p()) throw ParseError(what + " out of range");
  return q.get_num().get_si();
}

}  // namespace

std::string RootDatum::format_weight(const Weight& w, bool) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < w.h.size(); ++i) out << (i ? "," : "") << w.h[i];
  if (w.d != 0) out << ";" << w.d.get_str();
  return out.str();
}

std::string RootDatum::format_root(const RootElement& a, bool ascii) const {
  std::string s;
  const char* alpha = ascii ? "a" : "\xce\xb1";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    s += coef_prefix(Rational(a[i]), s.empty()) + alpha + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Weight RootDatum::parse_weight(const std::string& text) const {
  std::string s = normalize(text);
  Weight w;
  w.h.assign(static_cast<std::size_t>(size()), 0);
  bool numeric = !s.empty() && s.find_first_of("awdl") == std::string::npos;
  if (numeric) {
    auto halves = split(s, ';');
    if (halves.size() > 2) throw ParseError("bad weight '" + text + "'");
    auto parts = split(halves[0], ',');
    if (parts.size() != w.h.size())
      throw ParseError("weight '" + text + "' needs " + std::to_string(size()) + " entries");
    for (std::size_t i = 0; i < parts.size(); ++i) w.h[i] = to_long(parse_rational(parts[i]), "weight entry");
    if (halves.size() == 2) w.d = parse_rational(halves[1]);
    return w;
  }
  for (const auto& t : parse_terms(s)) {
    if (t.symbol == 'd') {
      w.d += t.coef;
    } else if (t.symbol == 'w') {
      if (t.index < 0 || t.index >= size()) throw ParseError("weight index out of range in '" + text + "'");
      w.h[static_cast<std::size_t>(t.index)] += to_long(t.coef, "weight coefficient");
    } else {
      if (t.index < 0 || t.index >= size()) throw ParseError("root index out of range in '" + text + "'");
      Weight x = subtract_root(w, simple_root(t.index), -to_long(t.coef, "root coefficient"));
      w = x;
    }
  }
  return w;
}

RootElement RootDatum::parse_root(const std::string& text) const {
  std::string s = normalize(text);
  RootElement a(static_cast<std::size_t>(size()), 0);
  if (!s.empty() && s.find_first_of("awdl") == std::string::npos) {
    auto parts = split(s, ',');
    if (parts.size() != a.size()) throw ParseError("root '" + text + "' needs " + std::to_string(size()) + " entries");
    for (std::size_t i = 0; i < parts.size(); ++i) a[i] = to_long(parse_rational(parts[i]), "root entry");
    return a;
  }
  for (const auto& t : parse_terms(s)) {
    long c = to_long(t.coef, "root coefficient");
    if (t.symbol == 'd') {
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * marks_[i];
    } else if (t.symbol == 'a') {
      if (t.index < 0 || t.index >= size()) throw ParseError("root index out of range in '" + text + "'");
      a[static_cast<std::size_t>(t.index)] += c;
    } else {
      throw ParseError("fundamental weight in root expression '" + text + "'");
    }
  }
  return a;
}

}  // namespace weyllab
