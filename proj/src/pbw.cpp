#include "weyllab/pbw.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <tuple>

#include "weyllab/errors.hpp"
#include "weyllab/linalg.hpp"

namespace weyllab {

namespace {

constexpr int kOffset = 1 << 16;
constexpr int kCentralCode = -1;

using Kind = LoopGenerator::Kind;

}  // namespace

int pack(const LoopGenerator& g) {
  if (g.kind == Kind::C) return kCentralCode;
  if (g.kind == Kind::D) return -2;
  return ((g.k + kOffset) << 2) | static_cast<int>(g.kind);
}

LoopGenerator unpack(int code) {
  if (code == kCentralCode) return LoopGenerator::central();
  if (code == -2) return LoopGenerator::scaling();
  return {static_cast<Kind>(code & 3), (code >> 2) - kOffset};
}

std::pair<long, long> LoopGenerator::root() const {
  switch (kind) {
    case Kind::E: return {k, k + 1};
    case Kind::F: return {k, k - 1};
    case Kind::H: return {k, k};
    default: return {0, 0};
  }
}

bool LoopGenerator::negative() const {
  switch (kind) {
    case Kind::E: return k <= -1;
    case Kind::F: return k <= 0;
    case Kind::H: return k <= -1;
    default: return false;
  }
}

bool LoopGenerator::positive() const {
  switch (kind) {
    case Kind::E: return k >= 0;
    case Kind::F: return k >= 1;
    case Kind::H: return k >= 1;
    default: return false;
  }
}

std::string LoopGenerator::id() const {
  switch (kind) {
    case Kind::E: return "E:" + std::to_string(k);
    case Kind::F: return "F:" + std::to_string(k);
    case Kind::H: return "H:" + std::to_string(k);
    case Kind::C: return "C";
    case Kind::D: return "D";
  }
  return "?";
}

LoopGenerator LoopGenerator::parse(const std::string& id) {
  if (id == "C") return central();
  if (id == "D") return scaling();
  if (id.size() < 3 || id[1] != ':') throw ParseError("bad generator id '" + id + "'");
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(id.substr(2), &used);
    if (used != id.size() - 2) throw ParseError("bad generator id '" + id + "'");
  } catch (const std::logic_error&) {
    throw ParseError("bad generator id '" + id + "'");
  }
  switch (id[0]) {
    case 'E': return E(k);
    case 'F': return F(k);
    case 'H': return H(k);
    default: throw ParseError("bad generator id '" + id + "'");
  }
}

const std::vector<std::string>& cartan_variable_names() {
  static const std::vector<std::string> names = {"h0", "h1", "d"};
  return names;
}

PbwOrder simple_last_order(int k) { return k == 0 ? PbwOrder::F0Last : PbwOrder::F1Last; }

std::string order_key(PbwOrder order) {
  switch (order) {
    case PbwOrder::Canonical: return "a0coef,imag<real,deltadeg";
    case PbwOrder::F0Last: return "a0coef,imag<real,deltadeg;f0-last";
    case PbwOrder::F1Last: return "a0coef,imag<real,deltadeg;f1-last";
  }
  return "";
}

RootElement lowering_root(const LoopGenerator& g) {
  if (!g.negative()) throw InternalDataError("not a negative generator: " + g.id());
  auto [a, b] = g.root();
  return {-a, -b};
}

LoopGenerator lowering_generator(const RootElement& beta) {
  if (beta.size() != 2) throw UnsupportedType("root vectors are implemented for A1 only");
  long a = beta[0], b = beta[1];
  if (a == b && a >= 1) return LoopGenerator::H(static_cast<int>(-a));
  if (b == a + 1 && a >= 0) return LoopGenerator::F(static_cast<int>(-a));
  if (a == b + 1 && b >= 0) return LoopGenerator::E(static_cast<int>(-a));
  throw NotRealRoot("not a positive root of A1: (" + std::to_string(a) + "," + std::to_string(b) + ")");
}

int lowering_sign(const RootElement& beta) {
  // f_{alpha_0 + j delta} = -E(-j-1) for j >= 1.
  return (beta[0] == beta[1] + 1 && beta[1] >= 1) ? -1 : 1;
}

std::string root_vector_name(const RootElement& beta) {
  long a = beta[0], b = beta[1];
  if (a == 1 && b == 0) return "f0";
  if (a == 0 && b == 1) return "f1";
  if (a == b) return "fd" + std::to_string(a);
  if (b == a + 1) return "f[a1+" + std::to_string(a) + "d]";
  return "f[a0+" + std::to_string(b) + "d]";
}

namespace {

// Sort key of a negative generator (by its positive root beta) or of a
// positive generator e_beta.
long canonical_rank(const LoopGenerator& g) {
  long a0 = 0, real = 1, deg = 0;
  auto set = [&](long x, long r, long d) {
    a0 = x;
    real = r;
    deg = d;
  };
  if (g.negative()) {
    long j;
    switch (g.kind) {
      case Kind::E: j = -g.k - 1; set(j + 1, 1, j); break;
      case Kind::F: j = -g.k; set(j, 1, j); break;
      default: j = -g.k; set(j, 0, j); break;
    }
  } else {
    switch (g.kind) {
      case Kind::E: set(g.k, 1, g.k); break;
      case Kind::F: set(g.k, 1, g.k - 1); break;
      default: set(g.k, 0, g.k); break;
    }
  }
  return ((a0 * 2 + real) << 20) + deg;
}

constexpr long kLastRank = 1L << 50;

long rank_in(int code, PbwOrder order) {
  LoopGenerator g = unpack(code);
  if (order == PbwOrder::F0Last && g == LoopGenerator::E(-1)) return kLastRank;
  if (order == PbwOrder::F1Last && g == LoopGenerator::F(0)) return kLastRank;
  return canonical_rank(g);
}

struct LieTerm {
  int code;  // loop generator code or kCentralCode
  Rational coef;
};

std::vector<LieTerm> lie_bracket(int ca, int cb) {
  std::vector<LieTerm> out;
  if (ca == kCentralCode || cb == kCentralCode) return out;
  LoopGenerator a = unpack(ca), b = unpack(cb);
  if (a.kind == Kind::D || b.kind == Kind::D) {
    // [D, X_m] = m X_m
    if (a.kind == Kind::D && b.kind != Kind::D && b.k != 0) out.push_back({cb, Rational(b.k)});
    if (b.kind == Kind::D && a.kind != Kind::D && a.k != 0) out.push_back({ca, Rational(-a.k)});
    return out;
  }
  int m = a.k, n = b.k, s = m + n;
  auto central = [&](int kappa) {
    if (s == 0 && m != 0 && kappa != 0) out.push_back({kCentralCode, Rational(m * kappa)});
  };
  if (a.kind == Kind::E && b.kind == Kind::F) {
    out.push_back({pack(LoopGenerator::H(s)), Rational(1)});
    central(1);
  } else if (a.kind == Kind::F && b.kind == Kind::E) {
    out.push_back({pack(LoopGenerator::H(s)), Rational(-1)});
    central(1);
  } else if (a.kind == Kind::H && b.kind == Kind::E) {
    out.push_back({pack(LoopGenerator::E(s)), Rational(2)});
  } else if (a.kind == Kind::E && b.kind == Kind::H) {
    out.push_back({pack(LoopGenerator::E(s)), Rational(-2)});
  } else if (a.kind == Kind::H && b.kind == Kind::F) {
    out.push_back({pack(LoopGenerator::F(s)), Rational(-2)});
  } else if (a.kind == Kind::F && b.kind == Kind::H) {
    out.push_back({pack(LoopGenerator::F(s)), Rational(2)});
  } else if (a.kind == Kind::H && b.kind == Kind::H) {
    central(2);
  }
  return out;
}

HPoly cartan_poly(int code) {
  if (code == kCentralCode) return HPoly::variable(kVarH0) + HPoly::variable(kVarH1);
  LoopGenerator g = unpack(code);
  if (g.kind == Kind::D) return HPoly::variable(kVarD);
  if (g.kind == Kind::H && g.k == 0) return HPoly::variable(kVarH1);
  throw InternalDataError("not a Cartan generator: " + g.id());
}

bool is_cartan_code(int code) { return code == kCentralCode || unpack(code).cartan(); }

std::pair<long, long> word_root(const Word& w) {
  long a = 0, b = 0;
  for (const auto& l : w) {
    auto [x, y] = unpack(l.gen).root();
    a += x * l.exp;
    b += y * l.exp;
  }
  return {a, b};
}

// Values (alpha(h0), alpha(h1), alpha(d)) for alpha = a alpha_0 + b alpha_1.
std::vector<Rational> root_values(std::pair<long, long> r, long sign = 1) {
  long a = r.first * sign, b = r.second * sign;
  return {Rational(2 * a - 2 * b), Rational(2 * b - 2 * a), Rational(a)};
}

using Lin = std::map<Word, Rational>;
using CrossKey = std::pair<Word, int>;  // (f-word, positive generator or 0 for none)
using CrossMap = std::map<CrossKey, HPoly>;
using PushMap = std::map<std::pair<Word, Word>, HPoly>;

constexpr int kNone = 0;  // code 0 would be E(-65536), never used

class Engine {
public:
  explicit Engine(PbwOrder order) : order_(order) {}

  UEAElement multiply(const UEAElement& u, const UEAElement& v) {
    std::lock_guard<std::mutex> lock(mu_);
    UEAElement out(order_);
    for (const auto& [m1, q1] : u.terms())
      for (const auto& [m2, q2] : v.terms()) {
        const PushMap& mid = push(m1.e, m2.f);
        for (const auto& [fe, q] : mid) {
          const auto& [fp, ep] = fe;
          HPoly qa = q1.translate(root_values(word_root(fp)));
          HPoly qb = q2.translate(root_values(word_root(ep), -1));
          HPoly coeff = qa * q * qb;
          if (coeff.is_zero()) continue;
          Lin fw = mul_neg_words(m1.f, fp);
          Lin ew = mul_pos_words(ep, m2.e);
          for (const auto& [fword, cf] : fw)
            for (const auto& [eword, ce] : ew) out.add(PbwMonomial{fword, eword}, coeff * Rational(cf * ce));
        }
      }
    return out;
  }

  // Product of negative letters given in any order (each applied from the right).
  Lin neg_product(const Word& letters) {
    std::lock_guard<std::mutex> lock(mu_);
    Lin cur{{Word{}, Rational(1)}};
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      for (int r = 0; r < it->exp; ++r) cur = apply_neg(it->gen, cur);
    return cur;
  }

  Lin pos_product(const Word& letters) {
    std::lock_guard<std::mutex> lock(mu_);
    Lin cur{{Word{}, Rational(1)}};
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      for (int r = 0; r < it->exp; ++r) cur = apply_pos(it->gen, cur);
    return cur;
  }

private:
  Lin apply_neg(int g, const Lin& in) {
    Lin out;
    for (const auto& [w, c] : in)
      for (const auto& [w2, c2] : left_neg(g, w)) {
        auto& slot = out[w2];
        slot += c * c2;
        if (slot == 0) out.erase(w2);
      }
    return out;
  }

  Lin apply_pos(int g, const Lin& in) {
    Lin out;
    for (const auto& [w, c] : in)
      for (const auto& [w2, c2] : left_pos(g, w)) {
        auto& slot = out[w2];
        slot += c * c2;
        if (slot == 0) out.erase(w2);
      }
    return out;
  }

  Lin mul_neg_words(const Word& left, const Word& right) {
    Lin cur{{right, Rational(1)}};
    for (auto it = left.rbegin(); it != left.rend(); ++it)
      for (int r = 0; r < it->exp; ++r) cur = apply_neg(it->gen, cur);
    return cur;
  }

  Lin mul_pos_words(const Word& left, const Word& right) {
    Lin cur{{right, Rational(1)}};
    for (auto it = left.rbegin(); it != left.rend(); ++it)
      for (int r = 0; r < it->exp; ++r) cur = apply_pos(it->gen, cur);
    return cur;
  }

  // g * w for a letter g and an ordered word w, both in the same nilpotent part.
  const Lin& left_generic(int g, const Word& w, bool neg) {
    auto& memo = neg ? neg_memo_ : pos_memo_;
    auto key = std::make_pair(g, w);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Lin res;
    auto rank = [&](int code) { return neg ? rank_in(code, order_) : canonical_rank(unpack(code)); };
    if (w.empty()) {
      res[Word{{g, 1}}] = 1;
    } else if (w[0].gen == g) {
      Word w2 = w;
      w2[0].exp += 1;
      res[w2] = 1;
    } else if (rank(g) < rank(w[0].gen)) {
      Word w2;
      w2.reserve(w.size() + 1);
      w2.push_back({g, 1});
      w2.insert(w2.end(), w.begin(), w.end());
      res[w2] = 1;
    } else {
      int x = w[0].gen;
      Word rest = w;
      if (--rest[0].exp == 0) rest.erase(rest.begin());
      // g x rest = x (g rest) + [g, x] rest
      Lin a = left_generic(g, rest, neg);
      for (const auto& [w1, c1] : a)
        for (const auto& [w2, c2] : left_generic(x, w1, neg)) res[w2] += c1 * c2;
      for (const auto& t : lie_bracket(g, x)) {
        if (is_cartan_code(t.code)) throw InternalDataError("Cartan term inside a nilpotent product");
        for (const auto& [w2, c2] : left_generic(t.code, rest, neg)) res[w2] += t.coef * c2;
      }
      for (auto jt = res.begin(); jt != res.end();) jt = jt->second == 0 ? res.erase(jt) : std::next(jt);
    }
    return memo.emplace(key, std::move(res)).first->second;
  }

  const Lin& left_neg(int g, const Word& w) { return left_generic(g, w, true); }
  const Lin& left_pos(int g, const Word& w) { return left_generic(g, w, false); }

  // g * w for positive g and negative ordered w: sum F Q X with X a single
  // positive generator or none.
  const CrossMap& cross(int g, const Word& w) {
    auto key = std::make_pair(g, w);
    auto it = cross_memo_.find(key);
    if (it != cross_memo_.end()) return it->second;
    CrossMap res;
    if (w.empty()) {
      res[{Word{}, g}] = HPoly(1);
    } else {
      int x = w[0].gen;
      Word rest = w;
      if (--rest[0].exp == 0) rest.erase(rest.begin());
      CrossMap a = cross(g, rest);
      for (const auto& [k1, q1] : a)
        for (const auto& [w2, c2] : left_neg(x, k1.first)) res[{w2, k1.second}] += q1 * c2;
      for (const auto& t : lie_bracket(g, x)) {
        if (is_cartan_code(t.code)) {
          HPoly p = cartan_poly(t.code).translate(root_values(word_root(rest)));
          res[{rest, kNone}] += p * t.coef;
        } else if (unpack(t.code).negative()) {
          for (const auto& [w2, c2] : left_neg(t.code, rest)) res[{w2, kNone}] += HPoly(t.coef * c2);
        } else {
          CrossMap b = cross(t.code, rest);
          for (const auto& [k2, q2] : b) res[k2] += q2 * t.coef;
        }
      }
      for (auto jt = res.begin(); jt != res.end();) jt = jt->second.is_zero() ? res.erase(jt) : std::next(jt);
    }
    return cross_memo_.emplace(key, std::move(res)).first->second;
  }

  // E1 * F2 = sum F' Q E'.
  const PushMap& push(const Word& e1, const Word& f2) {
    auto key = std::make_pair(e1, f2);
    auto it = push_memo_.find(key);
    if (it != push_memo_.end()) return it->second;
    PushMap cur;
    cur[{f2, Word{}}] = HPoly(1);
    for (auto lt = e1.rbegin(); lt != e1.rend(); ++lt)
      for (int r = 0; r < lt->exp; ++r) {
        PushMap next;
        for (const auto& [fe, q] : cur) {
          const CrossMap cm = cross(lt->gen, fe.first);
          for (const auto& [k2, q2] : cm) {
            if (k2.second == kNone) {
              next[{k2.first, fe.second}] += q2 * q;
            } else {
              HPoly qs = q.translate(root_values(unpack(k2.second).root(), -1));
              HPoly prod = q2 * qs;
              for (const auto& [ew, ce] : left_pos(k2.second, fe.second)) next[{k2.first, ew}] += prod * ce;
            }
          }
        }
        for (auto jt = next.begin(); jt != next.end();) jt = jt->second.is_zero() ? next.erase(jt) : std::next(jt);
        cur = std::move(next);
      }
    return push_memo_.emplace(key, std::move(cur)).first->second;
  }

  PbwOrder order_;
  std::mutex mu_;
  std::map<std::pair<int, Word>, Lin> neg_memo_, pos_memo_;
  std::map<std::pair<int, Word>, CrossMap> cross_memo_;
  std::map<std::pair<Word, Word>, PushMap> push_memo_;
};

Engine& engine(PbwOrder order) {
  static Engine canonical(PbwOrder::Canonical), f0(PbwOrder::F0Last), f1(PbwOrder::F1Last);
  switch (order) {
    case PbwOrder::F0Last: return f0;
    case PbwOrder::F1Last: return f1;
    default: return canonical;
  }
}

std::string letter_name(int code, bool neg) {
  LoopGenerator g = unpack(code);
  if (neg) return root_vector_name(lowering_root(g));
  LoopGenerator t = g.kind == Kind::E ? LoopGenerator::F(-g.k)
                    : g.kind == Kind::F ? LoopGenerator::E(-g.k)
                                        : LoopGenerator::H(-g.k);
  std::string n = root_vector_name(lowering_root(t));
  n[0] = 'e';
  return n;
}

int sign_of_word(const Word& w, bool neg) {
  int s = 1;
  for (const auto& l : w) {
    LoopGenerator g = unpack(l.gen);
    if (!neg) {
      // e_beta = tau(f_beta): tau(E_k) = F_{-k}.
      g = g.kind == Kind::E ? LoopGenerator::F(-g.k) : g.kind == Kind::F ? LoopGenerator::E(-g.k) : LoopGenerator::H(-g.k);
    }
    if (lowering_sign(lowering_root(g)) < 0 && (l.exp % 2)) s = -s;
  }
  return s;
}

Integer word_factorials(const Word& w) {
  Integer f = 1;
  for (const auto& l : w) f *= factorial(l.exp);
  return f;
}

}  // namespace

long PbwMonomial::degree() const {
  long d = 0;
  for (const auto& l : f) d += l.exp;
  for (const auto& l : e) d += l.exp;
  return d;
}

std::pair<long, long> PbwMonomial::weight() const {
  auto a = word_root(f);
  auto b = word_root(e);
  return {a.first + b.first, a.second + b.second};
}

UEAElement UEAElement::scalar(const HPoly& c, PbwOrder order) {
  UEAElement u(order);
  u.add(PbwMonomial{}, c);
  return u;
}

UEAElement UEAElement::generator(const LoopGenerator& g, PbwOrder order) {
  UEAElement u(order);
  int code = pack(g);
  if (g.kind == Kind::C || g.kind == Kind::D || g.cartan()) {
    u.add(PbwMonomial{}, cartan_poly(code));
  } else if (g.negative()) {
    u.add(PbwMonomial{Word{{code, 1}}, {}}, HPoly(1));
  } else {
    u.add(PbwMonomial{{}, Word{{code, 1}}}, HPoly(1));
  }
  return u;
}

UEAElement UEAElement::lowering(const RootElement& beta, PbwOrder order) {
  return generator(lowering_generator(beta), order) * Rational(lowering_sign(beta));
}

UEAElement UEAElement::raising(const RootElement& beta, PbwOrder order) {
  return tau(lowering(beta, order));
}

void UEAElement::add(const PbwMonomial& m, const HPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

HPoly UEAElement::coefficient(const PbwMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? HPoly() : it->second;
}

UEAElement& UEAElement::operator+=(const UEAElement& o) {
  if (o.order_ != order_ && !o.is_zero() && !is_zero()) throw InternalDataError("mixing PBW orders");
  if (is_zero()) order_ = o.order_;
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& o) {
  if (o.order_ != order_ && !o.is_zero() && !is_zero()) throw InternalDataError("mixing PBW orders");
  if (is_zero()) order_ = o.order_;
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

UEAElement& UEAElement::operator*=(const HPoly& c) {
  Terms t;
  for (auto& [m, v] : terms_) {
    HPoly x = v * c;
    if (!x.is_zero()) t.emplace(m, std::move(x));
  }
  terms_ = std::move(t);
  return *this;
}

std::optional<std::pair<long, long>> UEAElement::weight() const {
  std::optional<std::pair<long, long>> w;
  for (const auto& [m, c] : terms_) {
    auto x = m.weight();
    if (w && *w != x) return std::nullopt;
    w = x;
  }
  return w;
}

bool UEAElement::in_borel_minus() const {
  for (const auto& [m, c] : terms_)
    if (!m.e.empty()) return false;
  return true;
}

bool UEAElement::is_integral() const {
  for (const auto& [m, c] : terms_)
    if (!c.is_integral()) return false;
  return true;
}

std::string UEAElement::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<PbwMonomial, HPoly>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [this](const auto& a, const auto& b) {
    auto key = [this](const PbwMonomial& m) {
      std::vector<long> k;
      for (const auto& l : m.f) {
        k.push_back(rank_in(l.gen, order_));
        k.push_back(l.exp);
      }
      return k;
    };
    return key(a.first) < key(b.first);
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : items) {
    int s = sign_of_word(m.f, true) * sign_of_word(m.e, false);
    HPoly coeff = c * Rational(s);
    std::string cs = coeff.str(cartan_variable_names());
    std::string mono;
    for (const auto& l : m.f) {
      if (!mono.empty()) mono += " ";
      mono += letter_name(l.gen, true) + (l.exp > 1 ? "^" + std::to_string(l.exp) : "");
    }
    std::string epart;
    for (const auto& l : m.e) {
      if (!epart.empty()) epart += " ";
      epart += letter_name(l.gen, false) + (l.exp > 1 ? "^" + std::to_string(l.exp) : "");
    }
    if (!first) out << " + ";
    first = false;
    bool simple = coeff.is_constant();
    if (mono.empty() && epart.empty()) {
      out << (simple ? cs : "(" + cs + ")");
      continue;
    }
    if (!(simple && coeff.constant_term() == 1)) out << (simple ? cs : "(" + cs + ")") << (mono.empty() ? "" : " ");
    out << mono;
    if (!epart.empty()) out << (mono.empty() && simple && coeff.constant_term() == 1 ? "" : " ") << epart;
  }
  return out.str();
}

UEAElement bracket(const LoopGenerator& a, const LoopGenerator& b) {
  UEAElement u;
  for (const auto& t : lie_bracket(pack(a), pack(b))) u += UEAElement::generator(unpack(t.code)) * t.coef;
  return u;
}

UEAElement multiply(const UEAElement& u, const UEAElement& v) {
  PbwOrder order = u.order();
  if (!u.is_zero() && !v.is_zero() && u.order() != v.order()) throw InternalDataError("mixing PBW orders");
  if (u.is_zero()) order = v.order();
  return engine(order).multiply(u, v);
}

UEAElement power(const UEAElement& u, int n) {
  UEAElement r = UEAElement::scalar(HPoly(1), u.order());
  for (int i = 0; i < n; ++i) r = multiply(r, u);
  return r;
}

UEAElement normal_form(const std::vector<std::pair<LoopGenerator, int>>& word, PbwOrder order) {
  UEAElement r = UEAElement::scalar(HPoly(1), order);
  for (const auto& [g, n] : word)
    for (int i = 0; i < n; ++i) r = multiply(r, UEAElement::generator(g, order));
  return r;
}

UEAElement reorder(const UEAElement& u, PbwOrder order) {
  if (u.order() == order) return u;
  UEAElement out(order);
  Engine& eng = engine(order);
  for (const auto& [m, c] : u.terms())
    for (const auto& [w, cw] : eng.neg_product(m.f)) out.add(PbwMonomial{w, m.e}, c * cw);
  return out;
}

UEAElement tau(const UEAElement& u) {
  Engine& eng = engine(u.order());
  auto swap = [](int code) {
    LoopGenerator g = unpack(code);
    switch (g.kind) {
      case Kind::E: return pack(LoopGenerator::F(-g.k));
      case Kind::F: return pack(LoopGenerator::E(-g.k));
      default: return pack(LoopGenerator::H(-g.k));
    }
  };
  UEAElement out(u.order());
  for (const auto& [m, c] : u.terms()) {
    Word ef, fe;
    for (auto it = m.e.rbegin(); it != m.e.rend(); ++it) ef.push_back({swap(it->gen), it->exp});
    for (auto it = m.f.rbegin(); it != m.f.rend(); ++it) fe.push_back({swap(it->gen), it->exp});
    Lin nf = eng.neg_product(ef);
    Lin pe = eng.pos_product(fe);
    for (const auto& [w1, c1] : nf)
      for (const auto& [w2, c2] : pe) out.add(PbwMonomial{w1, w2}, c * Rational(c1 * c2));
  }
  return out;
}

HPoly project_h(const UEAElement& u) { return u.coefficient(PbwMonomial{}); }

UEAElement project_bminus(const UEAElement& u) {
  UEAElement out(u.order());
  for (const auto& [m, c] : u.terms())
    if (m.e.empty()) out.add(m, c);
  return out;
}

UEAElement substitute(const UEAElement& u, const std::vector<std::optional<Rational>>& values) {
  UEAElement out(u.order());
  for (const auto& [m, c] : u.terms()) out.add(m, c.partial_evaluate(values));
  return out;
}

UEAElement map_coefficients(const UEAElement& u, const std::function<HPoly(const HPoly&)>& fn) {
  UEAElement out(u.order());
  for (const auto& [m, c] : u.terms()) out.add(m, fn(c));
  return out;
}

UEAElement evaluate(const UEAElement& u, const Weight& lambda) {
  if (!u.in_borel_minus()) throw NotInBorel("evaluate needs an element of U(b^-)");
  if (lambda.h.size() != 2) throw UnsupportedType("evaluation is implemented for A1 only");
  return substitute(u, {Rational(lambda.h[0]), Rational(lambda.h[1]), lambda.d});
}

Rational root_vector_coefficient(const PbwMonomial& m, const Rational& loop_coeff) {
  return loop_coeff * sign_of_word(m.f, true) * sign_of_word(m.e, false);
}

Rational divided_power_coefficient(const PbwMonomial& m, const Rational& loop_coeff) {
  return root_vector_coefficient(m, loop_coeff) * word_factorials(m.f) * word_factorials(m.e);
}

std::string DividedWord::str() const {
  std::string s;
  for (const auto& [beta, n] : letters) {
    if (!s.empty()) s += " ";
    s += root_vector_name(beta);
    if (n > 1) s += "^(" + std::to_string(n) + ")";
  }
  return s.empty() ? "1" : s;
}

DividedWord parse_divided_word(const std::string& text) {
  DividedWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int n = 1;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    if (caret != std::string::npos) {
      std::string e = tok.substr(caret + 1);
      if (!e.empty() && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
      try {
        n = std::stoi(e);
      } catch (const std::logic_error&) {
        throw ParseError("bad exponent in '" + tok + "'");
      }
      if (n < 0) throw ParseError("negative exponent in '" + tok + "'");
    }
    RootElement beta;
    if (name == "f0") {
      beta = {1, 0};
    } else if (name == "f1") {
      beta = {0, 1};
    } else if (name.rfind("fd", 0) == 0 && name.size() > 2) {
      long j = std::stol(name.substr(2));
      beta = {j, j};
    } else {
      throw ParseError("unknown root vector '" + name + "'");
    }
    w.letters.emplace_back(beta, n);
  }
  return w;
}

UEAElement divided_word_element(const DividedWord& w, PbwOrder order) {
  UEAElement r = UEAElement::scalar(HPoly(1), order);
  for (const auto& [beta, n] : w.letters) {
    UEAElement f = UEAElement::lowering(beta, order);
    for (int i = 0; i < n; ++i) r = multiply(r, f);
    r = r * Rational(Integer(1), factorial(n));
  }
  return r;
}

UEAElement divided_monomial_element(const Word& f) {
  UEAElement u;
  PbwMonomial m{f, {}};
  u.add(m, HPoly(Rational(sign_of_word(f, true)) / Rational(word_factorials(f))));
  return u;
}

Coordinates divided_power_coordinates(const UEAElement& u, const std::vector<DividedWord>& basis) {
  std::vector<UEAElement> elems;
  std::map<PbwMonomial, std::size_t> index;
  auto note = [&](const UEAElement& x) {
    for (const auto& [m, c] : x.terms()) {
      if (!c.is_constant()) throw NotInBorel("coordinates need evaluated (numeric) elements");
      index.emplace(m, index.size());
    }
  };
  UEAElement target = reorder(u, PbwOrder::Canonical);
  note(target);
  for (const auto& w : basis) {
    elems.push_back(divided_word_element(w));
    note(elems.back());
  }
  RatMatrix a(index.size(), RatVector(basis.size(), Rational(0)));
  RatVector b(index.size(), Rational(0));
  for (std::size_t j = 0; j < elems.size(); ++j)
    for (const auto& [m, c] : elems[j].terms()) a[index[m]][j] = c.constant_term();
  for (const auto& [m, c] : target.terms()) b[index[m]] = c.constant_term();
  if (rank(a) != basis.size()) throw BasisError("divided-power word basis is rank deficient");
  auto x = solve_any(a, b);
  if (!x) throw BasisError("element is not in the span of the given words");
  Coordinates out;
  out.values = *x;
  out.integral = std::all_of(x->begin(), x->end(), [](const Rational& q) { return is_integer(q); });
  return out;
}

std::vector<Word> negative_monomials(long b0, long b1) {
  // Positive roots (as negative generators) that fit into (b0, b1), in canonical order.
  std::vector<std::pair<long, int>> gens;
  for (long j = 0; j <= std::max(b0, b1) + 1; ++j) {
    if (j + 1 <= b1 && j <= b0) gens.emplace_back(0, pack(LoopGenerator::F(static_cast<int>(-j))));
    if (j + 1 <= b0 && j <= b1) gens.emplace_back(0, pack(LoopGenerator::E(static_cast<int>(-j - 1))));
    if (j >= 1 && j <= b0 && j <= b1) gens.emplace_back(0, pack(LoopGenerator::H(static_cast<int>(-j))));
  }
  for (auto& g : gens) g.first = canonical_rank(unpack(g.second));
  std::sort(gens.begin(), gens.end());
  std::vector<Word> out;
  Word cur;
  std::function<void(std::size_t, long, long)> rec = [&](std::size_t i, long r0, long r1) {
    if (r0 == 0 && r1 == 0) {
      out.push_back(cur);
      return;
    }
    if (i == gens.size()) return;
    auto [a, b] = unpack(gens[i].second).root();
    long beta0 = -a, beta1 = -b;
    rec(i + 1, r0, r1);
    for (int n = 1; beta0 * n <= r0 && beta1 * n <= r1; ++n) {
      cur.push_back({gens[i].second, n});
      rec(i + 1, r0 - beta0 * n, r1 - beta1 * n);
      cur.pop_back();
    }
  };
  rec(0, b0, b1);
  std::sort(out.begin(), out.end());
  return out;
}

UEAElement simple_power(int i, int n, bool raising, PbwOrder order) {
  RootElement beta = i == 0 ? RootElement{1, 0} : RootElement{0, 1};
  UEAElement g = raising ? UEAElement::raising(beta, order) : UEAElement::lowering(beta, order);
  return power(g, n);
}

std::map<std::pair<Word, int>, HPoly> c_polynomials(const Word& omega, int alpha, int m_max) {
  long deg = 0;
  for (const auto& l : omega) deg += l.exp;
  if (m_max < deg + 2) throw HypothesisError("c_polynomials needs m_max >= deg(omega) + 2");
  PbwOrder order = simple_last_order(alpha);
  int fk = pack(alpha == 0 ? LoopGenerator::E(-1) : LoopGenerator::F(0));
  UEAElement fw(PbwOrder::Canonical);
  fw.add(PbwMonomial{omega, {}}, HPoly(1));
  UEAElement base = reorder(fw, order);
  int omega_sign = sign_of_word(omega, true);
  UEAElement f = UEAElement::generator(unpack(fk), order);

  // pi carries no f_alpha, and every other root vector has alpha-coefficient at most twice its
  // other coefficient, so the alpha-coefficient of pi (which bounds the number of brackets with
  // the new f_alpha, hence the degree in m) is at most 2 c_other(omega).
  long other = 0;
  for (const auto& l : omega) {
    auto [a0, a1] = unpack(l.gen).root();
    other -= (alpha == 0 ? a1 : a0) * l.exp;
  }
  int degree_bound = static_cast<int>(2 * other);
  int top = std::max(m_max, degree_bound + 2);

  std::map<std::pair<Word, int>, std::map<int, Rational>> samples;
  UEAElement cur = base;
  for (int m = 0; m <= top; ++m) {
    if (m > 0) cur = multiply(f, cur);
    for (const auto& [mono, c] : cur.terms()) {
      Word pi = mono.f;
      int j = 0;
      if (!pi.empty() && pi.back().gen == fk) {
        j = pi.back().exp;
        pi.pop_back();
      }
      Rational val = c.constant_term() * omega_sign * sign_of_word(pi, true);
      samples[{pi, m - j}][m] = val;
    }
  }
  std::map<std::pair<Word, int>, HPoly> out;
  for (const auto& [key, vals] : samples) {
    // Absent samples (including m < i) are zero.
    std::vector<Rational> xs;
    std::vector<HPoly> ys;
    for (int m = 0; m <= top; ++m) {
      auto it = vals.find(m);
      xs.push_back(m);
      ys.push_back(HPoly(it == vals.end() ? Rational(0) : it->second));
    }
    std::size_t fit = static_cast<std::size_t>(degree_bound + 1);
    HPoly c = interpolate(std::vector<Rational>(xs.begin(), xs.begin() + static_cast<long>(fit)),
                          std::vector<HPoly>(ys.begin(), ys.begin() + static_cast<long>(fit)), 0);
    for (std::size_t t = fit; t < xs.size(); ++t)
      if (c.evaluate({xs[t]}) != ys[t].constant_term())
        throw RescalingError("structure constants exceed the degree bound in m");
    if (!c.is_integral()) throw RescalingError("non-integral structure polynomial: " + c.str({"m"}));
    out.emplace(key, c);
  }
  return out;
}

}  // namespace weyllab
