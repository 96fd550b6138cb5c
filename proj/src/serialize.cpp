#include "weyllab/serialize.hpp"

#include "weyllab/errors.hpp"

namespace weyllab {

using nlohmann::json;

json to_json(const HPoly& p) {
  json terms = json::array();
  for (const auto& [k, c] : p.terms()) {
    json exps = json::array();
    for (int v = 0; v < kNumVars; ++v) exps.push_back(HPoly::exponent(k, v));
    terms.push_back({{"exponents", exps}, {"c", c.get_str()}});
  }
  return terms;
}

HPoly hpoly_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("polynomial must be a JSON array");
  HPoly p;
  for (const auto& t : j) {
    auto exps = t.at("exponents").get<std::vector<int>>();
    p += HPoly::monomial(exps, parse_rational(t.at("c").get<std::string>()));
  }
  return p;
}

json to_json(const UEAElement& u) {
  json terms = json::array();
  for (const auto& [m, c] : u.terms()) {
    json mono = json::array();
    for (const auto& l : m.f) mono.push_back({unpack(l.gen).id(), l.exp});
    for (const auto& l : m.e) mono.push_back({unpack(l.gen).id(), l.exp});
    terms.push_back({{"monomial", mono}, {"coeff", to_json(c)}});
  }
  return {{"order", order_key(u.order())}, {"variables", cartan_variable_names()}, {"terms", terms}};
}

UEAElement uea_from_json(const json& j) {
  PbwOrder order = PbwOrder::Canonical;
  std::string key = j.at("order").get<std::string>();
  if (key == order_key(PbwOrder::F0Last))
    order = PbwOrder::F0Last;
  else if (key == order_key(PbwOrder::F1Last))
    order = PbwOrder::F1Last;
  else if (key != order_key(PbwOrder::Canonical))
    throw ParseError("unknown PBW order key '" + key + "'");
  UEAElement u(order);
  for (const auto& t : j.at("terms")) {
    // Rebuild through multiplication so that any valid word is accepted.
    UEAElement x = UEAElement::scalar(HPoly(1), order);
    UEAElement e = UEAElement::scalar(HPoly(1), order);
    for (const auto& l : t.at("monomial")) {
      LoopGenerator g = LoopGenerator::parse(l.at(0).get<std::string>());
      int n = l.at(1).get<int>();
      if (n < 0) throw ParseError("negative exponent");
      for (int i = 0; i < n; ++i) {
        if (g.negative())
          x = multiply(x, UEAElement::generator(g, order));
        else
          e = multiply(e, UEAElement::generator(g, order));
      }
    }
    UEAElement mid = x;
    mid *= hpoly_from_json(t.at("coeff"));
    u += multiply(mid, e);
  }
  return u;
}

json to_json(const Weight& w) {
  return {{"h", w.h}, {"d", w.d.get_str()}};
}

json to_json(const RootElement& r) { return json(r); }

json to_json(const RootDatum& rd, const HomCertificate& c) {
  json coords = json::array();
  for (const auto& x : c.coordinates) coords.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
  json checks = json::array();
  for (const auto& k : c.checks) checks.push_back({{"i", k.i}, {"n", k.n}, {"pass", k.pass}});
  return {{"lambda", rd.format_weight(c.lambda, true)},
          {"mu", rd.format_weight(c.mu, true)},
          {"gamma", rd.format_root(c.gamma, true)},
          {"D", c.D},
          {"e", c.e},
          {"M", c.M},
          {"p", c.prime},
          {"eta", c.eta},
          {"g", c.g},
          {"coordinates", coords},
          {"basis", c.basis},
          {"checks", checks},
          {"valid", c.valid}};
}

json to_json(const RootDatum& rd, const ScanWitness& w) {
  return {{"family", w.family},
          {"t", w.t},
          {"e", w.e},
          {"M", w.M},
          {"D", w.D},
          {"condition", w.condition},
          {"eta", w.eta},
          {"gamma", rd.format_root(w.gamma, true)}};
}

json to_json(const RootDatum& rd, const ScanEntry& e) {
  json ws = json::array();
  for (const auto& w : e.witnesses) ws.push_back(to_json(rd, w));
  return {{"level", e.level}, {"xi", e.xi}, {"status", status_name(e.status)}, {"witnesses", ws}};
}

json to_json(const LevelOneReport& r) {
  return {{"type", r.type},         {"p", r.p},
          {"t_bound", r.t_bound},   {"members", r.members},
          {"gcd_test", r.gcd_test}, {"bruteforce", r.bruteforce},
          {"agree", r.agree}};
}

}  // namespace weyllab
