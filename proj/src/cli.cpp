#include "weyllab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "weyllab/errors.hpp"
#include "weyllab/scanner.hpp"
#include "weyllab/serialize.hpp"
#include "weyllab/shapovalov.hpp"
#include "weyllab/verma.hpp"
#include "weyllab/weylgroup.hpp"

namespace weyllab {

namespace {

using nlohmann::json;

struct Config {
  std::string format = "table";
  std::string cache_dir;
  long max_size = 8;  // D * ht(gamma) for Shapovalov elements
  long t_bound = 0;   // 0: each command's own default
  long max_height = 20;
  int depth = 4;
  std::vector<long> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
};

struct Result {
  int code = kExitOk;
  std::ostringstream out;
  std::ostringstream err;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

template <class T>
std::string join_numbers(const std::vector<T>& xs, const std::string& sep) {
  std::vector<std::string> parts;
  for (const auto& x : xs) parts.push_back(std::to_string(x));
  return join(parts, sep);
}

std::string tuple_str(const std::vector<long>& xi) { return "(" + join_numbers(xi, ",") + ")"; }

std::string witness_str(const RootDatum& rd, const ScanWitness& w) {
  std::ostringstream s;
  s << "gamma=" << rd.format_root(w.gamma, true) << " e=" << w.e << " M=" << w.M << " D=" << w.D;
  if (w.condition > 0) s << " cond=" << w.condition << " eta=" << w.eta;
  return s.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// Long-running scans print one row per entry in csv/table, an array in json.
void emit_entries(const RootDatum& rd, const std::vector<ScanEntry>& entries, bool grouped, const Config& cfg,
                  std::ostream& out) {
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& e : entries) arr.push_back(to_json(rd, e));
    out << arr.dump(2) << "\n";
    return;
  }
  std::size_t n = static_cast<std::size_t>(rd.size());
  if (cfg.format == "csv") {
    out << "level";
    for (std::size_t i = 0; i < n; ++i) out << ",xi" << i;
    out << ",status,witness\n";
    for (const auto& e : entries) {
      out << e.level;
      for (long x : e.xi) out << "," << x;
      std::vector<std::string> ws;
      for (const auto& w : e.witnesses) ws.push_back(witness_str(rd, w));
      out << "," << status_name(e.status) << "," << csv_field(join(ws, "; ")) << "\n";
    }
    return;
  }
  if (grouped) {
    // Quasi-simple layout: one row per level.
    std::map<long, std::vector<std::string>> rows;
    for (const auto& e : entries) rows[e.level].push_back(tuple_str(e.xi));
    for (const auto& [level, xs] : rows) out << level << ": " << join(xs, ", ") << "\n";
    if (rows.empty()) out << "none\n";
    return;
  }
  for (const auto& e : entries) {
    out << e.level << "  " << tuple_str(e.xi) << "  " << status_name(e.status);
    if (!e.witnesses.empty()) out << "  " << witness_str(rd, e.witnesses.front());
    out << "\n";
  }
}

// Oracle range for the direct Y+ search at one level (see the scanner tests).
long oracle_t_bound(long level, long p) {
  long n = level + 2, pe = p;
  while (n % p == 0) {
    n /= p;
    pe *= p;
  }
  while (pe <= level / 2) pe *= p;
  return 2 * pe;
}

struct ScanA1Args {
  std::vector<long> primes;
  long min_level = 0;
  long max_level = -1;
  bool quasi_simple = false;
  bool lowest = false;
  bool cross_check = false;
};

void cmd_scan_a1(const ScanA1Args& a, const Config& cfg, Result& r) {
  auto rd = RootDatum::load("A1");
  if (a.lowest) {
    const auto& primes = a.primes.empty() ? cfg.primes : a.primes;
    json arr = json::array();
    if (cfg.format == "csv") r.out << "p,level,xi0\n";
    for (long p : primes) {
      auto ll = lowest_level(p);
      if (cfg.format == "json")
        arr.push_back({{"p", p}, {"level", ll.level}, {"xi0", ll.xi0}});
      else if (cfg.format == "csv")
        r.out << p << "," << ll.level << "," << join_numbers(ll.xi0, ";") << "\n";
      else
        r.out << "p=" << p << "  ll=" << ll.level << " : {" << join_numbers(ll.xi0, ",") << "}\n";
    }
    if (cfg.format == "json") r.out << arr.dump(2) << "\n";
    return;
  }
  if (a.primes.size() != 1) throw CLI::ValidationError("--prime", "give exactly one prime");
  if (a.max_level < 0) throw CLI::ValidationError("--max-level", "required unless --lowest-level");
  long p = a.primes.front();
  if (a.cross_check) {
    for (long level = a.min_level; level <= a.max_level; ++level)
      for (long x = 0; x <= level; ++x) {
        bool fast = y_plus_a1(level, x, p).member;
        long bound = cfg.t_bound > 0 ? cfg.t_bound : oracle_t_bound(level, p);
        bool brute = y_plus_a1_bruteforce(level, x, p, bound).member;
        if (fast != brute) {
          r.err << "mismatch level=" << level << " xi=(" << x << "," << level - x << ") fast=" << fast
                << " oracle=" << brute << "\n";
          r.code = kExitInconsistent;
        }
      }
    if (r.code != kExitOk) return;
  }
  std::vector<ScanEntry> entries;
  if (a.quasi_simple) {
    for (auto& e : quasi_simple_a1(p, a.max_level))
      if (e.level >= a.min_level) entries.push_back(std::move(e));
  } else {
    entries = scan_a1(p, a.min_level, a.max_level);
  }
  emit_entries(*rd, entries, a.quasi_simple, cfg, r.out);
}

struct ScanArArgs {
  int rank = 2;
  long prime = 0;
  long min_level = 0;
  long max_level = 0;
  bool quasi_simple = false;
};

void cmd_scan_ar(const ScanArArgs& a, const Config& cfg, Result& r) {
  auto rd = RootDatum::load(Family::A, a.rank);
  auto entries = scan_ar(a.rank, a.prime, a.min_level, a.max_level);
  if (a.quasi_simple)
    std::erase_if(entries, [](const ScanEntry& e) { return e.status != ScanStatus::QuasiSimple; });
  emit_entries(*rd, entries, a.quasi_simple, cfg, r.out);
}

struct LevelOneArgs {
  std::string type;
  long prime = 0;
  long t_bound = 0;
};

void cmd_scan_level_one(const LevelOneArgs& a, const Config& cfg, Result& r) {
  auto rd = RootDatum::load(a.type);
  long bound = a.t_bound > 0 ? a.t_bound : cfg.t_bound;
  auto rep = level_one_scan(*rd, a.prime, bound);
  if (cfg.format == "json") {
    r.out << to_json(rep).dump(2) << "\n";
  } else if (cfg.format == "csv") {
    r.out << "type,p,node,member,gcd_test,bruteforce\n";
    auto has = [](const std::vector<int>& v, int j) { return std::find(v.begin(), v.end(), j) != v.end(); };
    for (int j = 0; j < rd->size(); ++j) {
      if (rd->comarks()[static_cast<std::size_t>(j)] != 1) continue;
      r.out << rep.type << "," << rep.p << "," << j << "," << has(rep.members, j) << "," << has(rep.gcd_test, j)
            << "," << has(rep.bruteforce, j) << "\n";
    }
  } else {
    std::vector<std::string> names;
    for (int j : rep.members) names.push_back("ϖ" + std::to_string(j));
    r.out << (names.empty() ? std::string("none") : join(names, ", ")) << "\n";
    r.out << "verified up to t <= " << rep.t_bound << (rep.agree ? "" : " (DISAGREES with brute force)") << "\n";
  }
  if (!rep.agree) {
    r.err << "level-one congruence test and brute-force search disagree: members {" << join_numbers(rep.members, ",")
          << "} vs {" << join_numbers(rep.bruteforce, ",") << "}\n";
    r.code = kExitInconsistent;
  }
}

std::optional<ShapovalovCache> open_cache(const Config& cfg) {
  if (!cfg.cache_dir.empty()) return ShapovalovCache(cfg.cache_dir);
  return ShapovalovCache::from_environment();
}

std::string divided_word_name(const Word& w) {
  std::vector<std::string> parts;
  for (const auto& l : w) {
    std::string name = root_vector_name(lowering_root(unpack(l.gen)));
    parts.push_back(l.exp > 1 ? name + "^(" + std::to_string(l.exp) + ")" : name);
  }
  return parts.empty() ? "1" : join(parts, " ");
}

std::string rational_str(const Rational& q) { return q.get_str(); }

struct ShapovalovArgs {
  std::string gamma;
  int D = 1;
  std::optional<int> eta;
  bool verify = false;
  int samples = 20;
};

void cmd_shapovalov(const ShapovalovArgs& a, const Config& cfg, Result& r) {
  auto rd = RootDatum::load("A1");
  RootElement gamma = rd->parse_root(a.gamma);
  auto cache = open_cache(cfg);
  std::optional<ShapovalovElement> z;
  if (cache) z = cache->load(*rd, gamma, a.D, a.eta);
  if (!z) {
    ShapovalovOptions opts;
    opts.max_size = cfg.max_size;
    ShapovalovElement base;
    std::optional<ShapovalovElement> cached_base;
    if (cache && a.eta) cached_base = cache->load(*rd, gamma, a.D, std::nullopt);
    base = cached_base ? *cached_base : integral_shapovalov(*rd, gamma, a.D, opts);
    if (cache && !cached_base) cache->store(*rd, base);
    z = a.eta ? eta_avoiding(*rd, base, *a.eta) : base;
    if (cache && a.eta) cache->store(*rd, *z);
  }
  // The factor formula concerns Z itself, so an eta-avoiding request checks its base element.
  auto base_element = [&]() {
    if (!a.eta) return *z;
    if (cache)
      if (auto b = cache->load(*rd, gamma, a.D, std::nullopt)) return *b;
    ShapovalovOptions opts;
    opts.max_size = cfg.max_size;
    return integral_shapovalov(*rd, gamma, a.D, opts);
  };

  json j = {{"type", rd->name()},
            {"gamma", rd->format_root(gamma, true)},
            {"D", a.D},
            {"eta", a.eta ? json(*a.eta) : json(nullptr)},
            {"leading_scale", z->leading_scale.get_str()},
            {"element", z->element.str()},
            {"terms", to_json(z->element)}};
  bool constant = std::all_of(z->element.terms().begin(), z->element.terms().end(),
                              [](const auto& t) { return t.first.e.empty() && t.second.is_constant(); });
  if (constant) {
    json coords = json::array();
    for (const auto& [w, c] : divided_power_pbw_coordinates(z->element))
      coords.push_back({{"word", divided_word_name(w)}, {"value", rational_str(c)}});
    j["coordinates"] = coords;
  }
  bool ok = true;
  if (a.verify) {
    auto sing = verify_singular(*rd, *z, a.samples);
    auto fac = factor_formula_check(*rd, base_element());
    j["verify"] = {{"singular", sing.passed},
                   {"samples", sing.samples.size()},
                   {"factor_formula", fac.passed},
                   {"predicted_product", fac.predicted.str(cartan_variable_names())}};
    ok = sing.passed && fac.passed;
  }

  if (cfg.format == "json") {
    r.out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    r.out << "monomial,coefficient\n";
    for (const auto& t : j["terms"]) r.out << csv_field(t["monomial"].dump()) << "," << csv_field(t["coeff"].dump()) << "\n";
  } else {
    r.out << "Z = " << j["element"].get<std::string>() << "\n";
    if (j.contains("coordinates"))
      for (const auto& c : j["coordinates"])
        r.out << "  " << c["value"].get<std::string>() << " on " << c["word"].get<std::string>() << "\n";
    if (a.verify)
      r.out << "singular on " << j["verify"]["samples"] << " samples: " << (j["verify"]["singular"] ? "pass" : "FAIL")
            << "\nfactor formula: " << (j["verify"]["factor_formula"] ? "pass" : "FAIL") << "\n";
  }
  if (!ok) r.code = kExitNegative;
}

struct VerifyArgs {
  std::string lambda;
  std::string gamma;
  int D = 1;
  int eta = 0;
  long prime = 0;
};

void cmd_verify(const VerifyArgs& a, bool weyl, const Config& cfg, Result& r) {
  auto rd = RootDatum::load("A1");
  Weight lambda = rd->parse_weight(a.lambda);
  RootElement gamma = rd->parse_root(a.gamma);
  auto cert = weyl ? weyl_hom_check(*rd, lambda, gamma, a.D, a.eta, a.prime)
                   : verma_hom_check(*rd, lambda, gamma, a.D, a.eta, a.prime);
  json j = to_json(*rd, cert);
  if (cfg.format == "json") {
    r.out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    r.out << "word,coordinate\n";
    for (std::size_t i = 0; i < cert.basis.size(); ++i)
      r.out << csv_field(cert.basis[i]) << "," << cert.coordinates[i].get_str() << "\n";
  } else {
    std::vector<std::string> coords;
    for (const auto& c : cert.coordinates) coords.push_back(c.get_str());
    r.out << (weyl ? "Weyl" : "Verma") << " homomorphism V(" << rd->format_weight(cert.mu) << ") -> V("
          << rd->format_weight(cert.lambda) << ")\n"
          << "gamma=" << rd->format_root(cert.gamma) << " D=" << cert.D << " e=" << cert.e << " M=" << cert.M
          << " p=" << cert.prime << " eta=" << cert.eta << " g=" << cert.g << "\n"
          << "coordinates (" << join(coords, ",") << ") in (" << join(cert.basis, ", ") << ")\n";
    for (const auto& c : cert.checks)
      r.out << "  e" << c.i << "^(" << c.n << "): " << (c.pass ? "0 mod p" : "NONZERO") << "\n";
    r.out << (cert.valid ? "valid" : "invalid") << "\n";
  }
  if (!cert.valid) r.code = kExitNegative;
}

struct LinkageArgs {
  std::string type = "A1";
  std::string from;
  std::string to;
  long prime = 0;
  int depth = 0;
};

void cmd_linkage(const LinkageArgs& a, const Config& cfg, Result& r) {
  auto rd = RootDatum::load(a.type);
  Weight mu = rd->parse_weight(a.from), lambda = rd->parse_weight(a.to);
  SearchBounds bounds;
  bounds.max_height = cfg.max_height;
  bounds.max_depth = a.depth > 0 ? a.depth : cfg.depth;
  auto chain = linkage_chain(*rd, mu, lambda, a.prime, bounds);
  json j = {{"type", rd->name()},
            {"from", rd->format_weight(mu, true)},
            {"to", rd->format_weight(lambda, true)},
            {"p", a.prime},
            {"found", chain.has_value()}};
  json steps = json::array();
  if (chain)
    for (std::size_t i = 0; i < chain->steps.size(); ++i) {
      const auto& s = chain->steps[i];
      steps.push_back({{"from", rd->format_weight(chain->weights[i], true)},
                       {"to", rd->format_weight(chain->weights[i + 1], true)},
                       {"beta", rd->format_root(s.beta, true)},
                       {"n", s.n},
                       {"m", s.m}});
    }
  j["steps"] = steps;
  if (cfg.format == "json") {
    r.out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    r.out << "step,from,to,beta,n,m\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& s = steps[i];
      r.out << i + 1 << "," << s["from"].get<std::string>() << "," << s["to"].get<std::string>() << ","
            << s["beta"].get<std::string>() << "," << s["n"] << "," << s["m"] << "\n";
    }
  } else if (!chain) {
    r.out << "none within bounds\n";
  } else {
    r.out << chain->steps.size() << "-step chain\n";
    for (const auto& s : steps)
      r.out << "  " << s["from"].get<std::string>() << " -> " << s["to"].get<std::string>()
            << "  beta=" << s["beta"].get<std::string>() << " n=" << s["n"] << " m=" << s["m"] << "\n";
  }
  if (!chain) r.code = kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weyl module reducibility lab for affine Kac-Moody algebras", "weyllab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);

  Config cfg;
  if (const char* dir = std::getenv("WEYLLAB_CACHE")) cfg.cache_dir = dir;
  app.set_config("--config", "", "key=value configuration file");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--cache-dir", cfg.cache_dir, "Shapovalov element cache (default $WEYLLAB_CACHE)");
  app.add_option("--max-size", cfg.max_size, "Budget on D*ht(gamma)")->check(CLI::PositiveNumber);
  app.add_option("--t-bound", cfg.t_bound, "Brute-force bound on t")->check(CLI::PositiveNumber);
  app.add_option("--max-height", cfg.max_height, "Linkage search: root height bound")->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "Linkage search: chain length bound")->check(CLI::PositiveNumber);
  app.add_option("--primes", cfg.primes, "Primes for --lowest-level")->check(CLI::PositiveNumber);

  auto* scan = app.add_subcommand("scan", "Y+ and reducibility scans")->require_subcommand(1);
  ScanA1Args a1;
  auto* s_a1 = scan->add_subcommand("a1", "affine sl2");
  s_a1->add_option("--prime", a1.primes, "Prime(s)")->check(CLI::PositiveNumber);
  s_a1->add_option("--min-level", a1.min_level)->check(CLI::NonNegativeNumber);
  s_a1->add_option("--max-level", a1.max_level)->check(CLI::NonNegativeNumber);
  s_a1->add_flag("--quasi-simple", a1.quasi_simple);
  auto* lowest = s_a1->add_flag("--lowest-level", a1.lowest);
  s_a1->add_flag("--cross-check", a1.cross_check, "Compare the fast path with the direct search (exit 3 on mismatch)");
  lowest->excludes("--quasi-simple");

  ScanArArgs ar;
  auto* s_ar = scan->add_subcommand("ar", "affine sl_{r+1}");
  s_ar->add_option("--rank", ar.rank)->required()->check(CLI::Range(1, 8));
  s_ar->add_option("--prime", ar.prime)->required()->check(CLI::PositiveNumber);
  s_ar->add_option("--min-level", ar.min_level)->check(CLI::NonNegativeNumber);
  s_ar->add_option("--max-level", ar.max_level)->required()->check(CLI::NonNegativeNumber);
  s_ar->add_flag("--quasi-simple", ar.quasi_simple);

  LevelOneArgs l1;
  auto* s_l1 = scan->add_subcommand("level-one", "level-one weights in Y+");
  s_l1->add_option("--type", l1.type)->required();
  s_l1->add_option("--prime", l1.prime)->required()->check(CLI::PositiveNumber);
  s_l1->add_option("--t-bound", l1.t_bound)->check(CLI::PositiveNumber);

  ShapovalovArgs sh;
  auto* shap = app.add_subcommand("shapovalov", "integral Shapovalov element in affine sl2");
  shap->add_option("--gamma", sh.gamma)->required();
  shap->add_option("--d", sh.D)->required()->check(CLI::PositiveNumber);
  shap->add_option("--eta", sh.eta)->check(CLI::Range(0, 1));
  shap->add_flag("--verify", sh.verify);
  shap->add_option("--samples", sh.samples)->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "homomorphism certificates")->require_subcommand(1);
  VerifyArgs va;
  std::vector<CLI::App*> verifiers;
  for (const char* name : {"weyl-hom", "verma-hom"}) {
    auto* v = verify->add_subcommand(name);
    v->add_option("--lambda", va.lambda)->required();
    v->add_option("--gamma", va.gamma)->required();
    v->add_option("--d", va.D)->required()->check(CLI::PositiveNumber);
    v->add_option("--eta", va.eta)->required()->check(CLI::Range(0, 1));
    v->add_option("--prime", va.prime)->required()->check(CLI::PositiveNumber);
    verifiers.push_back(v);
  }

  LinkageArgs la;
  auto* link = app.add_subcommand("linkage", "mod-p linkage chain from one weight up to another");
  link->add_option("--type", la.type);
  link->add_option("--from", la.from)->required();
  link->add_option("--to", la.to)->required();
  link->add_option("--prime", la.prime)->required()->check(CLI::NonNegativeNumber);
  link->add_option("--depth", la.depth)->check(CLI::PositiveNumber);

  Result r;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (s_a1->parsed())
      cmd_scan_a1(a1, cfg, r);
    else if (s_ar->parsed())
      cmd_scan_ar(ar, cfg, r);
    else if (s_l1->parsed())
      cmd_scan_level_one(l1, cfg, r);
    else if (shap->parsed())
      cmd_shapovalov(sh, cfg, r);
    else if (verifiers[0]->parsed() || verifiers[1]->parsed())
      cmd_verify(va, verifiers[0]->parsed(), cfg, r);
    else if (link->parsed())
      cmd_linkage(la, cfg, r);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, r.out, r.err);
    r.code = code == 0 ? kExitOk : kExitUsage;
  } catch (const HypothesisError& e) {
    r.err << "hypothesis failure: " << e.what() << "\n";
    r.code = kExitHypothesis;
  } catch (const NonzeroImageError& e) {
    r.err << "internal inconsistency: " << e.what() << "\n";
    r.code = kExitInconsistent;
  } catch (const InternalDataError& e) {
    r.err << "internal inconsistency: " << e.what() << "\n";
    r.code = kExitInconsistent;
  } catch (const Error& e) {
    // Parse, scope and budget errors: the request itself cannot be served.
    r.err << "error: " << e.what() << "\n";
    r.code = kExitUsage;
  }
  out << r.out.str();
  err << r.err.str();
  return r.code;
}

}  // namespace weyllab
