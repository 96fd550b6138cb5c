#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weyllab/rootdata.hpp"

namespace weyllab {

enum class ScanStatus { Reducible, QuasiSimple, NotInYPlus };
std::string status_name(ScanStatus s);

// A witness for the alpha_k + t delta family: <lambda+rho, gamma^vee> = M p^e + D.
// condition is 0 for a bare Y+ membership witness, otherwise the number of the
// reducibility condition that holds, with eta the simple root it avoids.
struct ScanWitness {
  int family = 0;
  long t = 0;
  int e = 0;
  long M = 0;
  long D = 0;
  int condition = 0;
  int eta = -1;
  RootElement gamma;

  friend bool operator==(const ScanWitness&, const ScanWitness&) = default;
};

struct ScanEntry {
  Weight weight;  // delta part 0
  long level = 0;
  std::vector<long> xi;
  ScanStatus status = ScanStatus::NotInYPlus;
  std::vector<ScanWitness> witnesses;
};

struct Membership {
  bool member = false;
  std::vector<ScanWitness> witnesses;  // one per family that admits one
};

// --- affine sl2, weights (xi0, level - xi0) ---
Membership y_plus_a1(long level, long xi0, long p);
// Direct search over t <= t_bound and all e, using reflections on the root datum.
Membership y_plus_a1_bruteforce(long level, long xi0, long p, long t_bound);
std::vector<ScanWitness> reducible_a1_all(long level, long xi0, long p);
std::optional<ScanWitness> reducible_a1(long level, long xi0, long p);
ScanEntry classify_a1(long level, long xi0, long p);
std::vector<ScanEntry> scan_a1(long p, long level_min, long level_max);
std::vector<ScanEntry> quasi_simple_a1(long p, long level_max);

struct LowestLevel {
  long level = -1;
  std::vector<long> xi0;
};
LowestLevel lowest_level(long p, long level_cap = 1000);

// --- affine sl_{r+1}, r >= 2, xi = (xi_0, ..., xi_r) ---
// Families alpha_k + t delta for every rotation k of the diagram.
Membership y_plus_ar(int r, const std::vector<long>& xi, long p);
std::vector<ScanWitness> reducible_ar_all(int r, const std::vector<long>& xi, long p);
std::optional<ScanWitness> reducible_ar(int r, const std::vector<long>& xi, long p);
ScanEntry classify_ar(int r, const std::vector<long>& xi, long p);
std::vector<ScanEntry> scan_ar(int r, long p, long level_min, long level_max);

// Mirror search over gamma = gamma_0 + t delta for every base root gamma_0 and
// t <= t_bound, for any untwisted type.
std::vector<ScanWitness> mirror_bruteforce(const RootDatum& rd, const Weight& lambda, long p, long t_bound);

struct RotationDiscrepancy {
  std::vector<long> xi;
  bool rotation_member = false;
  bool bruteforce_member = false;
};
// Compares y_plus_ar against mirror_bruteforce on every weight of the given levels.
std::vector<RotationDiscrepancy> rotation_closure_check(int r, long p, long level_max, long t_bound);

struct LevelOneReport {
  std::string type;
  long p = 0;
  long t_bound = 0;
  // Nodes j (comark 1) whose varpi_j is in Y+ by the congruence test: some base
  // root gamma_0, e >= 1 and 0 < D < p^e with D = <lambda+rho, gamma_0^vee> mod
  // gcd(C, p^e) and lambda - D gamma_0 dominant, C = 2 (level + h^vee) / (gamma_0, gamma_0).
  std::vector<int> members;
  // Nodes passing lambda - gcd(C, p) gamma_0 dominant as literally stated.
  std::vector<int> gcd_test;
  std::vector<int> bruteforce;  // nodes with a mirror witness for t <= t_bound
  bool agree = false;           // members == bruteforce
};
LevelOneReport level_one_scan(const RootDatum& rd, long p, long t_bound = 0);

struct BoundReport {
  bool applicable = false;  // p exceeds level (level + h^vee) - h^vee
  bool passed = false;
  long members = 0;
  long reducible = 0;
};
BoundReport bound_remark_check(int r, long level, long p);

}  // namespace weyllab
