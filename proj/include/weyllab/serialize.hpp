#pragma once

#include <json.hpp>

#include "weyllab/hpoly.hpp"
#include "weyllab/pbw.hpp"
#include "weyllab/rootdata.hpp"
#include "weyllab/scanner.hpp"
#include "weyllab/verma.hpp"

namespace weyllab {

nlohmann::json to_json(const HPoly& p);
HPoly hpoly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const UEAElement& u);
UEAElement uea_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Weight& w);
nlohmann::json to_json(const RootElement& r);
// Weights and roots are written as strings in the datum's notation.
nlohmann::json to_json(const RootDatum& rd, const HomCertificate& c);
nlohmann::json to_json(const RootDatum& rd, const ScanWitness& w);
nlohmann::json to_json(const RootDatum& rd, const ScanEntry& e);
nlohmann::json to_json(const LevelOneReport& r);

}  // namespace weyllab
