#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fairsor/analysis.hpp"
#include "fairsor/fair.hpp"
#include "fairsor/instance.hpp"
#include "fairsor/oracle.hpp"

namespace fairsor {

// JSON schema: {"n": int, "groups": [1-based labels], "dist": n x n matrix,
// "coords": optional [[x, y], ...], "ids": optional}. When both dist and
// coords are present, dist wins.
Instance load_instance_json(const nlohmann::json& j);

// CSV schema: header "id,group,x,y"; ids are arbitrary strings mapped to
// dense indices in file order. Distances are computed from the coordinates,
// rounded to 9 decimals and closed under shortest paths, like the generator.
Instance load_instance_csv(std::istream& in);

// Dispatches on the file extension (.csv, anything else is treated as JSON).
Instance load_instance_file(const std::string& path);

nlohmann::json instance_to_json(const Instance& inst);
std::string instance_to_json_string(const Instance& inst);  // canonical, newline-terminated
void save_instance_file(const Instance& inst, const std::string& path);

nlohmann::json clustering_to_json(const Clustering& c, const Instance& inst);
nlohmann::json result_to_json(const FairClusteringResult& r, const Instance& inst);
nlohmann::json oracle_to_json(const OracleResult& r, const Instance& inst);
nlohmann::json report_to_json(const DiagnosticsReport& r);

}  // namespace fairsor
