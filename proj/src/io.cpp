#include "fairsor/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fairsor/errors.hpp"

namespace fairsor {

namespace {

void finish_load(Instance& inst) {
  inst.ell = 0;
  for (int g : inst.group) inst.ell = std::max(inst.ell, g);
  validate_groups(inst);
  std::vector<MetricViolation> bad = validate_metric(inst, 0.0);
  if (!bad.empty())
    throw InvalidInputError("distance matrix is not a metric: " + bad.front().describe() +
                            (bad.size() > 1 ? " (+" + std::to_string(bad.size() - 1) + " more)" : ""));
}

void dist_from_coords(Instance& inst) {
  inst.dist.assign(static_cast<std::size_t>(inst.n) * inst.n, 0.0);
  for (int p = 0; p < inst.n; ++p)
    for (int q = p + 1; q < inst.n; ++q) {
      double dx = inst.coords[static_cast<std::size_t>(p)][0] - inst.coords[static_cast<std::size_t>(q)][0];
      double dy = inst.coords[static_cast<std::size_t>(p)][1] - inst.coords[static_cast<std::size_t>(q)][1];
      double d = round9(std::sqrt(dx * dx + dy * dy));
      inst.dist[static_cast<std::size_t>(p) * inst.n + q] = d;
      inst.dist[static_cast<std::size_t>(q) * inst.n + p] = d;
    }
  shortest_path_close(inst.dist, inst.n);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  for (std::string& s : out) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  }
  return out;
}

}  // namespace

Instance load_instance_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInputError("instance JSON must be an object");
  if (!j.contains("n") || !j.contains("groups"))
    throw InvalidInputError("instance JSON needs fields n and groups");
  Instance inst;
  inst.n = j.at("n").get<int>();
  if (inst.n < 1) throw InvalidInputError("instance must have at least one point");
  inst.group = j.at("groups").get<std::vector<int>>();
  if (static_cast<int>(inst.group.size()) != inst.n)
    throw InvalidInputError("groups has " + std::to_string(inst.group.size()) + " entries, expected " +
                            std::to_string(inst.n));
  if (j.contains("ids")) {
    inst.ids = j.at("ids").get<std::vector<std::string>>();
    if (static_cast<int>(inst.ids.size()) != inst.n)
      throw InvalidInputError("ids has the wrong length");
  }
  if (j.contains("coords")) {
    auto rows = j.at("coords").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(rows.size()) != inst.n) throw InvalidInputError("coords has the wrong length");
    for (const auto& r : rows) {
      if (r.size() != 2) throw InvalidInputError("coords rows must be [x, y]");
      inst.coords.push_back({r[0], r[1]});
    }
  }
  if (j.contains("dist")) {
    auto rows = j.at("dist").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(rows.size()) != inst.n) throw InvalidInputError("dist has the wrong row count");
    for (const auto& r : rows)
      if (static_cast<int>(r.size()) != inst.n)
        throw InvalidInputError("dist has a row of the wrong length");
    inst.dist.resize(static_cast<std::size_t>(inst.n) * inst.n);
    for (int p = 0; p < inst.n; ++p)
      for (int q = 0; q < inst.n; ++q)
        inst.dist[static_cast<std::size_t>(p) * inst.n + q] = rows[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
  } else if (!inst.coords.empty()) {
    dist_from_coords(inst);
  } else {
    throw InvalidInputError("instance JSON needs dist or coords");
  }
  finish_load(inst);
  return inst;
}

Instance load_instance_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInputError("empty CSV input");
  {
    std::vector<std::string> header = split_csv_line(line);
    if (header != std::vector<std::string>{"id", "group", "x", "y"})
      throw InvalidInputError("CSV header must be id,group,x,y");
  }
  Instance inst;
  std::set<std::string> seen;
  int lineno = 1;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 4)
      throw InvalidInputError("CSV line " + std::to_string(lineno) + " has " +
                              std::to_string(f.size()) + " fields, expected 4");
    if (!seen.insert(f[0]).second)
      throw InvalidInputError("duplicate id " + f[0] + " on CSV line " + std::to_string(lineno));
    try {
      std::size_t pos = 0;
      int g = std::stoi(f[1], &pos);
      if (pos != f[1].size()) throw InvalidInputError("bad group");
      double x = std::stod(f[2], &pos);
      if (pos != f[2].size()) throw InvalidInputError("bad x");
      double y = std::stod(f[3], &pos);
      if (pos != f[3].size()) throw InvalidInputError("bad y");
      inst.ids.push_back(f[0]);
      inst.group.push_back(g);
      inst.coords.push_back({x, y});
    } catch (const InvalidInputError&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidInputError("cannot parse CSV line " + std::to_string(lineno));
    }
  }
  inst.n = static_cast<int>(inst.group.size());
  if (inst.n < 1) throw InvalidInputError("CSV contains no points");
  dist_from_coords(inst);
  finish_load(inst);
  return inst;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot read " + path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return load_instance_csv(in);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError("cannot parse " + path + ": " + e.what());
  }
  return load_instance_json(j);
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["n"] = inst.n;
  j["groups"] = inst.group;
  nlohmann::json dist = nlohmann::json::array();
  for (int p = 0; p < inst.n; ++p) {
    nlohmann::json row = nlohmann::json::array();
    for (int q = 0; q < inst.n; ++q) row.push_back(inst.d(p, q));
    dist.push_back(std::move(row));
  }
  j["dist"] = std::move(dist);
  if (static_cast<int>(inst.coords.size()) == inst.n) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& c : inst.coords) coords.push_back({c[0], c[1]});
    j["coords"] = std::move(coords);
  }
  if (static_cast<int>(inst.ids.size()) == inst.n) j["ids"] = inst.ids;
  return j;
}

std::string instance_to_json_string(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write " + path);
  out << instance_to_json_string(inst);
}

nlohmann::json clustering_to_json(const Clustering& c, const Instance& inst) {
  nlohmann::json clusters = nlohmann::json::array();
  bool with_ids = static_cast<int>(inst.ids.size()) == inst.n;
  for (const Cluster& cl : c.clusters) {
    nlohmann::json jc;
    jc["members"] = cl.members;
    jc["center"] = cl.center;
    jc["radius"] = cl.radius;
    if (with_ids) {
      std::vector<std::string> names;
      for (int p : cl.members) names.push_back(inst.id_of(p));
      jc["member_ids"] = names;
      jc["center_id"] = inst.id_of(cl.center);
    }
    clusters.push_back(std::move(jc));
  }
  nlohmann::json j;
  j["clusters"] = std::move(clusters);
  j["cost"] = c.cost;
  return j;
}

nlohmann::json result_to_json(const FairClusteringResult& r, const Instance& inst) {
  nlohmann::json j = clustering_to_json(r.clustering, inst);
  j["fair"] = r.fairness_ok;
  j["k_used"] = static_cast<int>(r.clustering.clusters.size());
  j["dcs_weight"] = r.dcs_weight;
  j["expansion_ratio"] = r.expansion_ratio;
  j["solver"] = solver_name(r.solver);
  j["alpha"] = r.alpha;
  return j;
}

nlohmann::json oracle_to_json(const OracleResult& r, const Instance& inst) {
  return clustering_to_json(r.clustering, inst);
}

nlohmann::json report_to_json(const DiagnosticsReport& r) {
  nlohmann::json j;
  j["instance_id"] = r.instance_id;
  j["lemma5_ratio"] = r.lemma5_ratio;
  j["lemma6_ratio"] = r.lemma6_ratio;
  j["max_switch_weight_ratio"] = r.max_switch_weight_ratio;
  j["color_degree_balance"] = r.color_degree_balance;
  j["violations"] = r.violations;
  j["alg_cost"] = r.alg_cost;
  j["opt_cost"] = r.opt_cost;
  j["expansion_ratio"] = r.expansion_ratio;
  j["pass"] = r.pass();
  return j;
}

}  // namespace fairsor
