#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "fairsor/analysis.hpp"
#include "fairsor/errors.hpp"
#include "fairsor/fair.hpp"
#include "fairsor/instance.hpp"
#include "fairsor/io.hpp"
#include "fairsor/oracle.hpp"
#include "fairsor/sor.hpp"

namespace py = pybind11;
using namespace fairsor;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sum-of-radii clustering under group balance constraints";

  py::register_exception<InvalidInputError>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "Infeasible", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def_readonly("n", &Instance::n)
      .def_readonly("ell", &Instance::ell)
      .def_readonly("group", &Instance::group)
      .def("d", &Instance::d, py::arg("p"), py::arg("q"))
      .def("group_sizes", &Instance::group_sizes)
      .def("id_of", &Instance::id_of, py::arg("p"))
      .def("to_json", [](const Instance& inst) { return instance_to_json_string(inst); })
      .def("__repr__", [](const Instance& inst) {
        return "<Instance n=" + std::to_string(inst.n) + " ell=" + std::to_string(inst.ell) + ">";
      });

  py::class_<Cluster>(m, "Cluster")
      .def_readonly("members", &Cluster::members)
      .def_readonly("center", &Cluster::center)
      .def_readonly("radius", &Cluster::radius);

  py::class_<Clustering>(m, "Clustering")
      .def_readonly("clusters", &Clustering::clusters)
      .def_readonly("cost", &Clustering::cost);

  py::class_<FairClusteringResult>(m, "FairClusteringResult")
      .def_readonly("clustering", &FairClusteringResult::clustering)
      .def_readonly("star_clustering", &FairClusteringResult::star_clustering)
      .def_readonly("dcs_weight", &FairClusteringResult::dcs_weight)
      .def_readonly("cost", &FairClusteringResult::cost)
      .def_readonly("fairness_ok", &FairClusteringResult::fairness_ok)
      .def_readonly("expansion_ratio", &FairClusteringResult::expansion_ratio)
      .def_readonly("alpha", &FairClusteringResult::alpha)
      .def_property_readonly("solver",
                             [](const FairClusteringResult& r) { return solver_name(r.solver); });

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("cost", &OracleResult::cost)
      .def_readonly("clustering", &OracleResult::clustering);

  py::class_<DiagnosticsReport>(m, "DiagnosticsReport")
      .def_readonly("instance_id", &DiagnosticsReport::instance_id)
      .def_readonly("lemma5_ratio", &DiagnosticsReport::lemma5_ratio)
      .def_readonly("lemma6_ratio", &DiagnosticsReport::lemma6_ratio)
      .def_readonly("max_switch_weight_ratio", &DiagnosticsReport::max_switch_weight_ratio)
      .def_readonly("color_degree_balance", &DiagnosticsReport::color_degree_balance)
      .def_readonly("expansion_ratio", &DiagnosticsReport::expansion_ratio)
      .def_readonly("alg_cost", &DiagnosticsReport::alg_cost)
      .def_readonly("opt_cost", &DiagnosticsReport::opt_cost)
      .def_readonly("violations", &DiagnosticsReport::violations)
      .def("passed", &DiagnosticsReport::pass)
      .def("to_json", [](const DiagnosticsReport& r) { return report_to_json(r).dump(2) + "\n"; });

  m.def(
      "generate_instance",
      [](std::uint64_t seed, int n, int ell, const std::string& mode, double box) {
        return generate_instance(seed, n, ell, parse_gen_mode(mode), box);
      },
      py::arg("seed"), py::arg("n"), py::arg("ell") = 2, py::arg("mode") = "euclidean-plane",
      py::arg("box") = 100.0);
  m.def("load_instance", &load_instance_file, py::arg("path"));
  m.def(
      "load_instance_json",
      [](const std::string& text) {
        try {
          return load_instance_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::exception& e) {
          throw InvalidInputError(std::string("cannot parse instance JSON: ") + e.what());
        }
      },
      py::arg("text"));
  m.def("save_instance", &save_instance_file, py::arg("instance"), py::arg("path"));
  m.def(
      "validate_metric",
      [](const Instance& inst, double tol) {
        std::vector<std::string> out;
        for (const MetricViolation& v : validate_metric(inst, tol)) out.push_back(v.describe());
        return out;
      },
      py::arg("instance"), py::arg("tol") = 0.0);

  m.def(
      "fair_tk_cluster",
      [](const Instance& inst, int t, int k, const std::string& solver, double epsilon) {
        return fair_tk_cluster(inst, t, k, parse_solver(solver), epsilon);
      },
      py::arg("instance"), py::arg("t"), py::arg("k"), py::arg("solver") = "primal-dual",
      py::arg("epsilon") = 0.1);
  m.def(
      "balanced_cluster",
      [](const Instance& inst, int k, const std::string& solver, double epsilon) {
        return balanced_cluster(inst, k, parse_solver(solver), epsilon);
      },
      py::arg("instance"), py::arg("k"), py::arg("solver") = "primal-dual",
      py::arg("epsilon") = 0.1);
  m.def("opt_fair_bruteforce", &opt_fair_bruteforce, py::arg("instance"), py::arg("t"),
        py::arg("k"));
  m.def("opt_balanced_bruteforce", &opt_balanced_bruteforce, py::arg("instance"), py::arg("k"));
  m.def(
      "diagnose_fair",
      [](const Instance& inst, int t, int k, const std::string& solver, double epsilon,
         const std::string& instance_id) {
        return diagnose_fair(inst, t, k, parse_solver(solver), epsilon, instance_id);
      },
      py::arg("instance"), py::arg("t"), py::arg("k"), py::arg("solver") = "primal-dual",
      py::arg("epsilon") = 0.1, py::arg("instance_id") = "");
  m.def(
      "diagnose_balanced",
      [](const Instance& inst, int k, const std::string& solver, double epsilon,
         const std::string& instance_id) {
        return diagnose_balanced(inst, k, parse_solver(solver), epsilon, instance_id);
      },
      py::arg("instance"), py::arg("k"), py::arg("solver") = "primal-dual",
      py::arg("epsilon") = 0.1, py::arg("instance_id") = "");
  m.def(
      "result_json",
      [](const FairClusteringResult& r, const Instance& inst) {
        return result_to_json(r, inst).dump(2) + "\n";
      },
      py::arg("result"), py::arg("instance"));
  m.def(
      "oracle_json",
      [](const OracleResult& r, const Instance& inst) {
        return oracle_to_json(r, inst).dump(2) + "\n";
      },
      py::arg("result"), py::arg("instance"));
}
