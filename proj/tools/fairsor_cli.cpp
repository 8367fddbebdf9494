#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairsor/analysis.hpp"
#include "fairsor/errors.hpp"
#include "fairsor/fair.hpp"
#include "fairsor/instance.hpp"
#include "fairsor/io.hpp"
#include "fairsor/oracle.hpp"

namespace {

using nlohmann::json;

void emit_error(const std::string& kind, const std::string& message) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fairsor::InvalidInputError("cannot write " + path);
  out << text;
}

// Shortest round-trip decimal form, same as the JSON serializer uses.
std::string num(double v) { return json(v).dump(); }

struct BenchRow {
  std::string id;
  int n = 0, ell = 2, t = 1, k = 1;
  double alg_cost = 0.0;
  double opt_cost = 0.0;
  bool fair = false;
  double dcs_weight = 0.0;
  double lemma5 = 0.0, lemma6 = 0.0, switch_bound = 0.0;
  bool diagnostics_pass = false;
  long long runtime_ms = 0;

  std::string ratio_cell() const {
    if (opt_cost > 0.0) return num(alg_cost / opt_cost);
    return alg_cost == 0.0 ? "exact" : "inf";
  }
  std::string csv() const {
    std::ostringstream os;
    os << id << ',' << n << ',' << ell << ',' << t << ',' << k << ',' << num(alg_cost) << ','
       << num(opt_cost) << ',' << ratio_cell() << ',' << (fair ? "true" : "false") << ','
       << num(dcs_weight) << ',' << num(lemma5) << ',' << num(lemma6) << ',' << num(switch_bound)
       << ',' << runtime_ms;
    return os.str();
  }
};

int run_bench(int trials, int n_max, int t_max, int k_max, std::uint64_t seed,
              fairsor::Solver solver, double epsilon, const std::string& out_path) {
  if (trials < 1) throw fairsor::InvalidInputError("--trials must be positive");
  if (n_max < 4 || n_max > 12)
    throw fairsor::InvalidInputError("--n-max must be between 4 and 12 (oracle range)");
  if (t_max < 1 || k_max < 1) throw fairsor::InvalidInputError("--t-max and --k-max must be positive");

  std::vector<BenchRow> rows(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(trials));

  auto run_one = [&](int i) {
    int t = 1 + i % t_max;
    int k = 1 + (i / 3) % k_max;
    int n = 4 + (n_max > 4 ? i % (n_max - 3) : 0);
    if (t == 1 && n % 2 != 0) n = n + 1 <= n_max ? n + 1 : n - 1;
    fairsor::GenMode mode =
        i % 2 == 0 ? fairsor::GenMode::EuclideanPlane : fairsor::GenMode::RandomMetric;
    double box = i % 5 == 4 ? 2.0 : 100.0;
    fairsor::Instance inst = fairsor::generate_instance(seed + static_cast<std::uint64_t>(i), n, 2, mode, box);

    BenchRow row;
    {
      std::ostringstream os;
      os << "trial-" << std::setw(4) << std::setfill('0') << i;
      row.id = os.str();
    }
    row.n = n;
    row.t = t;
    row.k = k;
    auto start = std::chrono::steady_clock::now();
    fairsor::FairClusteringResult res = fairsor::fair_tk_cluster(inst, t, k, solver, epsilon);
    auto stop = std::chrono::steady_clock::now();
    row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    row.alg_cost = res.cost;
    row.fair = res.fairness_ok;
    row.dcs_weight = res.dcs_weight;

    fairsor::DiagnosticsReport rep = fairsor::diagnose_fair(inst, t, k, solver, epsilon, row.id);
    row.opt_cost = rep.opt_cost;
    row.lemma5 = rep.lemma5_ratio;
    row.lemma6 = rep.lemma6_ratio;
    row.switch_bound = rep.max_switch_weight_ratio;
    row.diagnostics_pass = rep.pass();
    rows[static_cast<std::size_t>(i)] = std::move(row);
  };

  unsigned hw = std::thread::hardware_concurrency();
  int workers = std::min<int>(trials, std::max(1u, std::min(hw, 8u)));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= trials) return;
        try {
          run_one(i);
        } catch (...) {
          failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : failures)
    if (e) std::rethrow_exception(e);

  std::ostringstream csv;
  csv << "instance_id,n,ell,t,k,alg_cost,opt_cost,ratio,fair,dcs_weight,lemma5,lemma6,switch_bound,runtime_ms\n";
  for (const BenchRow& r : rows) csv << r.csv() << "\n";
  write_text(out_path, csv.str());

  double max_ratio = 0.0, sum_ratio = 0.0;
  int with_ratio = 0, exact_zero = 0, fair_pass = 0, diag_pass = 0;
  double max_l5 = 0.0, max_l6 = 0.0, max_sw = 0.0;
  for (const BenchRow& r : rows) {
    if (r.opt_cost > 0.0) {
      double ratio = r.alg_cost / r.opt_cost;
      max_ratio = std::max(max_ratio, ratio);
      sum_ratio += ratio;
      with_ratio++;
    } else if (r.alg_cost == 0.0) {
      exact_zero++;
    }
    if (r.fair) fair_pass++;
    if (r.diagnostics_pass) diag_pass++;
    max_l5 = std::max(max_l5, r.lemma5);
    max_l6 = std::max(max_l6, r.lemma6);
    max_sw = std::max(max_sw, r.switch_bound);
  }
  double alpha = fairsor::solver_alpha(solver);
  json summary;
  summary["trials"] = trials;
  summary["solver"] = fairsor::solver_name(solver);
  summary["alpha"] = alpha;
  summary["implied_bound"] = 48.0 * alpha * 3.0;
  summary["max_ratio"] = max_ratio;
  summary["mean_ratio"] = with_ratio > 0 ? sum_ratio / with_ratio : 0.0;
  summary["rows_with_ratio"] = with_ratio;
  summary["exact_zero_matches"] = exact_zero;
  summary["fair_pass"] = fair_pass;
  summary["diagnostics_pass"] = diag_pass;
  summary["max_lemma5"] = max_l5;
  summary["max_lemma6"] = max_l6;
  summary["max_switch_bound"] = max_sw;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-of-radii clustering under group balance constraints"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a deterministic instance file");
  std::uint64_t gen_seed = 1;
  int gen_n = 8, gen_ell = 2;
  std::string gen_mode = "euclidean-plane", gen_out;
  double gen_box = 100.0;
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--n", gen_n, "number of points");
  gen->add_option("--ell", gen_ell, "number of groups");
  gen->add_option("--mode", gen_mode, "euclidean-plane or random-metric");
  gen->add_option("--box", gen_box, "coordinate or weight range");
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  // shared clustering flags
  std::string in_path, out_path, t_str = "1", solver_str = "primal-dual";
  int k = 1, ell_expect = 0;
  double epsilon = 0.1;
  bool balanced = false;

  auto add_common = [&](CLI::App* sub, bool with_solver) {
    sub->add_option("--input", in_path, "instance file (.csv or JSON)")->required();
    sub->add_option("--t", t_str, "balance parameter (integer)");
    sub->add_option("--k", k, "cluster budget");
    sub->add_option("--ell", ell_expect, "expected group count (validated)");
    sub->add_flag("--balanced", balanced, "equal-representation mode (t = 1, any group count)");
    sub->add_option("--out", out_path, "output file (stdout when omitted)");
    if (with_solver) {
      sub->add_option("--solver", solver_str, "exact or primal-dual");
      sub->add_option("--epsilon", epsilon, "primal-dual accuracy knob");
    }
  };
  auto* cluster = app.add_subcommand("cluster", "Run the approximation pipeline");
  add_common(cluster, true);
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum (n <= 12)");
  add_common(oracle, false);
  auto* diagnose = app.add_subcommand("diagnose", "Pipeline + oracle + analysis checks");
  add_common(diagnose, true);

  // bench
  auto* bench = app.add_subcommand("bench", "Ratio table over generated instances");
  int trials = 50, n_max = 10, t_max = 3, k_max = 3;
  std::uint64_t bench_seed = 1;
  std::string bench_out, bench_solver = "primal-dual";
  double bench_eps = 0.1;
  bench->add_option("--trials", trials, "instance count");
  bench->add_option("--n-max", n_max, "largest instance size (4..12)");
  bench->add_option("--t-max", t_max, "largest balance parameter");
  bench->add_option("--k-max", k_max, "largest cluster budget");
  bench->add_option("--seed", bench_seed, "base seed; instance i uses seed+i");
  bench->add_option("--solver", bench_solver, "exact or primal-dual");
  bench->add_option("--epsilon", bench_eps, "primal-dual accuracy knob");
  bench->add_option("--out", bench_out, "CSV output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("invalid-input", e.what());
    return 2;
  }

  try {
    if (app.got_subcommand(gen)) {
      fairsor::Instance inst =
          fairsor::generate_instance(gen_seed, gen_n, gen_ell, fairsor::parse_gen_mode(gen_mode), gen_box);
      write_text(gen_out, fairsor::instance_to_json_string(inst));
      return 0;
    }
    if (app.got_subcommand(bench)) {
      return run_bench(trials, n_max, t_max, k_max, bench_seed, fairsor::parse_solver(bench_solver),
                       bench_eps, bench_out);
    }

    int t = fairsor::parse_balance_parameter(t_str);
    if (balanced && t != 1)
      throw fairsor::InvalidInputError("--balanced requires t = 1");
    fairsor::Instance inst = fairsor::load_instance_file(in_path);
    if (ell_expect > 0 && inst.ell != ell_expect)
      throw fairsor::InvalidInputError("instance has " + std::to_string(inst.ell) +
                                       " groups, expected " + std::to_string(ell_expect));

    if (app.got_subcommand(cluster)) {
      fairsor::Solver solver = fairsor::parse_solver(solver_str);
      fairsor::FairClusteringResult res =
          balanced ? fairsor::balanced_cluster(inst, k, solver, epsilon)
                   : fairsor::fair_tk_cluster(inst, t, k, solver, epsilon);
      write_text(out_path, fairsor::result_to_json(res, inst).dump(2) + "\n");
      return 0;
    }
    if (app.got_subcommand(oracle)) {
      fairsor::OracleResult res = balanced ? fairsor::opt_balanced_bruteforce(inst, k)
                                           : fairsor::opt_fair_bruteforce(inst, t, k);
      write_text(out_path, fairsor::oracle_to_json(res, inst).dump(2) + "\n");
      return 0;
    }
    if (app.got_subcommand(diagnose)) {
      fairsor::Solver solver = fairsor::parse_solver(solver_str);
      std::string id = in_path;
      fairsor::DiagnosticsReport rep =
          balanced ? fairsor::diagnose_balanced(inst, k, solver, epsilon, id)
                   : fairsor::diagnose_fair(inst, t, k, solver, epsilon, id);
      write_text(out_path, fairsor::report_to_json(rep).dump(2) + "\n");
      return 0;
    }
    emit_error("invalid-input", "no subcommand");
    return 2;
  } catch (const fairsor::InfeasibleError& e) {
    emit_error("infeasible", e.what());
    return 1;
  } catch (const fairsor::InvalidInputError& e) {
    emit_error("invalid-input", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 2;
  }
}
