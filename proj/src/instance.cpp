#include "fairsor/instance.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fairsor/errors.hpp"
#include "fairsor/rng.hpp"

namespace fairsor {

namespace {

// A few ulps of slack relative to the operand scale, so exact-by-construction
// matrices pass with tol = 0 even though multiples of 1e-9 are not binary
// fractions.
double ulp_slack(double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return 32.0 * eps * scale;
}

}  // namespace

std::vector<int> Instance::group_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(ell) + 1, 0);
  for (int g : group) sizes[static_cast<std::size_t>(g)]++;
  return sizes;
}

std::vector<int> Instance::group_members(int label) const {
  std::vector<int> members;
  for (int p = 0; p < n; ++p)
    if (group[static_cast<std::size_t>(p)] == label) members.push_back(p);
  return members;
}

std::string Instance::id_of(int p) const {
  if (!ids.empty()) return ids[static_cast<std::size_t>(p)];
  return "p" + std::to_string(p);
}

std::string MetricViolation::describe() const {
  std::ostringstream os;
  os.precision(12);
  switch (kind) {
    case Kind::NonzeroDiagonal:
      os << "d(" << p << "," << p << ") = " << lhs << " != 0";
      break;
    case Kind::Negative:
      os << "d(" << p << "," << q << ") = " << lhs << " < 0";
      break;
    case Kind::Asymmetry:
      os << "d(" << p << "," << q << ") = " << lhs << " != d(" << q << "," << p << ") = " << rhs;
      break;
    case Kind::Triangle:
      os << "d(" << p << "," << q << ") = " << lhs << " > d(" << p << "," << r << ") + d(" << r
         << "," << q << ") = " << rhs;
      break;
  }
  return os.str();
}

std::vector<MetricViolation> validate_metric(const Instance& inst, double tol) {
  std::vector<MetricViolation> out;
  const int n = inst.n;
  if (static_cast<int>(inst.dist.size()) != n * n)
    throw InvalidInputError("distance matrix is not n x n");

  for (int p = 0; p < n; ++p) {
    double dpp = inst.d(p, p);
    if (std::fabs(dpp) > tol + ulp_slack(dpp, 0.0))
      out.push_back({MetricViolation::Kind::NonzeroDiagonal, p, p, -1, dpp, 0.0});
  }
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      double a = inst.d(p, q), b = inst.d(q, p);
      if (a < -(tol + ulp_slack(a, 0.0)))
        out.push_back({MetricViolation::Kind::Negative, p, q, -1, a, 0.0});
      if (std::fabs(a - b) > tol + ulp_slack(a, b))
        out.push_back({MetricViolation::Kind::Asymmetry, p, q, -1, a, b});
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      for (int r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        double lhs = inst.d(p, q);
        double rhs = inst.d(p, r) + inst.d(r, q);
        if (lhs > rhs + tol + ulp_slack(lhs, rhs))
          out.push_back({MetricViolation::Kind::Triangle, p, q, r, lhs, rhs});
      }
    }
  return out;
}

void validate_groups(const Instance& inst) {
  if (inst.n <= 0) throw InvalidInputError("instance has no points");
  if (inst.ell < 1) throw InvalidInputError("instance has no groups");
  if (static_cast<int>(inst.group.size()) != inst.n)
    throw InvalidInputError("group vector size differs from n");
  std::vector<int> seen(static_cast<std::size_t>(inst.ell) + 1, 0);
  for (int g : inst.group) {
    if (g < 1 || g > inst.ell)
      throw InvalidInputError("group label " + std::to_string(g) + " outside 1.." +
                              std::to_string(inst.ell));
    seen[static_cast<std::size_t>(g)]++;
  }
  for (int g = 1; g <= inst.ell; ++g)
    if (seen[static_cast<std::size_t>(g)] == 0)
      throw InvalidInputError("group " + std::to_string(g) + " is empty");
}

GenMode parse_gen_mode(const std::string& name) {
  if (name == "euclidean-plane") return GenMode::EuclideanPlane;
  if (name == "random-metric") return GenMode::RandomMetric;
  throw InvalidInputError("unknown generation mode: " + name);
}

std::string gen_mode_name(GenMode mode) {
  return mode == GenMode::EuclideanPlane ? "euclidean-plane" : "random-metric";
}

double round9(double x) { return std::round(x * 1e9) / 1e9; }

void shortest_path_close(std::vector<double>& m, int n) {
  auto at = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i) * n + j]; };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        double dik = at(i, k);
        for (int j = 0; j < n; ++j) {
          double via = dik + at(k, j);
          if (via < at(i, j)) {
            at(i, j) = via;
            changed = true;
          }
        }
      }
  }
}

Instance generate_instance(std::uint64_t seed, int n, int ell, GenMode mode, double box) {
  if (n < 1) throw InvalidInputError("n must be positive");
  if (ell < 1) throw InvalidInputError("ell must be positive");
  if (n < ell) throw InvalidInputError("n < ell: some group would be empty");
  if (!(box >= 1.0)) throw InvalidInputError("box must be at least 1");

  Rng rng(seed);
  Instance inst;
  inst.n = n;
  inst.ell = ell;
  inst.dist.assign(static_cast<std::size_t>(n) * n, 0.0);

  const auto b = static_cast<std::int64_t>(std::llround(box));
  if (mode == GenMode::EuclideanPlane) {
    inst.coords.resize(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
      inst.coords[static_cast<std::size_t>(p)] = {static_cast<double>(rng.uniform(0, b)),
                                                  static_cast<double>(rng.uniform(0, b))};
    }
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double dx = inst.coords[static_cast<std::size_t>(p)][0] -
                    inst.coords[static_cast<std::size_t>(q)][0];
        double dy = inst.coords[static_cast<std::size_t>(p)][1] -
                    inst.coords[static_cast<std::size_t>(q)][1];
        double d = round9(std::sqrt(dx * dx + dy * dy));
        inst.dist[static_cast<std::size_t>(p) * n + q] = d;
        inst.dist[static_cast<std::size_t>(q) * n + p] = d;
      }
    // Rounding can dent the triangle inequality for collinear triples with
    // irrational distances; close once so the stored matrix is a metric.
    shortest_path_close(inst.dist, n);
  } else {
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double d = static_cast<double>(rng.uniform(1, b));
        inst.dist[static_cast<std::size_t>(p) * n + q] = d;
        inst.dist[static_cast<std::size_t>(q) * n + p] = d;
      }
    shortest_path_close(inst.dist, n);
  }

  inst.group.resize(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) inst.group[static_cast<std::size_t>(p)] = p % ell + 1;
  rng.shuffle(inst.group);
  return inst;
}

}  // namespace fairsor
