#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fairsor {

// A finite colored metric space: n points, 1-based group labels 1..ell, and
// a dense symmetric distance matrix. The matrix is the ground truth for all
// downstream computation; coordinates, when present, only record how it was
// produced.
struct Instance {
  int n = 0;
  int ell = 0;
  std::vector<int> group;                     // point -> label in 1..ell
  std::vector<double> dist;                   // n*n, row-major
  std::vector<std::array<double, 2>> coords;  // optional
  std::vector<std::string> ids;               // optional external ids

  double d(int p, int q) const { return dist[static_cast<std::size_t>(p) * n + q]; }
  std::vector<int> group_sizes() const;            // indexed 1..ell, [0] unused
  std::vector<int> group_members(int label) const; // ascending point ids
  std::string id_of(int p) const;                  // external id or "p<index>"
};

struct MetricViolation {
  enum class Kind { NonzeroDiagonal, Negative, Asymmetry, Triangle };
  Kind kind = Kind::Triangle;
  int p = -1, q = -1, r = -1;   // witness points; r is the midpoint for Triangle
  double lhs = 0.0, rhs = 0.0;  // the comparison lhs <= rhs that failed
  std::string describe() const;
};

// Checks zero diagonal, nonnegativity, symmetry and the triangle inequality
// within additive tolerance `tol`. Comparisons carry a few ulps of slack so
// matrices that are exact by construction verify with tol = 0 despite binary
// rounding of decimal values.
std::vector<MetricViolation> validate_metric(const Instance& inst, double tol);

// Throws InvalidInputError unless labels are 1..ell and every group is
// nonempty.
void validate_groups(const Instance& inst);

enum class GenMode { EuclideanPlane, RandomMetric };
GenMode parse_gen_mode(const std::string& name);  // "euclidean-plane" | "random-metric"
std::string gen_mode_name(GenMode mode);

// Deterministic generator.
//   EuclideanPlane: integer coordinates in [0, box]^2; pairwise distances are
//     rounded once to 9 decimals and then closed under shortest paths, so the
//     stored matrix is a metric exactly as stored.
//   RandomMetric:   integer edge weights in [1, box] closed under shortest
//     paths (no coordinates).
// Groups are assigned round-robin and the label vector is then shuffled, so
// group sizes differ by at most one and every group is nonempty for n >= ell.
Instance generate_instance(std::uint64_t seed, int n, int ell, GenMode mode, double box);

// Round half away from zero to 9 decimal digits; the one rounding step
// applied to computed Euclidean distances.
double round9(double x);

// In-place Floyd-Warshall closure of an n*n matrix, iterated to a fixpoint so
// the result satisfies the triangle inequality under double arithmetic.
void shortest_path_close(std::vector<double>& m, int n);

}  // namespace fairsor
