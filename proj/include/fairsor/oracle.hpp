#pragma once

#include "fairsor/fair.hpp"
#include "fairsor/instance.hpp"

namespace fairsor {

struct OracleResult {
  double cost = 0.0;
  Clustering clustering;
};

// Exhaustive optimum over every partition of the points into at most k
// nonempty parts (restricted-growth-string order), keeping the cheapest one
// that passes verify_fair. Pruning is on cost only; fairness is not
// prefix-monotone, so partial assignments are never rejected early on it.
// Requires n <= 12. Throws InfeasibleError when no fair partition exists
// (equivalently, when the whole point set is not t-balanced).
OracleResult opt_fair_bruteforce(const Instance& inst, int t, int k);

// Same search filtered by verify_balanced; requires equal group sizes.
OracleResult opt_balanced_bruteforce(const Instance& inst, int k);

}  // namespace fairsor
