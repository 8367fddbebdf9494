#pragma once

#include <stdexcept>
#include <string>

namespace fairsor {

// A parameter or input file violates a precondition (maps to CLI exit 2).
class InvalidInputError : public std::runtime_error {
 public:
  explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

// The requested combinatorial object does not exist: degree bounds that no
// subgraph satisfies, no fair partition, and so on (maps to CLI exit 1).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Balanced clustering asked for groups of different sizes; no balanced
// partition can exist.
class GroupSizesUnequalError : public InfeasibleError {
 public:
  explicit GroupSizesUnequalError(const std::string& what) : InfeasibleError(what) {}
};

// A component of a degree-constrained subgraph turned out not to be a star.
// Reaching this means a solver bug, not bad input.
class ComponentNotAStarError : public std::logic_error {
 public:
  explicit ComponentNotAStarError(const std::string& what) : std::logic_error(what) {}
};

// No path between two cluster-graph vertices that should be connected;
// signals a supercluster construction bug.
class UnreachableVertexError : public std::logic_error {
 public:
  explicit UnreachableVertexError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fairsor
