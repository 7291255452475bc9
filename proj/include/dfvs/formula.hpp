#pragma once

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfvs {

/// Requirement that the listed indices appear in increasing position in a permutation.
struct PermConstraint {
  std::vector<int> indices;
  bool operator==(const PermConstraint&) const = default;
};

/// Disjunction of constraints.
using PermClause = std::vector<PermConstraint>;

/// Conjunction of clauses over permutation indices 1..n.
struct PermFormula {
  int n = 0;
  std::vector<PermClause> clauses;

  bool operator==(const PermFormula&) const = default;

  /// Throws std::invalid_argument on empty clauses, out-of-range or repeated indices.
  void check() const {
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      if (clauses[c].empty()) throw std::invalid_argument("clause " + std::to_string(c) + " is empty");
      for (const auto& con : clauses[c]) {
        if (con.indices.size() < 2) throw std::invalid_argument("constraint needs at least two indices");
        auto sorted = con.indices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
          throw std::invalid_argument("constraint repeats an index");
        if (sorted.front() < 1 || sorted.back() > n) throw std::invalid_argument("constraint index out of range");
      }
    }
  }

  /// Every clause has length 3 or 1, every constraint has two indices, and no
  /// index repeats inside a clause.
  bool is_structured_2formula() const {
    for (const auto& clause : clauses) {
      if (clause.size() != 1 && clause.size() != 3) return false;
      std::vector<int> seen;
      for (const auto& con : clause) {
        if (con.indices.size() != 2) return false;
        seen.insert(seen.end(), con.indices.begin(), con.indices.end());
      }
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
    return true;
  }
};

inline std::ostream& operator<<(std::ostream& out, const PermFormula& f) {
  out << "n " << f.n << " clauses " << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    out << clause.size();
    for (const auto& con : clause) {
      out << " (";
      for (std::size_t i = 0; i < con.indices.size(); ++i) out << (i ? " " : "") << con.indices[i];
      out << ')';
    }
    out << '\n';
  }
  return out;
}

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

/// k x k hitting set with thin sets: every set holds at most one cell per row.
struct HittingSetInstance {
  int k = 0;
  std::vector<std::vector<Cell>> sets;

  bool is_thin() const {
    for (const auto& s : sets) {
      std::vector<int> rows;
      for (const Cell& c : s) {
        if (c.row < 1 || c.row > k || c.col < 1 || c.col > k) return false;
        rows.push_back(c.row);
      }
      std::sort(rows.begin(), rows.end());
      if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) return false;
    }
    return true;
  }
};

}  // namespace dfvs
