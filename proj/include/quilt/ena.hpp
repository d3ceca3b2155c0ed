#pragma once

#include "quilt/dissection.hpp"
#include "quilt/linsys.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace quilt {

/// Graph of the vertical scan: one node per maximal horizontal line, one
/// edge per subsquare from its top line to its bottom line.
struct EnaGraph {
  int side = 0;
  std::vector<int> node_y;                  // nodes sorted top to bottom, then West to East
  std::vector<std::pair<int, int>> edges;   // (top, bottom) per subsquare, in square order
  std::vector<int> lengths;                 // subsquare sizes, same order

  int node_count() const { return static_cast<int>(node_y.size()); }
  /// m x N matrix: +1 at the top node of an edge, -1 at its base.
  Eigen::MatrixXi incidence() const;
  /// incidence * incidence^T.
  Eigen::MatrixXi j() const;
};

EnaGraph vertical_scan(const Dissection& d);
/// Vertical scan of the transposed dissection.
EnaGraph horizontal_scan(const Dissection& d);

/// Solves the inner rows of j p = 0 with p = 0 at the top node and 1 at
/// the bottom node. Throws std::runtime_error if the system is singular.
std::vector<Rational> solve_potentials(const EnaGraph& g);

struct EnaVerdict {
  bool pass = false;
  std::string detail;
  explicit operator bool() const { return pass; }
};

/// Potentials equal the normalised line heights, each inner node balances
/// entering against leaving lengths, and i^T p = -L / side.
EnaVerdict verify(const Dissection& d);
/// Both scans.
EnaVerdict verify_both_scans(const Dissection& d);

}  // namespace quilt
