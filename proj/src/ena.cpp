#include "quilt/ena.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace quilt {

Eigen::MatrixXi EnaGraph::incidence() const {
  Eigen::MatrixXi i = Eigen::MatrixXi::Zero(node_count(), static_cast<int>(edges.size()));
  for (std::size_t r = 0; r < edges.size(); ++r) {
    i(edges[r].first, r) = 1;
    i(edges[r].second, r) = -1;
  }
  return i;
}

Eigen::MatrixXi EnaGraph::j() const {
  Eigen::MatrixXi i = incidence();
  return i * i.transpose();
}

EnaGraph vertical_scan(const Dissection& d) {
  struct Segment {
    int y, x0, x1, square;
    bool top;
  };
  std::vector<Segment> segs;
  for (std::size_t k = 0; k < d.squares.size(); ++k) {
    const Square& s = d.squares[k];
    segs.push_back({s.y, s.x, s.x + s.size, static_cast<int>(k), true});
    segs.push_back({s.y + s.size, s.x, s.x + s.size, static_cast<int>(k), false});
  }
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return std::tie(a.y, a.x0) < std::tie(b.y, b.x0); });
  EnaGraph g;
  g.side = d.side;
  g.edges.assign(d.squares.size(), {-1, -1});
  for (const auto& s : d.squares) g.lengths.push_back(s.size);
  // Segments on one level join while their closed intervals meet.
  std::size_t k = 0;
  while (k < segs.size()) {
    int node = g.node_count();
    g.node_y.push_back(segs[k].y);
    int reach = segs[k].x1;
    std::size_t first = k;
    while (k < segs.size() && segs[k].y == segs[first].y && (k == first || segs[k].x0 <= reach)) {
      reach = std::max(reach, segs[k].x1);
      auto& e = g.edges[segs[k].square];
      (segs[k].top ? e.first : e.second) = node;
      ++k;
    }
  }
  return g;
}

EnaGraph horizontal_scan(const Dissection& d) { return vertical_scan(transformed(d, Symmetry::transpose)); }

std::vector<Rational> solve_potentials(const EnaGraph& g) {
  const int m = g.node_count();
  if (m < 2) throw std::runtime_error("ENA graph needs at least two nodes");
  Eigen::MatrixXi j = g.j();
  LinearSystem sys(m, WidthMode::automatic);
  std::vector<std::int64_t> row(m, 0);
  row[0] = 1;
  sys.add_equation(row, 0);
  row.assign(m, 0);
  row[m - 1] = 1;
  sys.add_equation(row, 1);
  for (int h = 1; h + 1 < m; ++h) {
    for (int k = 0; k < m; ++k) row[k] = j(h, k);
    if (sys.add_equation(row, 0) == AddResult::inconsistent) throw std::runtime_error("ENA system inconsistent");
  }
  auto solved = sys.solve();
  if (!std::holds_alternative<UniqueSolution>(solved)) throw std::runtime_error("ENA system singular");
  return std::get<UniqueSolution>(solved).values;
}

namespace {

EnaVerdict check(const Dissection& d, const EnaGraph& g) {
  auto fail = [](std::string why) { return EnaVerdict{false, std::move(why)}; };
  if (auto err = tiling_error(d)) return fail("not a tiling: " + *err);
  const int m = g.node_count();
  if (g.node_y.front() != 0 || g.node_y.back() != d.side) return fail("top or bottom node missing");
  for (int h = 1; h < m; ++h)
    if (g.node_y[h] == 0 || g.node_y[h - 1] == d.side) return fail("boundary line split");
  Eigen::MatrixXi i = g.incidence();
  for (int r = 0; r < i.cols(); ++r)
    if ((i.col(r).array() == 1).count() != 1 || (i.col(r).array() == -1).count() != 1)
      return fail("edge " + std::to_string(r) + " lacks a single top and base");
  std::vector<Rational> p;
  try {
    p = solve_potentials(g);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  for (int h = 0; h < m; ++h)
    if (p[h] != Rational(g.node_y[h], d.side)) return fail("potential of node " + std::to_string(h));
  for (std::size_t r = 0; r < g.edges.size(); ++r)
    if (p[g.edges[r].first] - p[g.edges[r].second] != Rational(-g.lengths[r], d.side))
      return fail("length of edge " + std::to_string(r));
  for (int h = 1; h + 1 < m; ++h) {
    long long in = 0, out = 0;
    for (std::size_t r = 0; r < g.edges.size(); ++r) {
      if (g.edges[r].second == h) in += g.lengths[r];
      if (g.edges[r].first == h) out += g.lengths[r];
    }
    if (in != out) return fail("node " + std::to_string(h) + " unbalanced");
  }
  return {true, {}};
}

}  // namespace

EnaVerdict verify(const Dissection& d) {
  if (auto err = tiling_error(d)) return {false, "not a tiling: " + *err};
  return check(d, vertical_scan(d));
}

EnaVerdict verify_both_scans(const Dissection& d) {
  if (auto v = verify(d); !v) return v;
  Dissection t = transformed(d, Symmetry::transpose);
  if (auto v = check(t, vertical_scan(t)); !v) return {false, "horizontal scan: " + v.detail};
  return {true, {}};
}

}  // namespace quilt
