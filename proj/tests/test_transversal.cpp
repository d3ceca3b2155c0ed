#include "quilt/dissection.hpp"
#include "quilt/pipeline.hpp"
#include "quilt/transversal.hpp"

#include <doctest.h>

#include <random>

using namespace quilt;

namespace {

// Complete sequence: around the vertex the blocks step 0,1,2,3 cyclically,
// each transition either stays or advances by one, and it advances exactly
// four times.
bool blocks_ok(const std::vector<int>& seq) {
  const int d = static_cast<int>(seq.size());
  int advances = 0;
  for (int k = 0; k < d; ++k) {
    int a = seq[k], b = seq[(k + 1) % d];
    if (b == a) continue;
    if (b != (a + 1) % 4) return false;
    ++advances;
  }
  return advances == 4;
}

bool vertex_oracle(const std::vector<Incidence>& cyc) {
  std::vector<int> holes;
  std::vector<int> seq(cyc.size());
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    if (cyc[k] == Incidence::unknown) holes.push_back(static_cast<int>(k));
    seq[k] = static_cast<int>(cyc[k]);
  }
  int total = 1 << (2 * holes.size());
  for (int c = 0; c < total; ++c) {
    for (std::size_t h = 0; h < holes.size(); ++h) seq[holes[h]] = (c >> (2 * h)) & 3;
    if (blocks_ok(seq)) return true;
  }
  return false;
}

// Triangle on face vertices 0,1,2; edge k joins k and k+1.
bool triangle_rule(const std::array<EdgeState, 3>& st) {
  struct Arc {
    bool ns;
    int tail, head;
  };
  std::array<Arc, 3> arcs{};
  for (int k = 0; k < 3; ++k) {
    int a = k, b = (k + 1) % 3;
    bool ns = st[k] == EdgeState::ns_forward || st[k] == EdgeState::ns_backward;
    bool fwd = st[k] == EdgeState::ns_forward || st[k] == EdgeState::we_forward;
    arcs[k] = {ns, fwd ? a : b, fwd ? b : a};
  }
  int ns_count = arcs[0].ns + arcs[1].ns + arcs[2].ns;
  if (ns_count == 0 || ns_count == 3) return false;
  bool majority = ns_count == 2;
  std::vector<Arc> same;
  for (const auto& a : arcs)
    if (a.ns == majority) same.push_back(a);
  int common = -1;
  for (int v : {same[0].tail, same[0].head})
    if (v == same[1].tail || v == same[1].head) common = v;
  bool enter0 = same[0].head == common, enter1 = same[1].head == common;
  return enter0 == enter1;
}

bool triangle_oracle(const std::array<EdgeState, 3>& partial) {
  for (int c = 0; c < 64; ++c) {
    std::array<EdgeState, 3> full{};
    bool fits = true;
    for (int k = 0; k < 3; ++k) {
      full[k] = static_cast<EdgeState>(1 + ((c >> (2 * k)) & 3));
      if (partial[k] != EdgeState::unassigned && partial[k] != full[k]) fits = false;
    }
    if (fits && triangle_rule(full)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("vertex condition matches brute-force completion") {
  std::mt19937 rng(5);
  int satisfiable = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    int d = 3 + trial % 7;
    std::vector<Incidence> cyc(d);
    for (auto& i : cyc) i = static_cast<Incidence>(rng() % 5);
    bool expect = vertex_oracle(cyc);
    satisfiable += expect;
    CHECK(vertex_condition(std::span<const Incidence>(cyc)) == expect);
  }
  CHECK(satisfiable > 1000);
}

TEST_CASE("vertex condition on exhaustive short complete sequences") {
  for (int d = 4; d <= 7; ++d) {
    int total = 1;
    for (int k = 0; k < d; ++k) total *= 4;
    for (int c = 0; c < total; ++c) {
      std::vector<Incidence> cyc(d);
      int x = c;
      for (auto& i : cyc) {
        i = static_cast<Incidence>(x % 4);
        x /= 4;
      }
      CHECK(vertex_condition(std::span<const Incidence>(cyc)) == vertex_oracle(cyc));
    }
  }
}

TEST_CASE("triangle condition matches the stated rule") {
  for (int i = 0; i < 125; ++i) {
    std::array<EdgeState, 3> st{static_cast<EdgeState>(i % 5), static_cast<EdgeState>((i / 5) % 5),
                                static_cast<EdgeState>(i / 25)};
    CHECK(triangle_condition(st[0], st[1], st[2]) == triangle_oracle(st));
  }
  // 24 of the 64 complete labellings are allowed: 6 colourings with a
  // two-edge colour class, 2 directions for the pair, 2 for the odd edge.
  int allowed = 0;
  for (int c = 0; c < 64; ++c)
    allowed += triangle_condition(static_cast<EdgeState>(1 + (c & 3)), static_cast<EdgeState>(1 + ((c >> 2) & 3)),
                                  static_cast<EdgeState>(1 + ((c >> 4) & 3)));
  CHECK(allowed == 24);
}

TEST_CASE("contact graphs of dissections are valid structures") {
  int checked = 0;
  for (int order = 4; order <= 9; ++order)
    for (const auto& d : run_part(order, 0, 1, WidthMode::automatic, false).dissections)
      for (CrossBreak rule : {CrossBreak::nw_se_ns, CrossBreak::nw_se_we, CrossBreak::ne_sw_ns, CrossBreak::ne_sw_we})
        for (int g = 0; g < 8; ++g) {
          auto s = structure_from_dissection(transformed(d, static_cast<Symmetry>(g)), rule);
          std::string why;
          CHECK_MESSAGE(is_valid_structure(s, &why), why);
          CHECK(is_valid_disk_triangulation(s.base));
          ++checked;
        }
  CHECK(checked == 32 * 26);
}

TEST_CASE("equation pruning loses no solutions") {
  // Unpruned search, then realize every complete structure.
  const std::map<int, std::pair<int, int>> solved_solutions{{4, {1, 2}}, {5, {0, 0}}, {6, {2, 4}}, {7, {5, 17}}};
  for (auto [order, expect] : solved_solutions) {
    int solved = 0, solutions = 0, pruned_solutions = 0;
    generate(order, [&](const PlaneTriangulation& t) {
      if (structural_filter(t) != FilterVerdict::accept) return true;
      int found = 0;
      enumerate_structures(t, cardinals_for(t, 0), nullptr, [&](const TransversalStructure& s) {
        CHECK(is_valid_structure(s));
        if (realize(s)) ++found;
      });
      LocalEquationHook hook;
      enumerate_structures(t, cardinals_for(t, 0), &hook, [&](const TransversalStructure& s) {
        if (realize(s)) ++pruned_solutions;
      });
      solved += found > 0;
      solutions += found;
      return true;
    });
    CHECK(solved == expect.first);
    CHECK(solutions == expect.second);
    CHECK(pruned_solutions == solutions);
  }
}

TEST_CASE("cardinal convention") {
  PlaneTriangulation t;
  generate(4, [&](const PlaneTriangulation& g) {
    t = g;
    return false;
  });
  Cardinals c = cardinals_for(t, 0);
  CHECK(c.north == t.outer[0]);
  CHECK(c.east == t.outer[1]);
  CHECK(c.south == t.outer[2]);
  CHECK(c.west == t.outer[3]);
  Cardinals r = cardinals_for(t, 1);
  CHECK(r.north == t.outer[1]);
  auto s = make_structure(t, c);
  for (Vertex v = 4; v < t.vertex_count(); ++v) {
    if (t.adjacent(c.north, v)) CHECK(s.incidence(v, c.north) == Incidence::ns_in);
    if (t.adjacent(c.east, v)) CHECK(s.incidence(v, c.east) == Incidence::we_out);
    if (t.adjacent(c.south, v)) CHECK(s.incidence(v, c.south) == Incidence::ns_out);
    if (t.adjacent(c.west, v)) CHECK(s.incidence(v, c.west) == Incidence::we_in);
  }
  // Across all four rotations the order-4 graph gives 8 solutions.
  int all = 0;
  for (int shift = 0; shift < 4; ++shift) {
    LocalEquationHook hook;
    enumerate_structures(t, cardinals_for(t, shift), &hook, [&](const TransversalStructure& st) { all += bool(realize(st)); });
  }
  CHECK(all == 8);
}
