#include "quilt/transversal.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>
#include <string>

namespace quilt {

Cardinals cardinals_for(const PlaneTriangulation& t, int shift) {
  const auto& o = t.outer;
  return {o[shift % 4], o[(shift + 1) % 4], o[(shift + 2) % 4], o[(shift + 3) % 4]};
}

TransversalStructure::TransversalStructure(PlaneTriangulation t, Cardinals c) : base(std::move(t)), cardinals(c) {
  edges = base.edges();
  state.assign(edges.size(), EdgeState::unassigned);
  const int n = base.vertex_count();
  edge_index_.assign(n * n, -1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    edge_index_[u * n + v] = edge_index_[v * n + u] = static_cast<int>(e);
  }
}

std::optional<DirectedEdge> TransversalStructure::label(int edge) const {
  auto [u, v] = edges[edge];
  switch (state[edge]) {
    case EdgeState::unassigned: return std::nullopt;
    case EdgeState::ns_forward: return DirectedEdge{Colour::north_south, u, v};
    case EdgeState::ns_backward: return DirectedEdge{Colour::north_south, v, u};
    case EdgeState::we_forward: return DirectedEdge{Colour::west_east, u, v};
    case EdgeState::we_backward: return DirectedEdge{Colour::west_east, v, u};
  }
  return std::nullopt;
}

void TransversalStructure::set(Vertex tail, Vertex head, Colour c) {
  int e = edge_id(tail, head);
  if (e < 0) throw std::invalid_argument("TransversalStructure::set: not an edge");
  bool forward = tail < head;
  if (c == Colour::north_south)
    state[e] = forward ? EdgeState::ns_forward : EdgeState::ns_backward;
  else
    state[e] = forward ? EdgeState::we_forward : EdgeState::we_backward;
}

Incidence TransversalStructure::incidence(Vertex v, Vertex u) const {
  const bool low = v < u;  // v is the lower end, so "forward" leaves v
  switch (state[edge_id(v, u)]) {
    case EdgeState::unassigned: return Incidence::unknown;
    case EdgeState::ns_forward: return low ? Incidence::ns_out : Incidence::ns_in;
    case EdgeState::ns_backward: return low ? Incidence::ns_in : Incidence::ns_out;
    case EdgeState::we_forward: return low ? Incidence::we_out : Incidence::we_in;
    case EdgeState::we_backward: return low ? Incidence::we_in : Incidence::we_out;
  }
  return Incidence::unknown;
}

bool TransversalStructure::complete() const {
  return std::none_of(state.begin(), state.end(), [](EdgeState s) { return s == EdgeState::unassigned; });
}

bool vertex_condition(std::span<const Incidence> cyclic) {
  const int d = static_cast<int>(cyclic.size());
  if (d < 4) return false;
  auto allowed = [](Incidence i) -> unsigned {
    return i == Incidence::unknown ? 0xFu : 1u << static_cast<unsigned>(i);
  };
  for (int s = 0; s < d; ++s) {
    // Block 0 starts at s; the position before it must end block 3.
    if (!(allowed(cyclic[s]) & 1u) || !(allowed(cyclic[(s + d - 1) % d]) & 8u)) continue;
    unsigned mask = 1u;
    for (int k = 1; k < d && mask; ++k) mask = ((mask | (mask << 1)) & 0xFu) & allowed(cyclic[(s + k) % d]);
    if (mask & 8u) return true;
  }
  return false;
}

bool vertex_condition(const TransversalStructure& s, Vertex v) {
  const auto& rot = s.base.rotation[v];
  std::array<Incidence, 64> buf{};
  std::vector<Incidence> big;
  Incidence* out = buf.data();
  if (rot.size() > buf.size()) {
    big.resize(rot.size());
    out = big.data();
  }
  for (std::size_t k = 0; k < rot.size(); ++k) out[k] = s.incidence(v, rot[k]);
  return vertex_condition(std::span<const Incidence>(out, rot.size()));
}

namespace {

EdgeState reversed(EdgeState s) {
  switch (s) {
    case EdgeState::ns_forward: return EdgeState::ns_backward;
    case EdgeState::ns_backward: return EdgeState::ns_forward;
    case EdgeState::we_forward: return EdgeState::we_backward;
    case EdgeState::we_backward: return EdgeState::we_forward;
    default: return s;
  }
}

bool triangle_complete_ok(const std::array<EdgeState, 3>& st) {
  // Edge k joins face positions k and k+1; forward points k -> k+1.
  std::array<int, 3> colour{}, head{};
  for (int k = 0; k < 3; ++k) {
    colour[k] = (st[k] == EdgeState::ns_forward || st[k] == EdgeState::ns_backward) ? 0 : 1;
    bool fwd = st[k] == EdgeState::ns_forward || st[k] == EdgeState::we_forward;
    head[k] = fwd ? (k + 1) % 3 : k;
  }
  if (colour[0] == colour[1] && colour[1] == colour[2]) return false;
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3;
    if (colour[a] != colour[b]) continue;
    // Edges a and b share face vertex b.
    bool ta = head[a] == b;
    bool tb = head[b] == b;
    return ta == tb;
  }
  return false;
}

struct TriangleTable {
  std::array<bool, 125> ok{};
  TriangleTable() {
    for (int i = 0; i < 125; ++i) {
      std::array<int, 3> s{i % 5, (i / 5) % 5, i / 25};
      bool any = false;
      for (int c = 0; c < 64 && !any; ++c) {
        std::array<EdgeState, 3> full{};
        bool consistent = true;
        for (int k = 0; k < 3; ++k) {
          int choice = 1 + ((c >> (2 * k)) & 3);
          if (s[k] != 0 && s[k] != choice) consistent = false;
          full[k] = static_cast<EdgeState>(choice);
        }
        if (consistent && triangle_complete_ok(full)) any = true;
      }
      ok[i] = any;
    }
  }
};

const TriangleTable& triangle_table() {
  static const TriangleTable table;
  return table;
}

EdgeState face_relative(const TransversalStructure& s, Vertex a, Vertex b) {
  EdgeState st = s.state[s.edge_id(a, b)];
  return a < b ? st : reversed(st);
}

}  // namespace

bool triangle_condition(EdgeState ab, EdgeState bc, EdgeState ca) {
  int idx = static_cast<int>(ab) + 5 * static_cast<int>(bc) + 25 * static_cast<int>(ca);
  return triangle_table().ok[idx];
}

bool triangle_condition(const TransversalStructure& s, const std::array<Vertex, 3>& f) {
  return triangle_condition(face_relative(s, f[0], f[1]), face_relative(s, f[1], f[2]), face_relative(s, f[2], f[0]));
}

TransversalStructure make_structure(const PlaneTriangulation& t, const Cardinals& c) {
  TransversalStructure s(t, c);
  auto fix = [&](Vertex tail, Vertex head, Colour col) {
    if (s.edge_id(tail, head) >= 0) s.set(tail, head, col);
  };
  fix(c.north, c.east, Colour::north_south);
  fix(c.north, c.west, Colour::north_south);
  fix(c.east, c.south, Colour::north_south);
  fix(c.west, c.south, Colour::north_south);
  for (Vertex v = 4; v < t.vertex_count(); ++v) {
    fix(c.north, v, Colour::north_south);
    fix(v, c.south, Colour::north_south);
    fix(c.west, v, Colour::west_east);
    fix(v, c.east, Colour::west_east);
  }
  return s;
}

bool is_valid_structure(const TransversalStructure& s, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (!s.complete()) return fail("incomplete");
  TransversalStructure fixed = make_structure(s.base, s.cardinals);
  for (std::size_t e = 0; e < s.edges.size(); ++e)
    if (fixed.state[e] != EdgeState::unassigned && fixed.state[e] != s.state[e])
      return fail("cardinal edge " + std::to_string(e) + " not in the fixed convention");
  for (Vertex v = 4; v < s.base.vertex_count(); ++v)
    if (!vertex_condition(s, v)) return fail("vertex condition at " + std::to_string(v));
  for (const auto& f : s.base.triangles())
    if (!triangle_condition(s, f)) return fail("triangle condition");
  return true;
}

namespace {

class StructureSearch {
 public:
  StructureSearch(const PlaneTriangulation& t, const Cardinals& c, EquationFeedback* hook,
                  const std::function<void(const TransversalStructure&)>& visit)
      : s_(make_structure(t, c)), hook_(hook), visit_(visit) {
    const int m = static_cast<int>(s_.edges.size());
    faces_of_edge_.assign(m, {});
    for (const auto& f : t.triangles())
      for (int k = 0; k < 3; ++k) faces_of_edge_[s_.edge_id(f[k], f[(k + 1) % 3])].push_back(f);
    // Breadth-first edge order from North.
    std::vector<char> seen_v(t.vertex_count(), 0), seen_e(m, 0);
    std::deque<Vertex> queue{c.north};
    seen_v[c.north] = 1;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex u : t.rotation[v]) {
        int e = s_.edge_id(v, u);
        if (!seen_e[e] && s_.state[e] == EdgeState::unassigned) {
          seen_e[e] = 1;
          order_.push_back(e);
        }
        if (!seen_v[u]) {
          seen_v[u] = 1;
          queue.push_back(u);
        }
      }
    }
  }

  StructureSearchStats run() {
    const auto& t = s_.base;
    for (Vertex v = 4; v < t.vertex_count(); ++v)
      if (!vertex_condition(s_, v)) return stats_;
    for (const auto& f : t.triangles())
      if (!triangle_condition(s_, f)) return stats_;
    if (hook_ && !hook_->begin(s_)) return stats_;
    search(0);
    return stats_;
  }

 private:
  bool local_ok(int e) const {
    auto [u, v] = s_.edges[e];
    if (!s_.is_cardinal(u) && !vertex_condition(s_, u)) return false;
    if (!s_.is_cardinal(v) && !vertex_condition(s_, v)) return false;
    for (const auto& f : faces_of_edge_[e])
      if (!triangle_condition(s_, f)) return false;
    return true;
  }

  void search(std::size_t k) {
    ++stats_.nodes;
    if (k == order_.size()) {
      ++stats_.complete;
      visit_(s_);
      return;
    }
    const int e = order_[k];
    static constexpr std::array<EdgeState, 4> choices{EdgeState::ns_forward, EdgeState::ns_backward,
                                                      EdgeState::we_forward, EdgeState::we_backward};
    for (EdgeState choice : choices) {
      s_.state[e] = choice;
      if (!local_ok(e)) {
        ++stats_.pruned_local;
        continue;
      }
      if (hook_ && !hook_->assign(s_, e)) {
        ++stats_.pruned_equations;
        continue;
      }
      search(k + 1);
      if (hook_) hook_->unassign();
    }
    s_.state[e] = EdgeState::unassigned;
  }

  TransversalStructure s_;
  EquationFeedback* hook_;
  const std::function<void(const TransversalStructure&)>& visit_;
  std::vector<std::vector<std::array<Vertex, 3>>> faces_of_edge_;
  std::vector<int> order_;
  StructureSearchStats stats_;
};

}  // namespace

StructureSearchStats enumerate_structures(const PlaneTriangulation& t, const Cardinals& c, EquationFeedback* hook,
                                          const std::function<void(const TransversalStructure&)>& visit) {
  StructureSearch search(t, c, hook, visit);
  return search.run();
}

}  // namespace quilt
