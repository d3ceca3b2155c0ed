#pragma once

#include "quilt/triangulation.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace quilt {

enum class Colour : std::uint8_t { north_south, west_east };

/// State of an undirected edge {u, v} with u < v. "forward" points from
/// the lower vertex id to the higher one.
enum class EdgeState : std::uint8_t { unassigned, ns_forward, ns_backward, we_forward, we_backward };

/// Role of an incident edge as seen from one vertex. The numeric values are
/// the clockwise block order required around every inner vertex.
enum class Incidence : std::uint8_t { ns_in = 0, we_out = 1, ns_out = 2, we_in = 3, unknown = 4 };

struct Cardinals {
  Vertex north, east, south, west;
};

/// Cardinal labelling with North at outer[shift] (clockwise N, E, S, W).
Cardinals cardinals_for(const PlaneTriangulation& t, int shift = 0);

struct DirectedEdge {
  Colour colour;
  Vertex tail, head;
};

/// A triangulation together with a (possibly partial) colouring and
/// orientation of its edges.
struct TransversalStructure {
  PlaneTriangulation base;
  Cardinals cardinals{};
  std::vector<std::pair<Vertex, Vertex>> edges;  // u < v, sorted
  std::vector<EdgeState> state;

  TransversalStructure() = default;
  TransversalStructure(PlaneTriangulation t, Cardinals c);

  int order() const { return base.order; }
  int edge_id(Vertex u, Vertex v) const { return edge_index_[u * base.vertex_count() + v]; }
  bool is_cardinal(Vertex v) const { return base.is_outer(v); }
  /// Index of the subsquare for an inner vertex.
  int square_of(Vertex v) const { return v - 4; }
  Vertex vertex_of(int square) const { return square + 4; }

  std::optional<DirectedEdge> label(int edge) const;
  void set(Vertex tail, Vertex head, Colour c);
  Incidence incidence(Vertex v, Vertex u) const;
  bool complete() const;

 private:
  std::vector<int> edge_index_;
};

/// Exact satisfiability of the four-block condition on a cyclic sequence
/// of incidences (clockwise). `unknown` entries may take any value.
bool vertex_condition(std::span<const Incidence> cyclic);
bool vertex_condition(const TransversalStructure& s, Vertex v);

/// Exact satisfiability of the triangle rule. Each state is relative to
/// the face order a->b, b->c, c->a ("forward" = along the face).
bool triangle_condition(EdgeState ab, EdgeState bc, EdgeState ca);
bool triangle_condition(const TransversalStructure& s, const std::array<Vertex, 3>& face);

/// Fixes every edge incident to a cardinal vertex and every outer edge.
TransversalStructure make_structure(const PlaneTriangulation& t, const Cardinals& c);

/// Full from-scratch check of a complete structure.
bool is_valid_structure(const TransversalStructure& s, std::string* why = nullptr);

/// Feedback from the equation side of the search. `assign` is called after
/// each new edge label; returning false vetoes the label and leaves the
/// hook unchanged. Every accepted `assign` is undone by one `unassign`.
class EquationFeedback {
 public:
  virtual ~EquationFeedback() = default;
  virtual bool begin(const TransversalStructure& s) = 0;
  virtual bool assign(const TransversalStructure& s, int edge) = 0;
  virtual void unassign() = 0;
};

struct StructureSearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t pruned_local = 0;
  std::uint64_t pruned_equations = 0;
  std::uint64_t complete = 0;
};

/// Backtracking over colours and directions of the inner edges. Every
/// complete structure that satisfies all vertex and triangle conditions and
/// is not vetoed by `hook` is passed to `visit`.
StructureSearchStats enumerate_structures(const PlaneTriangulation& t, const Cardinals& c, EquationFeedback* hook,
                                          const std::function<void(const TransversalStructure&)>& visit);

}  // namespace quilt
