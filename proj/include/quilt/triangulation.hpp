#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace quilt {

using Vertex = int;

/// Imbedded triangulation of a 4-sided disk.
///
/// Vertices 0..3 are the outer (cardinal candidate) vertices; inner
/// vertices are 4..vertex_count()-1. `rotation[v]` lists the neighbours of
/// v in clockwise order. Faces are traced by the rule
/// `u->v  =>  v->next_cw(v, u)`; under that rule the outer face reads
/// outer[0] -> outer[1] -> outer[2] -> outer[3].
struct PlaneTriangulation {
  int order = 0;  // number of inner vertices (dissection order N)
  std::array<Vertex, 4> outer{0, 1, 2, 3};
  std::vector<std::vector<Vertex>> rotation;

  int vertex_count() const { return static_cast<int>(rotation.size()); }
  int degree(Vertex v) const { return static_cast<int>(rotation[v].size()); }
  int edge_count() const;
  bool adjacent(Vertex u, Vertex v) const;
  bool is_outer(Vertex v) const { return v < 4; }

  /// Clockwise successor / predecessor of neighbour `u` around `v`.
  Vertex next_cw(Vertex v, Vertex u) const;
  Vertex prev_cw(Vertex v, Vertex u) const;
  int index_of(Vertex v, Vertex u) const;

  /// All faces as dart cycles, outer face included.
  std::vector<std::vector<Vertex>> faces() const;
  /// Triangular faces, each listed once in tracing order.
  std::vector<std::array<Vertex, 3>> triangles() const;
  /// Undirected edges with u < v, sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Relabel vertices: vertex v becomes perm[v]. Outer ids are remapped too.
  PlaneTriangulation relabeled(const std::vector<Vertex>& perm) const;
};

using CanonicalCode = std::vector<std::uint8_t>;

/// Minimal BFS code over all roots on the outer face: the four outer darts
/// in the tracing direction and, when `with_reflections`, the four reversed
/// darts read with the mirrored rotation.
CanonicalCode canonical_code(const PlaneTriangulation& t, bool with_reflections = true);

/// BFS code of the map rooted at dart `from -> to`, reading rotations
/// clockwise (`mirrored == false`) or anticlockwise.
CanonicalCode rooted_code(const PlaneTriangulation& t, Vertex from, Vertex to, bool mirrored);

enum class FilterVerdict {
  accept,
  opposite_chord,         // edge between opposite outer vertices
  opposite_pair,          // inner vertex adjacent to both of an opposite pair
  corner_not_unique,      // adjacent outer pair without exactly one common inner neighbour
  separating_triangle,
  not_triangulated,
};

const char* to_string(FilterVerdict v);

/// Colour-independent checks on a candidate graph.
FilterVerdict structural_filter(const PlaneTriangulation& t);

/// Structural sanity of the map itself: simple, Euler, all inner faces
/// triangles, single 4-gon outer face, minimum degree 4.
bool is_valid_disk_triangulation(const PlaneTriangulation& t, std::string* why = nullptr);

/// Build the map from oriented triangles (each traced `a -> b -> c`).
PlaneTriangulation from_triangles(int order, const std::vector<std::array<Vertex, 3>>& triangles);

struct GeneratorOptions {
  bool quotient_reflections = true;
  int min_degree = 4;
  // The outer 4-cycle is chordless unless this is set.
  bool allow_outer_chords = false;
  // Work splitting: the subtree rooted at the k-th search node of depth
  // `split_depth` belongs to partition `k % partitions`.
  int partition = 0;
  int partitions = 1;
  int split_depth = 6;
};

struct GeneratorStats {
  std::uint64_t nodes = 0;
  std::uint64_t complete = 0;   // labelled triangulations reached
  std::uint64_t yielded = 0;    // canonical representatives
};

/// Streams one representative per isomorphism class of imbedded
/// triangulations of the 4-gon on order+4 vertices with the configured
/// minimum degree. Return `false` from the callback to stop early.
GeneratorStats generate(int order, const std::function<bool(const PlaneTriangulation&)>& visit,
                        const GeneratorOptions& options = {});

std::uint64_t count_triangulations(int order, const GeneratorOptions& options = {});

/// One line: `order; o0 o1 o2 o3; v:a,b,c v:...`.
void write_debug_line(std::ostream& os, const PlaneTriangulation& t);
std::optional<PlaneTriangulation> parse_debug_line(const std::string& line);

}  // namespace quilt
