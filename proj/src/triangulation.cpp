#include "quilt/triangulation.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace quilt {

int PlaneTriangulation::edge_count() const {
  int twice = 0;
  for (const auto& r : rotation) twice += static_cast<int>(r.size());
  return twice / 2;
}

bool PlaneTriangulation::adjacent(Vertex u, Vertex v) const {
  const auto& r = rotation[u];
  return std::find(r.begin(), r.end(), v) != r.end();
}

int PlaneTriangulation::index_of(Vertex v, Vertex u) const {
  const auto& r = rotation[v];
  auto it = std::find(r.begin(), r.end(), u);
  if (it == r.end()) throw std::logic_error("index_of: not a neighbour");
  return static_cast<int>(it - r.begin());
}

Vertex PlaneTriangulation::next_cw(Vertex v, Vertex u) const {
  const auto& r = rotation[v];
  int i = index_of(v, u);
  return r[(i + 1) % r.size()];
}

Vertex PlaneTriangulation::prev_cw(Vertex v, Vertex u) const {
  const auto& r = rotation[v];
  int i = index_of(v, u);
  return r[(i + r.size() - 1) % r.size()];
}

std::vector<std::vector<Vertex>> PlaneTriangulation::faces() const {
  const int n = vertex_count();
  std::vector<std::vector<char>> used(n);
  for (int v = 0; v < n; ++v) used[v].assign(rotation[v].size(), 0);
  std::vector<std::vector<Vertex>> out;
  for (int u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < rotation[u].size(); ++i) {
      if (used[u][i]) continue;
      std::vector<Vertex> face;
      Vertex a = u, b = rotation[u][i];
      while (true) {
        int ia = index_of(a, b);
        if (used[a][ia]) break;
        used[a][ia] = 1;
        face.push_back(a);
        Vertex c = next_cw(b, a);
        a = b;
        b = c;
      }
      out.push_back(std::move(face));
    }
  }
  return out;
}

std::vector<std::array<Vertex, 3>> PlaneTriangulation::triangles() const {
  std::vector<std::array<Vertex, 3>> out;
  for (const auto& f : faces())
    if (f.size() == 3) out.push_back({f[0], f[1], f[2]});
  return out;
}

std::vector<std::pair<Vertex, Vertex>> PlaneTriangulation::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (int u = 0; u < vertex_count(); ++u)
    for (Vertex v : rotation[u])
      if (u < v) out.emplace_back(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

PlaneTriangulation PlaneTriangulation::relabeled(const std::vector<Vertex>& perm) const {
  PlaneTriangulation t;
  t.order = order;
  t.rotation.resize(rotation.size());
  for (int v = 0; v < vertex_count(); ++v) {
    auto& r = t.rotation[perm[v]];
    for (Vertex u : rotation[v]) r.push_back(perm[u]);
  }
  for (int i = 0; i < 4; ++i) t.outer[i] = perm[outer[i]];
  return t;
}

namespace {

// Neighbour position lookup for code computation.
struct PositionTable {
  int n;
  std::vector<int> pos;
  explicit PositionTable(const PlaneTriangulation& t) : n(t.vertex_count()), pos(n * n, -1) {
    for (int v = 0; v < n; ++v)
      for (std::size_t i = 0; i < t.rotation[v].size(); ++i) pos[v * n + t.rotation[v][i]] = static_cast<int>(i);
  }
  int operator()(Vertex v, Vertex u) const { return pos[v * n + u]; }
};

// Writes the BFS code of the map rooted at from->to. When `bound` is given,
// stops as soon as the code is known to be lexicographically greater and
// returns +1; otherwise returns the comparison against `bound` (or 0).
int bfs_code(const PlaneTriangulation& t, const PositionTable& pos, Vertex from, Vertex to, bool mirrored,
             CanonicalCode& out, const CanonicalCode* bound) {
  const int n = t.vertex_count();
  std::vector<int> number(n, 0);
  std::vector<Vertex> queue, first;
  queue.reserve(n);
  first.reserve(n);
  out.clear();
  int next_number = 1;
  number[from] = next_number++;
  queue.push_back(from);
  first.push_back(to);
  int cmp = 0;
  auto emit = [&](std::uint8_t value) {
    std::size_t k = out.size();
    out.push_back(value);
    if (bound && cmp == 0) {
      std::uint8_t ref = k < bound->size() ? (*bound)[k] : 0;
      if (value != ref) cmp = value < ref ? -1 : 1;
    }
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    const auto& r = t.rotation[x];
    const int d = static_cast<int>(r.size());
    int start = pos(x, first[head]);
    for (int s = 0; s < d; ++s) {
      int i = mirrored ? (start - s + d) % d : (start + s) % d;
      Vertex z = r[i];
      if (number[z] == 0) {
        number[z] = next_number++;
        queue.push_back(z);
        first.push_back(x);
      }
      emit(static_cast<std::uint8_t>(number[z]));
      if (cmp > 0) return 1;
    }
    emit(0);
    if (cmp > 0) return 1;
  }
  return cmp;
}

std::vector<std::pair<std::pair<Vertex, Vertex>, bool>> outer_roots(const PlaneTriangulation& t,
                                                                     bool with_reflections) {
  std::vector<std::pair<std::pair<Vertex, Vertex>, bool>> roots;
  for (int i = 0; i < 4; ++i) roots.push_back({{t.outer[i], t.outer[(i + 1) % 4]}, false});
  if (with_reflections)
    for (int i = 0; i < 4; ++i) roots.push_back({{t.outer[i], t.outer[(i + 3) % 4]}, true});
  return roots;
}

}  // namespace

CanonicalCode rooted_code(const PlaneTriangulation& t, Vertex from, Vertex to, bool mirrored) {
  PositionTable pos(t);
  CanonicalCode code;
  bfs_code(t, pos, from, to, mirrored, code, nullptr);
  return code;
}

CanonicalCode canonical_code(const PlaneTriangulation& t, bool with_reflections) {
  PositionTable pos(t);
  CanonicalCode best, scratch;
  bool have = false;
  for (const auto& [dart, mirrored] : outer_roots(t, with_reflections)) {
    if (!have) {
      bfs_code(t, pos, dart.first, dart.second, mirrored, best, nullptr);
      have = true;
      continue;
    }
    if (bfs_code(t, pos, dart.first, dart.second, mirrored, scratch, &best) < 0) best.swap(scratch);
  }
  return best;
}

const char* to_string(FilterVerdict v) {
  switch (v) {
    case FilterVerdict::accept: return "accept";
    case FilterVerdict::opposite_chord: return "opposite outer vertices joined";
    case FilterVerdict::opposite_pair: return "inner vertex adjacent to an opposite outer pair";
    case FilterVerdict::corner_not_unique: return "corner vertex not unique";
    case FilterVerdict::separating_triangle: return "separating triangle";
    case FilterVerdict::not_triangulated: return "not a disk triangulation";
  }
  return "?";
}

FilterVerdict structural_filter(const PlaneTriangulation& t) {
  if (!is_valid_disk_triangulation(t)) return FilterVerdict::not_triangulated;
  const auto& o = t.outer;
  if (t.adjacent(o[0], o[2]) || t.adjacent(o[1], o[3])) return FilterVerdict::opposite_chord;
  for (Vertex v = 0; v < t.vertex_count(); ++v) {
    if (t.is_outer(v)) continue;
    if ((t.adjacent(v, o[0]) && t.adjacent(v, o[2])) || (t.adjacent(v, o[1]) && t.adjacent(v, o[3])))
      return FilterVerdict::opposite_pair;
  }
  for (int i = 0; i < 4; ++i) {
    int common = 0;
    for (Vertex v : t.rotation[o[i]])
      if (!t.is_outer(v) && t.adjacent(v, o[(i + 1) % 4])) ++common;
    if (common != 1) return FilterVerdict::corner_not_unique;
  }
  std::set<std::array<Vertex, 3>> face_set;
  for (auto f : t.triangles()) {
    std::sort(f.begin(), f.end());
    face_set.insert(f);
  }
  const int n = t.vertex_count();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b : t.rotation[a]) {
      if (b <= a) continue;
      for (Vertex c : t.rotation[b]) {
        if (c <= b || !t.adjacent(a, c)) continue;
        if (!face_set.count({a, b, c})) return FilterVerdict::separating_triangle;
      }
    }
  return FilterVerdict::accept;
}

bool is_valid_disk_triangulation(const PlaneTriangulation& t, std::string* why) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  const int n = t.vertex_count();
  if (n != t.order + 4) return fail("vertex count");
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> r = t.rotation[v];
    std::sort(r.begin(), r.end());
    if (std::adjacent_find(r.begin(), r.end()) != r.end()) return fail("parallel edge");
    for (Vertex u : r) {
      if (u == v || u < 0 || u >= n) return fail("loop or bad id");
      if (!t.adjacent(u, v)) return fail("asymmetric adjacency");
    }
    if (t.degree(v) < 4) return fail("degree below 4");
  }
  auto fs = t.faces();
  int quads = 0;
  for (const auto& f : fs) {
    if (f.size() == 4) {
      ++quads;
      // The quadrilateral must be the outer cycle in tracing order.
      auto it = std::find(f.begin(), f.end(), t.outer[0]);
      if (it == f.end()) return fail("outer face mismatch");
      std::size_t k = it - f.begin();
      for (int i = 0; i < 4; ++i)
        if (f[(k + i) % 4] != t.outer[i]) return fail("outer face orientation");
    } else if (f.size() != 3) {
      return fail("non-triangular face");
    }
  }
  if (quads != 1) return fail("outer face count");
  const int e = t.edge_count();
  const int f = static_cast<int>(fs.size());
  if (n - e + f != 2) return fail("Euler relation");
  // connectivity
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : t.rotation[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
  }
  if (reached != n) return fail("disconnected");
  return true;
}

PlaneTriangulation from_triangles(int order, const std::vector<std::array<Vertex, 3>>& triangles) {
  const int n = order + 4;
  // succ[v*n+u] = w  : around v, w follows u clockwise.
  std::vector<Vertex> succ(n * n, -1);
  auto add_face = [&](Vertex a, Vertex b, Vertex c) {
    succ[b * n + a] = c;
    succ[c * n + b] = a;
    succ[a * n + c] = b;
  };
  for (const auto& tri : triangles) add_face(tri[0], tri[1], tri[2]);
  // Outer face 0 -> 1 -> 2 -> 3.
  for (int i = 0; i < 4; ++i) succ[((i + 1) % 4) * n + i] = (i + 2) % 4;
  PlaneTriangulation t;
  t.order = order;
  t.rotation.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    Vertex startu = -1;
    for (Vertex u = 0; u < n; ++u)
      if (succ[v * n + u] >= 0) {
        startu = u;
        break;
      }
    if (startu < 0) continue;
    Vertex u = startu;
    do {
      t.rotation[v].push_back(u);
      u = succ[v * n + u];
      if (u < 0) throw std::logic_error("from_triangles: open rotation");
    } while (u != startu && t.rotation[v].size() <= static_cast<std::size_t>(n));
  }
  return t;
}

namespace {

class Builder {
 public:
  Builder(int order, const GeneratorOptions& opt, const std::function<bool(const PlaneTriangulation&)>& visit)
      : order_(order), n_(order + 4), opt_(opt), visit_(visit) {
    if (n_ > 64) throw std::invalid_argument("generate: order too large for the adjacency masks");
    adj_.assign(n_, 0);
    deg_.assign(n_, 0);
    front_.assign(n_, 0);
    for (int i = 0; i < 4; ++i) link(i, (i + 1) % 4);
    for (int i = 0; i < 4; ++i) front_[i] = 1;
    regions_.push_back({0, 1, 2, 3});
    next_ = 4;
  }

  GeneratorStats run() {
    search(0);
    return stats_;
  }

 private:
  void link(int a, int b) {
    adj_[a] |= 1ull << b;
    adj_[b] |= 1ull << a;
    ++deg_[a];
    ++deg_[b];
  }
  void unlink(int a, int b) {
    adj_[a] &= ~(1ull << b);
    adj_[b] &= ~(1ull << a);
    --deg_[a];
    --deg_[b];
  }
  bool linked(int a, int b) const { return (adj_[a] >> b) & 1ull; }
  static bool opposite_outer(int a, int b) { return a < 4 && b < 4 && (a + 2) % 4 == b; }

  void search(int depth) {
    if (stop_) return;
    ++stats_.nodes;
    if (opt_.partitions > 1 && depth == opt_.split_depth) {
      if (split_counter_++ % opt_.partitions != static_cast<std::uint64_t>(opt_.partition)) return;
    }
    if (regions_.empty()) {
      finish();
      return;
    }
    std::vector<int> region = std::move(regions_.back());
    regions_.pop_back();
    const int m = static_cast<int>(region.size());
    int i = 0;
    for (int k = 1; k < m; ++k)
      if (region[k] < region[i]) i = k;
    const int f0 = region[i];
    const int f1 = region[(i + 1) % m];

    // Apex is a fresh inner vertex.
    if (next_ < n_) {
      const int w = next_++;
      link(f0, w);
      link(f1, w);
      tris_.push_back({f1, f0, w});
      std::vector<int> grown;
      grown.reserve(m + 1);
      for (int k = 0; k < m; ++k) {
        grown.push_back(region[(i + 1 + k) % m]);
        if (k == m - 1) grown.push_back(w);
      }
      // grown = f1 ... f0 w
      front_[w] = 1;
      regions_.push_back(std::move(grown));
      search(depth + 1);
      regions_.pop_back();
      front_[w] = 0;
      tris_.pop_back();
      unlink(f1, w);
      unlink(f0, w);
      --next_;
    }

    // Apex is another vertex of this region.
    for (int k = 2; k < m && !stop_; ++k) {
      const int fk = region[(i + k) % m];
      const bool new0 = k != m - 1;  // edge f0-fk not yet present on this front
      const bool new1 = k != 2;      // edge f1-fk
      if (new0 && (linked(f0, fk) || (!opt_.allow_outer_chords && opposite_outer(f0, fk)))) continue;
      if (new1 && (linked(f1, fk) || (!opt_.allow_outer_chords && opposite_outer(f1, fk)))) continue;
      if (new0) link(f0, fk);
      if (new1) link(f1, fk);
      tris_.push_back({f1, f0, fk});
      // first: f0 fk ... (back to before f0); second: f1 ... fk
      std::vector<int> first, second;
      if (m - k + 1 >= 3) {
        first.push_back(f0);
        for (int s = k; s < m; ++s) first.push_back(region[(i + s) % m]);
      }
      if (k >= 3)
        for (int s = 1; s <= k; ++s) second.push_back(region[(i + s) % m]);
      for (int v : region) --front_[v];
      for (int v : first) ++front_[v];
      for (int v : second) ++front_[v];
      bool ok = true;
      for (int v : region)
        if (front_[v] == 0 && deg_[v] < opt_.min_degree) ok = false;
      if (ok) {
        int pushed = 0;
        if (!first.empty()) {
          regions_.push_back(first);
          ++pushed;
        }
        if (!second.empty()) {
          regions_.push_back(second);
          ++pushed;
        }
        search(depth + 1);
        while (pushed--) regions_.pop_back();
      }
      for (int v : first) --front_[v];
      for (int v : second) --front_[v];
      for (int v : region) ++front_[v];
      tris_.pop_back();
      if (new1) unlink(f1, fk);
      if (new0) unlink(f0, fk);
    }
    regions_.push_back(std::move(region));
  }

  void finish() {
    if (next_ != n_) return;
    for (int v = 0; v < n_; ++v)
      if (deg_[v] < opt_.min_degree) return;
    ++stats_.complete;
    PlaneTriangulation t = from_triangles(order_, tris_);
    PositionTable pos(t);
    CanonicalCode ident, scratch;
    bfs_code(t, pos, t.outer[0], t.outer[1], false, ident, nullptr);
    bool first = true;
    for (const auto& [dart, mirrored] : outer_roots(t, opt_.quotient_reflections)) {
      if (first) {
        first = false;
        continue;
      }
      if (bfs_code(t, pos, dart.first, dart.second, mirrored, scratch, &ident) < 0) return;
    }
    ++stats_.yielded;
    if (!visit_(t)) stop_ = true;
  }

  int order_, n_;
  GeneratorOptions opt_;
  const std::function<bool(const PlaneTriangulation&)>& visit_;
  std::vector<std::uint64_t> adj_;
  std::vector<int> deg_, front_;
  std::vector<std::vector<int>> regions_;
  std::vector<std::array<Vertex, 3>> tris_;
  int next_ = 4;
  bool stop_ = false;
  std::uint64_t split_counter_ = 0;
  GeneratorStats stats_;
};

}  // namespace

GeneratorStats generate(int order, const std::function<bool(const PlaneTriangulation&)>& visit,
                        const GeneratorOptions& options) {
  if (order < 1) throw std::invalid_argument("generate: order must be >= 1");
  Builder b(order, options, visit);
  return b.run();
}

std::uint64_t count_triangulations(int order, const GeneratorOptions& options) {
  return generate(order, [](const PlaneTriangulation&) { return true; }, options).yielded;
}

void write_debug_line(std::ostream& os, const PlaneTriangulation& t) {
  os << t.order << ";";
  for (int i = 0; i < 4; ++i) os << (i ? " " : "") << t.outer[i];
  os << ";";
  for (int v = 0; v < t.vertex_count(); ++v) {
    os << " " << v << ":";
    for (std::size_t k = 0; k < t.rotation[v].size(); ++k) os << (k ? "," : "") << t.rotation[v][k];
  }
  os << "\n";
}

std::optional<PlaneTriangulation> parse_debug_line(const std::string& line) {
  auto s1 = line.find(';');
  if (s1 == std::string::npos) return std::nullopt;
  auto s2 = line.find(';', s1 + 1);
  if (s2 == std::string::npos) return std::nullopt;
  PlaneTriangulation t;
  try {
    t.order = std::stoi(line.substr(0, s1));
  } catch (...) {
    return std::nullopt;
  }
  std::istringstream outer(line.substr(s1 + 1, s2 - s1 - 1));
  for (auto& o : t.outer)
    if (!(outer >> o)) return std::nullopt;
  t.rotation.resize(t.order + 4);
  std::istringstream rest(line.substr(s2 + 1));
  std::string tok;
  while (rest >> tok) {
    auto c = tok.find(':');
    if (c == std::string::npos) return std::nullopt;
    int v = std::stoi(tok.substr(0, c));
    if (v < 0 || v >= t.vertex_count()) return std::nullopt;
    std::istringstream nb(tok.substr(c + 1));
    std::string item;
    while (std::getline(nb, item, ','))
      if (!item.empty()) t.rotation[v].push_back(std::stoi(item));
  }
  return t;
}

}  // namespace quilt
