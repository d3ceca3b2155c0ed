#include "quilt/dissection.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace quilt {

void Dissection::sort() { std::sort(squares.begin(), squares.end()); }

std::optional<std::string> tiling_error(const Dissection& d) {
  const int n = d.side;
  if (n <= 0) return "side must be positive";
  long long area = 0;
  for (const auto& s : d.squares) {
    if (s.size < 1 || s.size > n) return "size out of range";
    if (s.x < 0 || s.y < 0 || s.x + s.size > n || s.y + s.size > n) return "square outside the board";
    area += 1LL * s.size * s.size;
  }
  if (area != 1LL * n * n) return "areas do not sum to the board";
  // Sweep unit rows; every row must be covered by abutting intervals.
  std::vector<Square> byrow = d.squares;
  std::sort(byrow.begin(), byrow.end());
  std::vector<std::pair<int, int>> spans;
  for (int row = 0; row < n; ++row) {
    spans.clear();
    for (const auto& s : byrow) {
      if (s.y > row) break;
      if (row < s.y + s.size) spans.emplace_back(s.x, s.x + s.size);
    }
    std::sort(spans.begin(), spans.end());
    int reach = 0;
    for (auto [a, b] : spans) {
      if (a != reach) return a < reach ? "overlapping squares" : "uncovered cell";
      reach = b;
    }
    if (reach != n) return "uncovered cell";
  }
  return std::nullopt;
}

bool is_prime(const Dissection& d) {
  int g = 0;
  for (const auto& s : d.squares) g = std::gcd(g, s.size);
  return g == 1;
}

Dissection transformed(const Dissection& d, Symmetry g) {
  Dissection out;
  out.side = d.side;
  out.squares.reserve(d.squares.size());
  for (const auto& s : d.squares) {
    auto [x, y] = apply_block(g, d.side, s.x, s.y, s.size);
    out.squares.push_back({x, y, s.size});
  }
  out.sort();
  return out;
}

CanonicalKey encode(const Dissection& d) {
  std::vector<Square> sq = d.squares;
  std::sort(sq.begin(), sq.end());
  CanonicalKey k;
  k.code.reserve(1 + 3 * sq.size());
  k.code.push_back(static_cast<std::uint32_t>(d.side));
  for (const auto& s : sq) {
    k.code.push_back(static_cast<std::uint32_t>(s.y));
    k.code.push_back(static_cast<std::uint32_t>(s.x));
    k.code.push_back(static_cast<std::uint32_t>(s.size));
  }
  return k;
}

CanonicalKey canonicalize(const Dissection& d) {
  CanonicalKey best = encode(transformed(d, Symmetry::identity));
  for (Symmetry g : all_symmetries) {
    if (g == Symmetry::identity) continue;
    CanonicalKey k = encode(transformed(d, g));
    if (k < best) best = std::move(k);
  }
  return best;
}

Dissection canonical_form(const Dissection& d) {
  Dissection best = transformed(d, Symmetry::identity);
  CanonicalKey best_key = encode(best);
  for (Symmetry g : all_symmetries) {
    Dissection img = transformed(d, g);
    CanonicalKey k = encode(img);
    if (k < best_key) {
      best_key = std::move(k);
      best = std::move(img);
    }
  }
  return best;
}

SymmetryMask symmetry_mask(const Dissection& d) {
  Dissection base = transformed(d, Symmetry::identity);
  SymmetryMask mask = 0;
  for (Symmetry g : all_symmetries)
    if (transformed(d, g).squares == base.squares) mask |= bit(g);
  return mask;
}

StabilizerClass stabilizer(const Dissection& d) { return classify_stabilizer(symmetry_mask(d)); }

std::vector<int> size_multiset(const Dissection& d) {
  std::vector<int> sizes;
  for (const auto& s : d.squares) sizes.push_back(s.size);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::optional<Equation> edge_equation(const TransversalStructure& s, int edge) {
  auto l = s.label(edge);
  if (!l) return std::nullopt;
  const bool tail_card = s.is_cardinal(l->tail), head_card = s.is_cardinal(l->head);
  if (tail_card && head_card) return std::nullopt;
  UnknownLayout u{s.order()};
  Equation eq;
  eq.coefficients.assign(u.count(), 0);
  const auto& c = s.cardinals;
  auto pos = [&](int sq) { return l->colour == Colour::west_east ? u.x(sq) : u.y(sq); };
  if (tail_card) {
    // W -> v or N -> v: the square touches the West / North side.
    int sq = s.square_of(l->head);
    if (!(l->tail == c.west || l->tail == c.north)) return std::nullopt;
    eq.coefficients[pos(sq)] = 1;
    eq.constant = 0;
  } else if (head_card) {
    // v -> E or v -> S: the square touches the East / South side.
    int sq = s.square_of(l->tail);
    if (!(l->head == c.east || l->head == c.south)) return std::nullopt;
    eq.coefficients[pos(sq)] = 1;
    eq.coefficients[u.length(sq)] = 1;
    eq.constant = 1;
  } else {
    int a = s.square_of(l->tail), b = s.square_of(l->head);
    eq.coefficients[pos(a)] += 1;
    eq.coefficients[u.length(a)] += 1;
    eq.coefficients[pos(b)] -= 1;
    eq.constant = 0;
  }
  return eq;
}

std::vector<Equation> local_equations(const TransversalStructure& s) {
  std::vector<Equation> out;
  for (std::size_t e = 0; e < s.edges.size(); ++e)
    if (auto eq = edge_equation(s, static_cast<int>(e))) out.push_back(std::move(*eq));
  return out;
}

namespace {

std::vector<Vertex> out_neighbours(const TransversalStructure& s, Vertex v, Colour c) {
  std::vector<Vertex> out;
  for (Vertex u : s.base.rotation[v]) {
    auto l = s.label(s.edge_id(v, u));
    if (l && l->colour == c && l->tail == v) out.push_back(u);
  }
  return out;
}

Equation lengths_equation(const TransversalStructure& s, const std::vector<Vertex>& path, std::int64_t constant) {
  UnknownLayout u{s.order()};
  Equation eq;
  eq.coefficients.assign(u.count(), 0);
  for (Vertex v : path)
    if (!s.is_cardinal(v)) eq.coefficients[u.length(s.square_of(v))] += 1;
  eq.constant = constant;
  return eq;
}

}  // namespace

std::vector<std::vector<Vertex>> traverses(const TransversalStructure& s, Colour c) {
  const Vertex from = c == Colour::north_south ? s.cardinals.north : s.cardinals.west;
  const Vertex to = c == Colour::north_south ? s.cardinals.south : s.cardinals.east;
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> path{from};
  std::function<void(Vertex)> walk = [&](Vertex v) {
    for (Vertex u : out_neighbours(s, v, c)) {
      if (u == to && v != from) {
        path.push_back(u);
        out.push_back(path);
        path.pop_back();
        continue;
      }
      if (s.is_cardinal(u)) continue;
      path.push_back(u);
      walk(u);
      path.pop_back();
    }
  };
  walk(from);
  return out;
}

std::vector<Equation> traverse_equations(const TransversalStructure& s) {
  std::vector<Equation> out;
  for (Colour c : {Colour::north_south, Colour::west_east})
    for (const auto& path : traverses(s, c)) out.push_back(lengths_equation(s, path, 1));
  return out;
}

std::vector<Pocket> horizontal_pockets(const TransversalStructure& s) {
  const auto& t = s.base;
  const int n = t.vertex_count();
  auto is_we = [&](Vertex a, Vertex b) {
    auto l = s.label(s.edge_id(a, b));
    return l && l->colour == Colour::west_east;
  };
  // Rotation restricted to West-East edges.
  std::vector<std::vector<Vertex>> rot(n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : t.rotation[v])
      if (is_we(v, u)) rot[v].push_back(u);
  auto next = [&](Vertex v, Vertex u) {
    const auto& r = rot[v];
    auto it = std::find(r.begin(), r.end(), u);
    ++it;
    return it == r.end() ? r.front() : *it;
  };
  std::map<std::pair<Vertex, Vertex>, bool> used;
  std::vector<Pocket> out;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b : rot[a]) {
      if (used[{a, b}]) continue;
      std::vector<std::pair<Vertex, Vertex>> darts;
      Vertex x = a, y = b;
      while (!used[{x, y}]) {
        used[{x, y}] = true;
        darts.emplace_back(x, y);
        Vertex z = next(y, x);
        x = y;
        y = z;
      }
      // Darts along the edge direction run beneath the face (its lower
      // path); reversed darts form its upper path.
      std::map<Vertex, Vertex> lower_next, upper_next;
      for (auto [p, q] : darts) {
        auto l = s.label(s.edge_id(p, q));
        if (l->tail == p)
          lower_next[p] = q;
        else
          upper_next[q] = p;
      }
      // Source: tail on both paths that is nobody's head.
      auto chain = [](const std::map<Vertex, Vertex>& next_of, Vertex start) {
        std::vector<Vertex> path{start};
        auto it = next_of.find(start);
        while (it != next_of.end()) {
          path.push_back(it->second);
          it = next_of.find(it->second);
        }
        return path;
      };
      std::map<Vertex, int> indeg;
      for (auto [p, q] : lower_next) indeg[q]++;
      Vertex source = -1;
      for (auto [p, q] : lower_next)
        if (!indeg.count(p)) source = p;
      if (source < 0) continue;
      auto lower = chain(lower_next, source);
      auto upper = chain(upper_next, source);
      if (upper.empty() || lower.back() != upper.back()) continue;
      Pocket p{source, lower.back(), {}, {}};
      p.upper.assign(upper.begin() + 1, upper.end() - 1);
      p.lower.assign(lower.begin() + 1, lower.end() - 1);
      // The unbounded face has its lower chain along the North side.
      bool outer = source == s.cardinals.west && p.sink == s.cardinals.east && !p.lower.empty() &&
                   std::all_of(p.lower.begin(), p.lower.end(),
                               [&](Vertex v) { return t.adjacent(v, s.cardinals.north); });
      if (outer) continue;
      out.push_back(std::move(p));
    }
  return out;
}

Equation pocket_equation(const TransversalStructure& s, const Pocket& p) {
  Equation eq = lengths_equation(s, p.upper, 0);
  UnknownLayout u{s.order()};
  for (Vertex v : p.lower) eq.coefficients[u.length(s.square_of(v))] -= 1;
  return eq;
}

const char* to_string(Rejection r) {
  switch (r) {
    case Rejection::none: return "none";
    case Rejection::inconsistent: return "inconsistent";
    case Rejection::underdetermined: return "underdetermined";
    case Rejection::length_out_of_range: return "length out of range";
    case Rejection::geometry_mismatch: return "geometry mismatch";
  }
  return "?";
}

bool touching(const Square& a, const Square& b) {
  return a.x <= b.x + b.size && b.x <= a.x + a.size && a.y <= b.y + b.size && b.y <= a.y + a.size;
}

Realization realize(const TransversalStructure& s, WidthMode mode) {
  Realization r;
  auto reject = [&](Rejection why, std::string detail) {
    r.reason = why;
    r.detail = std::move(detail);
    return r;
  };
  const int order = s.order();
  UnknownLayout u{order};
  LinearSystem sys(u.count(), mode);
  for (const auto& eq : local_equations(s))
    if (sys.add_equation(std::span<const std::int64_t>(eq.coefficients), eq.constant) == AddResult::inconsistent)
      return reject(Rejection::inconsistent, "local equations contradict each other");
  auto solved = sys.solve();
  if (auto* under = std::get_if<Underdetermined>(&solved))
    return reject(Rejection::underdetermined, std::to_string(under->unknowns.size()) + " unknowns not fixed");
  const auto& values = std::get<UniqueSolution>(solved).values;
  BigInt scale = 1;
  for (int i = 0; i < order; ++i) {
    const Rational& len = values[u.length(i)];
    if (len <= 0 || len >= 1) return reject(Rejection::length_out_of_range, "square " + std::to_string(i));
    scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(len));
  }
  if (scale > 1'000'000'000) return reject(Rejection::geometry_mismatch, "side too large");
  auto to_int = [&](const Rational& v, int& out) {
    Rational scaled = v * Rational(scale);
    if (boost::multiprecision::denominator(scaled) != 1) return false;
    out = static_cast<int>(boost::multiprecision::numerator(scaled));
    return true;
  };
  Dissection d;
  d.side = static_cast<int>(scale);
  r.placement.resize(order);
  for (int i = 0; i < order; ++i) {
    Square sq;
    if (!to_int(values[u.x(i)], sq.x) || !to_int(values[u.y(i)], sq.y) || !to_int(values[u.length(i)], sq.size))
      return reject(Rejection::geometry_mismatch, "non-integral coordinate");
    r.placement[i] = sq;
  }
  d.squares = r.placement;
  d.sort();
  if (auto err = tiling_error(d)) return reject(Rejection::geometry_mismatch, *err);
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    auto [a, b] = s.edges[e];
    if (s.is_cardinal(a) || s.is_cardinal(b)) continue;
    if (!touching(r.placement[s.square_of(a)], r.placement[s.square_of(b)]))
      return reject(Rejection::geometry_mismatch, "connected squares do not touch");
  }
  if (!is_prime(d)) throw std::logic_error("realize: scaled dissection is not prime");
  r.dissection = std::move(d);
  return r;
}

bool LocalEquationHook::begin(const TransversalStructure& s) {
  system_.emplace(UnknownLayout{s.order()}.count(), mode_);
  marks_.clear();
  for (const auto& eq : local_equations(s))
    if (system_->add_equation(std::span<const std::int64_t>(eq.coefficients), eq.constant) == AddResult::inconsistent)
      return false;
  max_magnitude_ = std::max(max_magnitude_, system_->max_magnitude());
  return true;
}

bool LocalEquationHook::assign(const TransversalStructure& s, int edge) {
  std::size_t mark = system_->checkpoint();
  if (auto eq = edge_equation(s, edge)) {
    if (system_->add_equation(std::span<const std::int64_t>(eq->coefficients), eq->constant) ==
        AddResult::inconsistent)
      return false;
  }
  max_magnitude_ = std::max(max_magnitude_, system_->max_magnitude());
  marks_.push_back(mark);
  return true;
}

void LocalEquationHook::unassign() {
  system_->rollback(marks_.back());
  marks_.pop_back();
}

namespace {

// Clockwise position of a contact on the boundary of a square, doubled so
// that midpoints stay integral. Starts at the North-West corner.
long long perimeter_position(const Square& s, long long px2, long long py2) {
  const long long x0 = 2LL * s.x, y0 = 2LL * s.y, k = 2LL * s.size;
  if (py2 == y0 && px2 < x0 + k) return px2 - x0;           // top, West to East
  if (px2 == x0 + k && py2 < y0 + k) return k + (py2 - y0);  // right, North to South
  if (py2 == y0 + k && px2 > x0) return 2 * k + (x0 + k - px2);  // bottom, East to West
  return 3 * k + (y0 + k - py2);                                 // left, South to North
}

}  // namespace

TransversalStructure structure_from_dissection(const Dissection& din, CrossBreak rule) {
  Dissection d = din;
  d.sort();
  const int N = d.order();
  const int n = d.side;
  const Vertex north = 0, east = 1, south = 2, west = 3;
  // contacts[v] = (perimeter key, neighbour)
  std::vector<std::vector<std::pair<long long, Vertex>>> contacts(N + 4);
  struct Arc {
    Vertex tail, head;
    Colour colour;
  };
  std::vector<Arc> arcs;
  auto vtx = [](int i) { return i + 4; };
  for (int i = 0; i < N; ++i) {
    const Square& a = d.squares[i];
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const Square& b = d.squares[j];
      // b to the East of a, sharing a vertical segment of positive length.
      if (b.x == a.x + a.size) {
        int lo = std::max(a.y, b.y), hi = std::min(a.y + a.size, b.y + b.size);
        if (lo < hi) {
          contacts[vtx(i)].push_back({perimeter_position(a, 2LL * b.x, lo + hi), vtx(j)});
          contacts[vtx(j)].push_back({perimeter_position(b, 2LL * b.x, lo + hi), vtx(i)});
          arcs.push_back({vtx(i), vtx(j), Colour::west_east});
        }
      }
      // b to the South of a.
      if (b.y == a.y + a.size) {
        int lo = std::max(a.x, b.x), hi = std::min(a.x + a.size, b.x + b.size);
        if (lo < hi) {
          contacts[vtx(i)].push_back({perimeter_position(a, lo + hi, 2LL * b.y), vtx(j)});
          contacts[vtx(j)].push_back({perimeter_position(b, lo + hi, 2LL * b.y), vtx(i)});
          arcs.push_back({vtx(i), vtx(j), Colour::north_south});
        }
      }
    }
  }
  // Crosses: grid points that are a corner of four squares.
  std::map<std::pair<int, int>, std::array<int, 4>> corners;  // NW, NE, SW, SE square at the point
  for (int i = 0; i < N; ++i) {
    const Square& s = d.squares[i];
    auto put = [&](int px, int py, int slot) {
      auto [it, fresh] = corners.try_emplace({px, py}, std::array<int, 4>{-1, -1, -1, -1});
      it->second[slot] = i;
    };
    put(s.x + s.size, s.y + s.size, 0);  // the square is NW of its SE corner
    put(s.x, s.y + s.size, 1);           // NE of its SW corner
    put(s.x + s.size, s.y, 2);           // SW of its NE corner
    put(s.x, s.y, 3);                    // SE of its NW corner
  }
  for (const auto& [pt, q] : corners) {
    if (std::find(q.begin(), q.end(), -1) != q.end()) continue;
    const bool main_diag = rule == CrossBreak::nw_se_ns || rule == CrossBreak::nw_se_we;
    const bool ns = rule == CrossBreak::nw_se_ns || rule == CrossBreak::ne_sw_ns;
    int a = main_diag ? q[0] : q[1];  // upper square of the diagonal
    int b = main_diag ? q[3] : q[2];  // lower square
    long long px2 = 2LL * pt.first, py2 = 2LL * pt.second;
    contacts[vtx(a)].push_back({perimeter_position(d.squares[a], px2, py2), vtx(b)});
    contacts[vtx(b)].push_back({perimeter_position(d.squares[b], px2, py2), vtx(a)});
    if (ns)
      arcs.push_back({vtx(a), vtx(b), Colour::north_south});
    else if (main_diag)
      arcs.push_back({vtx(a), vtx(b), Colour::west_east});  // NW is West of SE
    else
      arcs.push_back({vtx(b), vtx(a), Colour::west_east});  // SW is West of NE
  }
  std::vector<std::pair<int, Vertex>> top, right, bottom, left;
  for (int i = 0; i < N; ++i) {
    const Square& s = d.squares[i];
    const long long mid2x = 2LL * s.x + s.size, mid2y = 2LL * s.y + s.size;
    if (s.y == 0) {
      top.push_back({s.x, vtx(i)});
      contacts[vtx(i)].push_back({perimeter_position(s, mid2x, 2LL * s.y), north});
      arcs.push_back({north, vtx(i), Colour::north_south});
    }
    if (s.x + s.size == n) {
      right.push_back({s.y, vtx(i)});
      contacts[vtx(i)].push_back({perimeter_position(s, 2LL * n, mid2y), east});
      arcs.push_back({vtx(i), east, Colour::west_east});
    }
    if (s.y + s.size == n) {
      bottom.push_back({s.x, vtx(i)});
      contacts[vtx(i)].push_back({perimeter_position(s, mid2x, 2LL * n), south});
      arcs.push_back({vtx(i), south, Colour::north_south});
    }
    if (s.x == 0) {
      left.push_back({s.y, vtx(i)});
      contacts[vtx(i)].push_back({perimeter_position(s, 0, mid2y), west});
      arcs.push_back({west, vtx(i), Colour::west_east});
    }
  }
  std::sort(top.begin(), top.end());
  std::sort(right.begin(), right.end());
  std::sort(bottom.begin(), bottom.end());
  std::sort(left.begin(), left.end());
  PlaneTriangulation t;
  t.order = N;
  t.rotation.resize(N + 4);
  t.rotation[north].push_back(east);
  for (auto it = top.rbegin(); it != top.rend(); ++it) t.rotation[north].push_back(it->second);
  t.rotation[north].push_back(west);
  t.rotation[east].push_back(south);
  for (auto it = right.rbegin(); it != right.rend(); ++it) t.rotation[east].push_back(it->second);
  t.rotation[east].push_back(north);
  t.rotation[south].push_back(west);
  for (const auto& p : bottom) t.rotation[south].push_back(p.second);
  t.rotation[south].push_back(east);
  t.rotation[west].push_back(north);
  for (const auto& p : left) t.rotation[west].push_back(p.second);
  t.rotation[west].push_back(south);
  for (int i = 0; i < N; ++i) {
    auto& c = contacts[vtx(i)];
    std::sort(c.begin(), c.end());
    for (const auto& [key, v] : c) t.rotation[vtx(i)].push_back(v);
  }
  TransversalStructure s = make_structure(t, Cardinals{north, east, south, west});
  for (const auto& a : arcs) s.set(a.tail, a.head, a.colour);
  return s;
}

std::string render_ascii(const Dissection& d) {
  static const std::string glyphs = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::vector<std::string> rows(d.side, std::string(d.side, '.'));
  for (std::size_t i = 0; i < d.squares.size(); ++i) {
    const auto& s = d.squares[i];
    for (int y = s.y; y < s.y + s.size && y < d.side; ++y)
      for (int x = s.x; x < s.x + s.size && x < d.side; ++x) rows[y][x] = glyphs[i % glyphs.size()];
  }
  std::string out;
  for (const auto& r : rows) out += r + "\n";
  return out;
}

}  // namespace quilt
