#pragma once

#include "quilt/linsys.hpp"
#include "quilt/symmetry.hpp"
#include "quilt/transversal.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quilt {

/// Axis-aligned subsquare; (x, y) is its North-West corner.
struct Square {
  int x = 0;
  int y = 0;
  int size = 0;

  friend bool operator==(const Square&, const Square&) = default;
  /// Row-major order: (y, x, size).
  friend std::strong_ordering operator<=>(const Square& a, const Square& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.size <=> b.size;
  }
};

struct Dissection {
  int side = 0;
  std::vector<Square> squares;  // kept sorted by (y, x)

  int order() const { return static_cast<int>(squares.size()); }
  void sort();
  friend bool operator==(const Dissection&, const Dissection&) = default;
};

/// nullopt iff the squares tile the side x side board exactly.
std::optional<std::string> tiling_error(const Dissection& d);
bool is_prime(const Dissection& d);
Dissection transformed(const Dissection& d, Symmetry g);

struct CanonicalKey {
  std::vector<std::uint32_t> code;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

/// Raw (side, y, x, size, ...) encoding of the sorted square list.
CanonicalKey encode(const Dissection& d);
/// Minimum of `encode` over the eight symmetry images.
CanonicalKey canonicalize(const Dissection& d);
/// The image whose encoding is the canonical key.
Dissection canonical_form(const Dissection& d);
SymmetryMask symmetry_mask(const Dissection& d);
StabilizerClass stabilizer(const Dissection& d);
/// Sorted multiset of sizes.
std::vector<int> size_multiset(const Dissection& d);

/// Unknown numbering for the local equations of an order-N structure:
/// x_0..x_{N-1}, then y_0..y_{N-1}, then L_0..L_{N-1}.
struct UnknownLayout {
  int order;
  int count() const { return 3 * order; }
  int x(int square) const { return square; }
  int y(int square) const { return order + square; }
  int length(int square) const { return 2 * order + square; }
};

/// `sum coefficients[j] * u_j = constant` in normalised (unit square) form.
struct Equation {
  std::vector<std::int64_t> coefficients;
  std::int64_t constant = 0;
  friend bool operator==(const Equation&, const Equation&) = default;
};

/// Equation implied by one labelled edge, nullopt for unlabelled edges and
/// for edges between two cardinal vertices.
std::optional<Equation> edge_equation(const TransversalStructure& s, int edge);
/// Equations for every labelled edge, in edge order.
std::vector<Equation> local_equations(const TransversalStructure& s);

/// One equation per North-South traverse (N to S) followed by one per
/// West-East traverse (W to E): the member lengths sum to 1.
std::vector<Equation> traverse_equations(const TransversalStructure& s);
/// Vertex sequences of the traverses, cardinals included.
std::vector<std::vector<Vertex>> traverses(const TransversalStructure& s, Colour c);

/// Two West-East paths with common ends that enclose no other West-East
/// edge; `upper` and `lower` hold the inner vertices of each path.
struct Pocket {
  Vertex source, sink;
  std::vector<Vertex> upper, lower;
};
std::vector<Pocket> horizontal_pockets(const TransversalStructure& s);
/// sum L(upper) - sum L(lower) = 0.
Equation pocket_equation(const TransversalStructure& s, const Pocket& p);

enum class Rejection { none, inconsistent, underdetermined, length_out_of_range, geometry_mismatch };
const char* to_string(Rejection r);

struct Realization {
  std::optional<Dissection> dissection;
  std::vector<Square> placement;  // by square index, when realized
  Rejection reason = Rejection::none;
  std::string detail;
  explicit operator bool() const { return dissection.has_value(); }
};

/// Solves the local equations of a complete structure and checks that the
/// result is an integer tiling consistent with every graph edge.
Realization realize(const TransversalStructure& s, WidthMode mode = WidthMode::automatic);

/// Closed squares intersect.
bool touching(const Square& a, const Square& b);

/// Equation feedback backed by an incremental LinearSystem.
class LocalEquationHook : public EquationFeedback {
 public:
  explicit LocalEquationHook(WidthMode mode = WidthMode::automatic) : mode_(mode) {}
  bool begin(const TransversalStructure& s) override;
  bool assign(const TransversalStructure& s, int edge) override;
  void unassign() override;

  const LinearSystem& system() const { return *system_; }
  std::uint64_t max_magnitude() const { return max_magnitude_; }

 private:
  WidthMode mode_;
  std::optional<LinearSystem> system_;
  std::vector<std::size_t> marks_;
  std::uint64_t max_magnitude_ = 0;
};

/// Which diagonal joins the four squares at a cross, and with which colour.
enum class CrossBreak { nw_se_ns, nw_se_we, ne_sw_ns, ne_sw_we };

/// The coloured, directed contact graph of a dissection (squares become
/// vertices 4.., in sorted order), with every cross broken by `rule`.
TransversalStructure structure_from_dissection(const Dissection& d, CrossBreak rule = CrossBreak::nw_se_ns);

/// ASCII rendering, one character per unit cell.
std::string render_ascii(const Dissection& d);

}  // namespace quilt
