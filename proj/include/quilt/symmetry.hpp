#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace quilt {

/// The eight symmetries of the square board. Coordinates grow East (x) and
/// South (y); rotations are clockwise on screen.
enum class Symmetry : std::uint8_t {
  identity,
  rot90,
  rot180,
  rot270,
  flip_x,          // mirror in the vertical axis
  flip_y,          // mirror in the horizontal axis
  transpose,       // mirror in the main (NW-SE) diagonal
  antitranspose,   // mirror in the NE-SW diagonal
};

inline constexpr std::array<Symmetry, 8> all_symmetries{
    Symmetry::identity, Symmetry::rot90,  Symmetry::rot180,    Symmetry::rot270,
    Symmetry::flip_x,   Symmetry::flip_y, Symmetry::transpose, Symmetry::antitranspose};

const char* to_string(Symmetry g);

/// Image of unit cell (x, y) on an n x n board.
constexpr std::pair<int, int> apply_cell(Symmetry g, int n, int x, int y) {
  switch (g) {
    case Symmetry::identity: return {x, y};
    case Symmetry::rot90: return {n - 1 - y, x};
    case Symmetry::rot180: return {n - 1 - x, n - 1 - y};
    case Symmetry::rot270: return {y, n - 1 - x};
    case Symmetry::flip_x: return {n - 1 - x, y};
    case Symmetry::flip_y: return {x, n - 1 - y};
    case Symmetry::transpose: return {y, x};
    case Symmetry::antitranspose: return {n - 1 - y, n - 1 - x};
  }
  return {x, y};
}

/// Image of the k x k block with North-West cell (x, y): its new North-West cell.
constexpr std::pair<int, int> apply_block(Symmetry g, int n, int x, int y, int k) {
  auto [ax, ay] = apply_cell(g, n, x, y);
  auto [bx, by] = apply_cell(g, n, x + k - 1, y + k - 1);
  return {ax < bx ? ax : bx, ay < by ? ay : by};
}

using SymmetryMask = std::uint8_t;  // bit i set <=> all_symmetries[i] in the set

constexpr SymmetryMask bit(Symmetry g) { return SymmetryMask(1u << static_cast<unsigned>(g)); }

/// Stabilizer subgroups of the square's symmetry group, up to conjugacy.
enum class StabilizerClass : std::uint8_t {
  trivial,
  one_diagonal,
  one_axis,
  half_turn,
  both_diagonals,
  both_axes,
  quarter_turn,
  full,
};

inline constexpr std::array<StabilizerClass, 8> all_stabilizer_classes{
    StabilizerClass::trivial,        StabilizerClass::one_diagonal, StabilizerClass::one_axis,
    StabilizerClass::half_turn,      StabilizerClass::both_diagonals, StabilizerClass::both_axes,
    StabilizerClass::quarter_turn,   StabilizerClass::full};

const char* to_string(StabilizerClass c);

/// Classifies a subgroup given as a mask; throws if the mask is not one.
StabilizerClass classify_stabilizer(SymmetryMask mask);

constexpr int group_order(StabilizerClass c) {
  switch (c) {
    case StabilizerClass::trivial: return 1;
    case StabilizerClass::one_diagonal:
    case StabilizerClass::one_axis:
    case StabilizerClass::half_turn: return 2;
    case StabilizerClass::both_diagonals:
    case StabilizerClass::both_axes:
    case StabilizerClass::quarter_turn: return 4;
    case StabilizerClass::full: return 8;
  }
  return 1;
}

constexpr int orbit_size(StabilizerClass c) { return 8 / group_order(c); }

}  // namespace quilt
