#include "quilt/symmetry.hpp"

#include <stdexcept>

namespace quilt {

const char* to_string(Symmetry g) {
  switch (g) {
    case Symmetry::identity: return "identity";
    case Symmetry::rot90: return "rot90";
    case Symmetry::rot180: return "rot180";
    case Symmetry::rot270: return "rot270";
    case Symmetry::flip_x: return "flip-x";
    case Symmetry::flip_y: return "flip-y";
    case Symmetry::transpose: return "transpose";
    case Symmetry::antitranspose: return "antitranspose";
  }
  return "?";
}

const char* to_string(StabilizerClass c) {
  switch (c) {
    case StabilizerClass::trivial: return "trivial";
    case StabilizerClass::one_diagonal: return "one-diagonal";
    case StabilizerClass::one_axis: return "one-axis";
    case StabilizerClass::half_turn: return "half-turn";
    case StabilizerClass::both_diagonals: return "both-diagonals";
    case StabilizerClass::both_axes: return "both-axes";
    case StabilizerClass::quarter_turn: return "quarter-turn";
    case StabilizerClass::full: return "full";
  }
  return "?";
}

StabilizerClass classify_stabilizer(SymmetryMask mask) {
  const SymmetryMask e = bit(Symmetry::identity);
  const SymmetryMask half = bit(Symmetry::rot180);
  const SymmetryMask diag1 = bit(Symmetry::transpose), diag2 = bit(Symmetry::antitranspose);
  const SymmetryMask axis1 = bit(Symmetry::flip_x), axis2 = bit(Symmetry::flip_y);
  const SymmetryMask quarter = bit(Symmetry::rot90) | bit(Symmetry::rot270);
  if (mask == 0xFF) return StabilizerClass::full;
  if (mask == e) return StabilizerClass::trivial;
  if (mask == (e | diag1) || mask == (e | diag2)) return StabilizerClass::one_diagonal;
  if (mask == (e | axis1) || mask == (e | axis2)) return StabilizerClass::one_axis;
  if (mask == (e | half)) return StabilizerClass::half_turn;
  if (mask == (e | half | diag1 | diag2)) return StabilizerClass::both_diagonals;
  if (mask == (e | half | axis1 | axis2)) return StabilizerClass::both_axes;
  if (mask == (e | half | quarter)) return StabilizerClass::quarter_turn;
  throw std::invalid_argument("classify_stabilizer: mask is not a subgroup");
}

}  // namespace quilt
