#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace quilt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class AddResult { new_information, redundant, inconsistent };

enum class WidthMode { automatic, fixed, arbitrary };

const char* to_string(AddResult r);

struct OverflowError : std::overflow_error {
  OverflowError() : std::overflow_error("64-bit overflow in equation elimination") {}
};

struct UniqueSolution {
  std::vector<Rational> values;
};
struct Underdetermined {
  std::vector<int> unknowns;  // unknowns not fixed by the system
};
using SolveResult = std::variant<UniqueSolution, Underdetermined>;

namespace detail {

template <class Scalar>
struct ScalarOps;

template <>
struct ScalarOps<std::int64_t> {
  static std::uint64_t magnitude(std::int64_t v) {
    return v < 0 ? std::uint64_t(0) - std::uint64_t(v) : std::uint64_t(v);
  }
  static std::int64_t gcd(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(std::gcd(magnitude(a), magnitude(b)));
  }
  // a*x - b*y
  static std::int64_t mul_sub(std::int64_t a, std::int64_t x, std::int64_t b, std::int64_t y) {
    std::int64_t p, q, r;
    if (__builtin_mul_overflow(a, x, &p) || __builtin_mul_overflow(b, y, &q) || __builtin_sub_overflow(p, q, &r))
      throw OverflowError();
    return r;
  }
  static std::int64_t neg(std::int64_t v) {
    if (v == std::numeric_limits<std::int64_t>::min()) throw OverflowError();
    return -v;
  }
  static BigInt to_big(std::int64_t v) { return BigInt(v); }
};

template <>
struct ScalarOps<BigInt> {
  static std::uint64_t magnitude(const BigInt& v) {
    BigInt a = abs(v);
    if (a > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(a);
  }
  static BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
  static BigInt mul_sub(const BigInt& a, const BigInt& x, const BigInt& b, const BigInt& y) { return a * x - b * y; }
  static BigInt neg(const BigInt& v) { return -v; }
  static BigInt to_big(const BigInt& v) { return v; }
};

}  // namespace detail

/// Incremental upper-triangular equation store over integer scalars.
///
/// Each equation is `sum_j coeff[j] * u_j = constant`. Rows are keyed by
/// their pivot (earliest unknown with a nonzero coefficient); every stored
/// row is divided by the gcd of all its entries and has a positive pivot.
/// A rejected equation leaves the system untouched.
template <class Scalar>
class BasicLinearSystem {
  using Ops = detail::ScalarOps<Scalar>;

 public:
  explicit BasicLinearSystem(int unknowns)
      : unknowns_(unknowns), width_(unknowns + 1), data_(std::size_t(unknowns) * width_), has_(unknowns, 0) {}

  int unknown_count() const { return unknowns_; }

  AddResult add(std::span<const Scalar> coefficients, const Scalar& constant) {
    if (static_cast<int>(coefficients.size()) != unknowns_)
      throw std::invalid_argument("add_equation: coefficient vector has wrong length");
    scratch_.assign(coefficients.begin(), coefficients.end());
    scratch_.push_back(constant);
    return add_scratch();
  }

  /// Pivot row, or empty span when no row has this pivot.
  std::span<const Scalar> row(int pivot) const {
    if (!has_[pivot]) return {};
    return {data_.data() + std::size_t(pivot) * width_, std::size_t(width_)};
  }
  bool has_row(int pivot) const { return has_[pivot] != 0; }
  int rank() const { return static_cast<int>(log_.size()); }

  std::size_t checkpoint() const { return log_.size(); }
  void rollback(std::size_t mark) {
    while (log_.size() > mark) {
      has_[log_.back()] = 0;
      log_.pop_back();
    }
  }
  const std::vector<int>& insertion_log() const { return log_; }

  std::uint64_t max_magnitude() const { return max_magnitude_; }

  SolveResult solve() const;

  template <class Other>
  BasicLinearSystem<Other> converted() const {
    BasicLinearSystem<Other> out(unknowns_);
    std::vector<Other> coeffs(unknowns_);
    for (int p : log_) {
      const Scalar* r = data_.data() + std::size_t(p) * width_;
      for (int j = 0; j < unknowns_; ++j) coeffs[j] = Other(r[j]);
      out.add(coeffs, Other(r[unknowns_]));
    }
    out.note_magnitude(max_magnitude_);
    return out;
  }

  void note_magnitude(std::uint64_t m) { max_magnitude_ = std::max(max_magnitude_, m); }

 private:
  AddResult add_scratch() {
    Scalar* r = scratch_.data();
    while (true) {
      int p = 0;
      while (p < unknowns_ && r[p] == 0) ++p;
      if (p == unknowns_) return r[unknowns_] == 0 ? AddResult::redundant : AddResult::inconsistent;
      if (!has_[p]) {
        normalize(r, p);
        std::copy(r, r + width_, data_.data() + std::size_t(p) * width_);
        has_[p] = 1;
        log_.push_back(p);
        return AddResult::new_information;
      }
      const Scalar* e = data_.data() + std::size_t(p) * width_;
      Scalar g = Ops::gcd(e[p], r[p]);
      Scalar a = e[p] / g;
      Scalar b = r[p] / g;
      for (int j = p; j < width_; ++j) r[j] = Ops::mul_sub(a, r[j], b, e[j]);
      reduce(r, p);
    }
  }

  void reduce(Scalar* r, int from) {
    Scalar g = 0;
    for (int j = from; j < width_; ++j)
      if (r[j] != 0) g = Ops::gcd(g, r[j]);
    if (g > 1)
      for (int j = from; j < width_; ++j) r[j] /= g;
    for (int j = from; j < width_; ++j) max_magnitude_ = std::max(max_magnitude_, Ops::magnitude(r[j]));
  }

  void normalize(Scalar* r, int pivot) {
    reduce(r, pivot);
    if (r[pivot] < 0)
      for (int j = pivot; j < width_; ++j) r[j] = Ops::neg(r[j]);
  }

  int unknowns_;
  int width_;
  std::vector<Scalar> data_;
  std::vector<char> has_;
  std::vector<int> log_;
  std::vector<Scalar> scratch_;
  std::uint64_t max_magnitude_ = 0;
};

/// Solves a system of rows in upper-triangular form (row p has zeros
/// before column p). Shared by both scalar widths.
SolveResult solve_rows(int unknowns, const std::vector<std::pair<int, std::vector<BigInt>>>& rows);

template <class Scalar>
SolveResult BasicLinearSystem<Scalar>::solve() const {
  std::vector<std::pair<int, std::vector<BigInt>>> rows;
  rows.reserve(log_.size());
  for (int p = 0; p < unknowns_; ++p) {
    if (!has_[p]) continue;
    const Scalar* r = data_.data() + std::size_t(p) * width_;
    std::vector<BigInt> big(width_);
    for (int j = 0; j < width_; ++j) big[j] = Ops::to_big(r[j]);
    rows.emplace_back(p, std::move(big));
  }
  return solve_rows(unknowns_, rows);
}

/// Equation accumulator that starts in 64-bit arithmetic and, in
/// `automatic` mode, moves to arbitrary precision on the first overflow.
/// In `fixed` mode an overflow raises OverflowError instead.
class LinearSystem {
 public:
  explicit LinearSystem(int unknowns, WidthMode mode = WidthMode::automatic);

  int unknown_count() const;
  bool is_arbitrary() const { return std::holds_alternative<BasicLinearSystem<BigInt>>(impl_); }
  WidthMode mode() const { return mode_; }

  AddResult add_equation(std::span<const std::int64_t> coefficients, std::int64_t constant);
  AddResult add_equation(std::span<const BigInt> coefficients, const BigInt& constant);

  SolveResult solve() const;
  int rank() const;
  std::size_t checkpoint() const;
  void rollback(std::size_t mark);

  /// Row with the given pivot as big integers (constant last); empty if none.
  std::vector<BigInt> row(int pivot) const;

  std::uint64_t max_magnitude() const;

 private:
  void escalate();

  WidthMode mode_;
  std::variant<BasicLinearSystem<std::int64_t>, BasicLinearSystem<BigInt>> impl_;
};

/// Exact check that `values` satisfies `sum coeff*value = constant`.
bool satisfies(std::span<const std::int64_t> coefficients, std::int64_t constant, const std::vector<Rational>& values);

}  // namespace quilt
