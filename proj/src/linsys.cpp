#include "quilt/linsys.hpp"

#include <algorithm>

namespace quilt {

const char* to_string(AddResult r) {
  switch (r) {
    case AddResult::new_information: return "new-information";
    case AddResult::redundant: return "redundant";
    case AddResult::inconsistent: return "inconsistent";
  }
  return "?";
}

SolveResult solve_rows(int unknowns, const std::vector<std::pair<int, std::vector<BigInt>>>& rows) {
  if (static_cast<int>(rows.size()) == unknowns) {
    // Full rank: plain back substitution.
    std::vector<const std::vector<BigInt>*> by_pivot(unknowns, nullptr);
    for (const auto& [pivot, entries] : rows) by_pivot[pivot] = &entries;
    UniqueSolution out;
    out.values.resize(unknowns);
    for (int p = unknowns - 1; p >= 0; --p) {
      const auto& r = *by_pivot[p];
      Rational acc = Rational(r[unknowns]);
      for (int j = p + 1; j < unknowns; ++j)
        if (r[j] != 0) acc -= Rational(r[j]) * out.values[j];
      out.values[p] = acc / Rational(r[p]);
    }
    return out;
  }
  std::vector<int> row_of(unknowns, -1);
  std::vector<std::vector<Rational>> m;
  m.reserve(rows.size());
  for (const auto& [pivot, entries] : rows) {
    row_of[pivot] = static_cast<int>(m.size());
    std::vector<Rational> r(entries.size());
    for (std::size_t j = 0; j < entries.size(); ++j) r[j] = Rational(entries[j]);
    m.push_back(std::move(r));
  }
  // Reduced row echelon form, bottom pivot first.
  for (int p = unknowns - 1; p >= 0; --p) {
    int i = row_of[p];
    if (i < 0) continue;
    auto& r = m[i];
    for (int j = p + 1; j < unknowns; ++j) {
      if (r[j] == 0 || row_of[j] < 0) continue;
      const auto& s = m[row_of[j]];  // already has unit pivot at j
      Rational f = r[j];
      for (std::size_t k = j; k < r.size(); ++k)
        if (s[k] != 0) r[k] -= f * s[k];
    }
    Rational lead = r[p];
    for (std::size_t k = p; k < r.size(); ++k)
      if (r[k] != 0) r[k] /= lead;
  }
  std::vector<int> free_unknowns;
  for (int p = 0; p < unknowns; ++p) {
    int i = row_of[p];
    if (i < 0) {
      free_unknowns.push_back(p);
      continue;
    }
    for (int j = p + 1; j < unknowns; ++j)
      if (row_of[j] < 0 && m[i][j] != 0) {
        free_unknowns.push_back(p);
        break;
      }
  }
  if (!free_unknowns.empty()) return Underdetermined{std::move(free_unknowns)};
  UniqueSolution out;
  out.values.resize(unknowns);
  for (int p = 0; p < unknowns; ++p) out.values[p] = m[row_of[p]][unknowns];
  return out;
}

LinearSystem::LinearSystem(int unknowns, WidthMode mode)
    : mode_(mode), impl_(std::in_place_type<BasicLinearSystem<std::int64_t>>, unknowns) {
  if (mode == WidthMode::arbitrary) impl_.emplace<BasicLinearSystem<BigInt>>(unknowns);
}

int LinearSystem::unknown_count() const {
  return std::visit([](const auto& s) { return s.unknown_count(); }, impl_);
}

void LinearSystem::escalate() {
  auto& narrow = std::get<BasicLinearSystem<std::int64_t>>(impl_);
  auto wide = narrow.converted<BigInt>();
  impl_ = std::move(wide);
}

AddResult LinearSystem::add_equation(std::span<const std::int64_t> coefficients, std::int64_t constant) {
  if (auto* narrow = std::get_if<BasicLinearSystem<std::int64_t>>(&impl_)) {
    try {
      return narrow->add(coefficients, constant);
    } catch (const OverflowError&) {
      if (mode_ == WidthMode::fixed) throw;
      escalate();
    }
  }
  std::vector<BigInt> big(coefficients.begin(), coefficients.end());
  return std::get<BasicLinearSystem<BigInt>>(impl_).add(big, BigInt(constant));
}

AddResult LinearSystem::add_equation(std::span<const BigInt> coefficients, const BigInt& constant) {
  if (std::holds_alternative<BasicLinearSystem<std::int64_t>>(impl_)) {
    bool fits = constant >= std::numeric_limits<std::int64_t>::min() &&
                constant <= std::numeric_limits<std::int64_t>::max();
    for (const auto& c : coefficients)
      fits = fits && c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max();
    if (fits) {
      std::vector<std::int64_t> small(coefficients.size());
      for (std::size_t i = 0; i < small.size(); ++i) small[i] = static_cast<std::int64_t>(coefficients[i]);
      return add_equation(std::span<const std::int64_t>(small), static_cast<std::int64_t>(constant));
    }
    if (mode_ == WidthMode::fixed) throw OverflowError();
    escalate();
  }
  return std::get<BasicLinearSystem<BigInt>>(impl_).add(coefficients, constant);
}

SolveResult LinearSystem::solve() const {
  return std::visit([](const auto& s) { return s.solve(); }, impl_);
}

int LinearSystem::rank() const {
  return std::visit([](const auto& s) { return s.rank(); }, impl_);
}

std::size_t LinearSystem::checkpoint() const {
  return std::visit([](const auto& s) { return s.checkpoint(); }, impl_);
}

void LinearSystem::rollback(std::size_t mark) {
  std::visit([mark](auto& s) { s.rollback(mark); }, impl_);
}

std::vector<BigInt> LinearSystem::row(int pivot) const {
  return std::visit(
      [pivot](const auto& s) {
        std::vector<BigInt> out;
        for (const auto& v : s.row(pivot)) out.emplace_back(v);
        return out;
      },
      impl_);
}

std::uint64_t LinearSystem::max_magnitude() const {
  return std::visit([](const auto& s) { return s.max_magnitude(); }, impl_);
}

bool satisfies(std::span<const std::int64_t> coefficients, std::int64_t constant, const std::vector<Rational>& values) {
  Rational sum = 0;
  for (std::size_t j = 0; j < coefficients.size(); ++j)
    if (coefficients[j] != 0) sum += Rational(coefficients[j]) * values[j];
  return sum == Rational(constant);
}

}  // namespace quilt
