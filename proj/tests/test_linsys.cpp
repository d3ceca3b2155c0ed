#include "quilt/linsys.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace quilt;

namespace {

using Equation = std::pair<std::vector<std::int64_t>, std::int64_t>;

// Dense rational elimination; returns ranks of A and [A|b] and, when
// unique, the solution.
struct Dense {
  int rank_a = 0;
  int rank_ab = 0;
  std::vector<Rational> x;
};

Dense dense_solve(int n, const std::vector<Equation>& eqs) {
  std::vector<std::vector<Rational>> m;
  for (const auto& [c, k] : eqs) {
    std::vector<Rational> r(c.begin(), c.end());
    r.push_back(k);
    m.push_back(r);
  }
  Dense out;
  int row = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col <= n && row < static_cast<int>(m.size()); ++col) {
    int sel = -1;
    for (int i = row; i < static_cast<int>(m.size()); ++i)
      if (m[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[row], m[sel]);
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col] / m[row][col];
      for (int j = col; j <= n; ++j) m[i][j] -= f * m[row][j];
    }
    if (col < n) ++out.rank_a;
    pivot_col.push_back(col);
    ++row;
  }
  out.rank_ab = row;
  if (out.rank_a == n && out.rank_ab == n) {
    out.x.resize(n);
    for (int i = 0; i < n; ++i) out.x[pivot_col[i]] = m[i][n] / m[i][pivot_col[i]];
  }
  return out;
}

std::vector<Equation> random_system(std::mt19937& rng, int n, int m, int span) {
  std::uniform_int_distribution<int> coef(-span, span), zero(0, 2);
  std::vector<Equation> eqs;
  for (int i = 0; i < m; ++i) {
    std::vector<std::int64_t> c(n);
    for (auto& v : c) v = zero(rng) == 0 ? 0 : coef(rng);
    eqs.push_back({c, coef(rng)});
  }
  // Sometimes add a combination of earlier rows.
  if (m >= 2 && zero(rng) == 0) {
    std::vector<std::int64_t> c(n);
    for (int j = 0; j < n; ++j) c[j] = 2 * eqs[0].first[j] - 3 * eqs[1].first[j];
    eqs.push_back({c, 2 * eqs[0].second - 3 * eqs[1].second});
  }
  return eqs;
}

struct Outcome {
  bool consistent = true;
  int rank = 0;
  std::optional<std::vector<Rational>> x;
};

Outcome feed(int n, const std::vector<Equation>& eqs, WidthMode mode = WidthMode::automatic) {
  LinearSystem s(n, mode);
  Outcome o;
  for (const auto& [c, k] : eqs)
    if (s.add_equation(std::span<const std::int64_t>(c), k) == AddResult::inconsistent) o.consistent = false;
  o.rank = s.rank();
  auto r = s.solve();
  if (auto* u = std::get_if<UniqueSolution>(&r)) o.x = u->values;
  return o;
}

}  // namespace

TEST_CASE("agrees with dense elimination") {
  std::mt19937 rng(7);
  int unique = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 2 + trial % 7;
    int m = 1 + static_cast<int>(rng() % (n + 3));
    auto eqs = random_system(rng, n, m, 5);
    Dense d = dense_solve(n, eqs);
    Outcome o = feed(n, eqs);
    CHECK(o.consistent == (d.rank_a == d.rank_ab));
    if (!o.consistent) continue;
    CHECK(o.rank == d.rank_a);
    CHECK(o.x.has_value() == (d.rank_a == n));
    if (o.x) {
      ++unique;
      CHECK(*o.x == d.x);
      for (const auto& [c, k] : eqs) CHECK(satisfies(c, k, *o.x));
    }
  }
  CHECK(unique > 100);
}

TEST_CASE("result does not depend on equation order") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 3 + trial % 6;
    auto eqs = random_system(rng, n, n + 2, 4);
    Outcome base = feed(n, eqs);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(eqs.begin(), eqs.end(), rng);
      Outcome o = feed(n, eqs);
      CHECK(o.consistent == base.consistent);
      if (base.consistent) {
        CHECK(o.rank == base.rank);
        CHECK(o.x == base.x);
      }
    }
  }
}

TEST_CASE("stored rows are gcd-reduced with positive pivot") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 6;
    auto eqs = random_system(rng, n, 5, 9);
    for (auto& [c, k] : eqs) {
      for (auto& v : c) v *= 6;
      k *= 6;
    }
    std::shuffle(eqs.begin(), eqs.end(), rng);
    LinearSystem s(n);
    for (const auto& [c, k] : eqs) s.add_equation(std::span<const std::int64_t>(c), k);
    for (int p = 0; p < n; ++p) {
      auto r = s.row(p);
      if (r.empty()) continue;
      BigInt g = 0;
      for (const auto& v : r) g = boost::multiprecision::gcd(g, v);
      CHECK(g == 1);
      CHECK(r[p] > 0);
      for (int j = 0; j < p; ++j) CHECK(r[j] == 0);
    }
  }
}

TEST_CASE("redundant and inconsistent equations leave the system unchanged") {
  LinearSystem s(3);
  std::vector<std::int64_t> a{1, 1, 0}, b{0, 1, -1}, c{2, 3, -1};
  CHECK(s.add_equation(std::span<const std::int64_t>(a), 1) == AddResult::new_information);
  CHECK(s.add_equation(std::span<const std::int64_t>(b), 0) == AddResult::new_information);
  CHECK(s.add_equation(std::span<const std::int64_t>(c), 2) == AddResult::redundant);
  CHECK(s.add_equation(std::span<const std::int64_t>(c), 3) == AddResult::inconsistent);
  CHECK(s.rank() == 2);
  auto r = s.solve();
  REQUIRE(std::holds_alternative<Underdetermined>(r));
  CHECK(std::get<Underdetermined>(r).unknowns.size() >= 1);
}

TEST_CASE("underdetermined unknowns are exactly the unfixed ones") {
  // u0 fixed, u1 + u2 fixed, u3 untouched.
  LinearSystem s(4);
  std::vector<std::int64_t> a{1, 0, 0, 0}, b{0, 1, 1, 0};
  s.add_equation(std::span<const std::int64_t>(a), 2);
  s.add_equation(std::span<const std::int64_t>(b), 5);
  auto r = s.solve();
  REQUIRE(std::holds_alternative<Underdetermined>(r));
  CHECK(std::get<Underdetermined>(r).unknowns == std::vector<int>{1, 2, 3});
}

TEST_CASE("checkpoint and rollback") {
  LinearSystem s(2);
  std::vector<std::int64_t> a{1, -1}, b{1, 1};
  s.add_equation(std::span<const std::int64_t>(a), 0);
  auto mark = s.checkpoint();
  s.add_equation(std::span<const std::int64_t>(b), 1);
  CHECK(std::holds_alternative<UniqueSolution>(s.solve()));
  s.rollback(mark);
  CHECK(s.rank() == 1);
  CHECK(s.add_equation(std::span<const std::int64_t>(b), 3) == AddResult::new_information);
  auto x = std::get<UniqueSolution>(s.solve()).values;
  CHECK(x[0] == Rational(3, 2));
  CHECK(x[1] == Rational(3, 2));
}

TEST_CASE("64-bit overflow: fixed throws, automatic escalates") {
  const std::int64_t big = std::int64_t(1) << 40;
  std::vector<Equation> eqs{
      {{big + 1, big - 1, 0}, 1},
      {{big - 3, big + 7, 1}, 2},
      {{big + 5, 3, big - 11}, 3},
  };
  bool threw = false;
  try {
    feed(3, eqs, WidthMode::fixed);
  } catch (const OverflowError&) {
    threw = true;
  }
  CHECK(threw);

  LinearSystem s(3);
  for (const auto& [c, k] : eqs) s.add_equation(std::span<const std::int64_t>(c), k);
  CHECK(s.is_arbitrary());
  Dense d = dense_solve(3, eqs);
  auto x = std::get<UniqueSolution>(s.solve()).values;
  CHECK(x == d.x);
  CHECK(feed(3, eqs, WidthMode::arbitrary).x == d.x);
}

TEST_CASE("wrong coefficient length is rejected") {
  LinearSystem s(3);
  std::vector<std::int64_t> a{1, 2};
  CHECK_THROWS_AS(s.add_equation(std::span<const std::int64_t>(a), 0), std::invalid_argument);
}
