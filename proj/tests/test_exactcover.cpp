#include "quilt/exactcover.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace quilt;

namespace {

// Plain recursive tiler: fill the first empty cell with every square that fits.
void tile(int n, std::vector<char>& used, std::vector<Square>& cur, std::vector<Dissection>& out) {
  int cell = 0;
  while (cell < n * n && used[cell]) ++cell;
  if (cell == n * n) {
    Dissection d{n, cur};
    d.sort();
    out.push_back(d);
    return;
  }
  int x = cell % n, y = cell / n;
  for (int k = 1; x + k <= n && y + k <= n; ++k) {
    bool free = true;
    for (int dx = 0; dx < k && free; ++dx) free = !used[y * n + x + dx];
    if (!free) break;
    for (int dy = 0; dy < k; ++dy)
      for (int dx = 0; dx < k; ++dx) used[(y + dy) * n + x + dx] = 1;
    cur.push_back({x, y, k});
    tile(n, used, cur, out);
    cur.pop_back();
    for (int dy = 0; dy < k; ++dy)
      for (int dx = 0; dx < k; ++dx) used[(y + dy) * n + x + dx] = 0;
  }
}

std::vector<Dissection> all_tilings(int n) {
  std::vector<char> used(n * n, 0);
  std::vector<Square> cur;
  std::vector<Dissection> out;
  tile(n, used, cur, out);
  return out;
}

bool gcd_one(const Dissection& d) {
  int g = 0;
  for (const auto& s : d.squares) g = std::gcd(g, s.size);
  return g == 1;
}

// The board as a grid of square ids in first-appearance order, after
// mapping cell (x, y) by an explicit 2x2 integer matrix about the centre.
std::vector<int> grid_image(const Dissection& d, int a, int b, int c, int e) {
  const int n = d.side;
  std::vector<int> owner(n * n);
  for (std::size_t i = 0; i < d.squares.size(); ++i) {
    const auto& s = d.squares[i];
    for (int y = s.y; y < s.y + s.size; ++y)
      for (int x = s.x; x < s.x + s.size; ++x) owner[y * n + x] = static_cast<int>(i);
  }
  std::vector<int> img(n * n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      int cx = 2 * x + 1 - n, cy = 2 * y + 1 - n;  // doubled centred coordinates
      int nx = a * cx + b * cy, ny = c * cx + e * cy;
      img[((ny + n - 1) / 2) * n + (nx + n - 1) / 2] = owner[y * n + x];
    }
  std::map<int, int> relabel;
  for (auto& v : img) {
    auto it = relabel.try_emplace(v, static_cast<int>(relabel.size())).first;
    v = it->second;
  }
  return img;
}

const std::array<std::array<int, 4>, 8> matrices{{
    {1, 0, 0, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0},
    {-1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0}, {0, -1, -1, 0},
}};

struct Orbits {
  std::set<std::vector<int>> keys;
  std::map<std::vector<int>, int> fixers;  // canonical grid -> number of fixing symmetries
  std::map<std::vector<int>, std::set<int>> fixing_set;
};

Orbits brute_orbits(const std::vector<Dissection>& tilings) {
  Orbits o;
  for (const auto& d : tilings) {
    std::vector<std::vector<int>> imgs;
    for (const auto& m : matrices) imgs.push_back(grid_image(d, m[0], m[1], m[2], m[3]));
    auto key = *std::min_element(imgs.begin(), imgs.end());
    if (!o.keys.insert(key).second) continue;
    std::set<int> fix;
    for (int g = 0; g < 8; ++g)
      if (imgs[g] == imgs[0]) fix.insert(g);
    o.fixers[key] = static_cast<int>(fix.size());
    o.fixing_set[key] = fix;
  }
  return o;
}

// Stabilizer class by the fixing symmetries (indices as in `matrices`).
StabilizerClass class_of(const std::set<int>& f) {
  if (f.size() == 8) return StabilizerClass::full;
  if (f.count(1)) return StabilizerClass::quarter_turn;
  if (f.count(4) && f.count(5)) return StabilizerClass::both_axes;
  if (f.count(6) && f.count(7)) return StabilizerClass::both_diagonals;
  if (f.count(2)) return StabilizerClass::half_turn;
  if (f.count(4) || f.count(5)) return StabilizerClass::one_axis;
  if (f.count(6) || f.count(7)) return StabilizerClass::one_diagonal;
  return StabilizerClass::trivial;
}

std::uint64_t brute_cover_count(int columns, const std::vector<std::vector<int>>& rows) {
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << rows.size()); ++mask) {
    std::vector<int> hit(columns, 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (mask >> r & 1)
        for (int c : rows[r]) ++hit[c];
    if (std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; })) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("dancing links agrees with subset enumeration") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 400; ++trial) {
    int columns = 3 + trial % 6;
    int nrows = 4 + static_cast<int>(rng() % 11);
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < nrows; ++r) {
      std::vector<int> row;
      for (int c = 0; c < columns; ++c)
        if (rng() % 3 == 0) row.push_back(c);
      if (row.empty()) row.push_back(static_cast<int>(rng() % columns));
      rows.push_back(row);
    }
    std::uint64_t expect = brute_cover_count(columns, rows);
    for (ColumnRule rule : {ColumnRule::minimum_remaining, ColumnRule::first}) {
      DancingLinks dl(columns, rows);
      SearchOptions opt;
      opt.rule = rule;
      std::uint64_t visited = 0;
      auto got = dl.solve([&](std::span<const int> chosen) {
        ++visited;
        std::vector<int> hit(columns, 0);
        for (int r : chosen)
          for (int c : rows[r]) ++hit[c];
        CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
      }, opt);
      CHECK(got == expect);
      CHECK(visited == expect);
    }
  }
}

TEST_CASE("tiling counts against the recursive tiler") {
  for (int n = 1; n <= 6; ++n) {
    auto tilings = all_tilings(n);
    std::uint64_t prime = std::count_if(tilings.begin(), tilings.end(), gcd_one);
    CHECK(count_all(n) == tilings.size());
    CHECK(count_prime(n) == prime);

    std::set<CanonicalKey> seen;
    ExactCoverInstance inst(n);
    solve_count(inst, [&](const Dissection& d) {
      CHECK_FALSE(tiling_error(d).has_value());
      seen.insert(encode(d));
    });
    std::set<CanonicalKey> expect;
    for (const auto& d : tilings) expect.insert(encode(d));
    CHECK(seen == expect);
  }
}

TEST_CASE("order cap and partitions") {
  const int n = 6;
  auto tilings = all_tilings(n);
  ExactCoverInstance inst(n);
  for (int cap : {1, 4, 6, 9, 12, 20}) {
    SearchOptions opt;
    opt.max_rows = cap;
    auto expect = std::count_if(tilings.begin(), tilings.end(), [&](const Dissection& d) { return d.order() <= cap; });
    CHECK(solve_count(inst, {}, opt) == static_cast<std::uint64_t>(expect));
  }
  std::uint64_t sum = 0;
  for (int p = 0; p < 5; ++p) {
    SearchOptions opt;
    opt.partition = p;
    opt.partitions = 5;
    sum += solve_count(inst, {}, opt);
  }
  CHECK(sum == tilings.size());
  CHECK(count_all(n, 3) == tilings.size());
}

TEST_CASE("fixed counts against filtering") {
  for (int n = 1; n <= 6; ++n) {
    auto tilings = all_tilings(n);
    for (int g = 0; g < 8; ++g) {
      const auto& m = matrices[g];
      std::uint64_t fixed = 0, fixed_prime = 0;
      for (const auto& d : tilings)
        if (grid_image(d, m[0], m[1], m[2], m[3]) == grid_image(d, 1, 0, 0, 1)) {
          ++fixed;
          fixed_prime += gcd_one(d);
        }
      CHECK_MESSAGE(count_fixed(n, all_symmetries[g]) == fixed, "n=" << n << " g=" << g);
      CHECK(count_fixed_prime(n, all_symmetries[g]) == static_cast<std::int64_t>(fixed_prime));
    }
  }
  CHECK(count_fixed(2, Symmetry::rot90) == 2);
  std::uint64_t sum = 0;
  for (Symmetry g : all_symmetries) sum += count_fixed(4, g);
  CHECK(sum == 104);
}

TEST_CASE("orbit counts: Burnside, dedup and brute force") {
  for (int n = 1; n <= 6; ++n) {
    auto tilings = all_tilings(n);
    std::vector<Dissection> primes;
    std::copy_if(tilings.begin(), tilings.end(), std::back_inserter(primes), gcd_one);
    auto all_orbits = brute_orbits(tilings).keys.size();
    auto prime_orbits = brute_orbits(primes).keys.size();
    CHECK(count_up_to_symmetry_burnside(n, false) == all_orbits);
    CHECK(count_up_to_symmetry_burnside(n, true) == prime_orbits);
    CHECK(count_up_to_symmetry_dedup(n, false) == all_orbits);
    CHECK(count_up_to_symmetry_dedup(n, true) == prime_orbits);
    CHECK(count_up_to_symmetry(n, true) == prime_orbits);
  }
}

TEST_CASE("stabilizer census against brute force") {
  for (int n = 1; n <= 6; ++n) {
    for (bool prime_only : {false, true}) {
      auto tilings = all_tilings(n);
      if (prime_only) tilings.erase(std::remove_if(tilings.begin(), tilings.end(), [](const Dissection& d) { return !gcd_one(d); }), tilings.end());
      Orbits o = brute_orbits(tilings);
      std::map<StabilizerClass, std::uint64_t> expect;
      for (const auto& [key, fix] : o.fixing_set) ++expect[class_of(fix)];
      StabilizerCensus census = stabilizer_census(n, prime_only);
      for (StabilizerClass c : all_stabilizer_classes) {
        auto it = census.classes.find(c);
        std::uint64_t got = it == census.classes.end() ? 0 : it->second;
        CHECK_MESSAGE(got == expect[c], "n=" << n << " class " << to_string(c));
      }
      CHECK(census.tilings() == tilings.size());
      CHECK(census.orbits() == o.keys.size());
      CHECK(census.orbits_of_size(1) + census.orbits_of_size(2) + census.orbits_of_size(4) + census.orbits_of_size(8) ==
            census.orbits());
      CHECK(census.orbits_of_size(1) + 2 * census.orbits_of_size(2) + 4 * census.orbits_of_size(4) +
                8 * census.orbits_of_size(8) ==
            census.tilings());
      // Burnside: the fixed counts sum to 8 per orbit.
      std::uint64_t fixed_total = 0;
      for (Symmetry g : all_symmetries) fixed_total += prime_only ? count_fixed_prime(n, g) : count_fixed(n, g);
      CHECK(fixed_total == 8 * census.orbits());
    }
  }
}

TEST_CASE("prime orbits by order and the comparison grid") {
  auto grid = crosscheck_table(6, 12);
  for (int n = 1; n <= 6; ++n) {
    auto tilings = all_tilings(n);
    std::map<int, std::set<std::vector<int>>> by_order;
    for (const auto& d : tilings)
      if (gcd_one(d)) {
        std::vector<std::vector<int>> imgs;
        for (const auto& m : matrices) imgs.push_back(grid_image(d, m[0], m[1], m[2], m[3]));
        by_order[d.order()].insert(*std::min_element(imgs.begin(), imgs.end()));
      }
    auto got = prime_orbits_by_order(n, 0);
    for (const auto& [order, keys] : by_order) {
      CHECK(got[order] == keys.size());
      if (order <= 12) {
        auto it = grid.find({n, order});
        CHECK((it == grid.end() ? 0 : it->second) == keys.size());
      }
    }
    std::uint64_t total = 0;
    for (const auto& [order, c] : got) total += c;
    CHECK(total == count_up_to_symmetry(n, true));
  }
}

TEST_CASE("moebius") {
  const std::vector<int> mu{1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int n = 1; n <= 12; ++n) CHECK(moebius(n) == mu[n - 1]);
}

TEST_CASE("symmetric instance rows are disjoint orbits") {
  for (int n = 2; n <= 7; ++n)
    for (Symmetry g : all_symmetries) {
      SymmetricInstance inst(n, g);
      for (const auto& orbit : inst.orbits) {
        std::set<std::pair<int, int>> cells;
        std::size_t area = 0;
        for (const auto& s : orbit) {
          area += s.size * s.size;
          for (int y = s.y; y < s.y + s.size; ++y)
            for (int x = s.x; x < s.x + s.size; ++x) cells.insert({x, y});
        }
        CHECK(cells.size() == area);
      }
    }
}
