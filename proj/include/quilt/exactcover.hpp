#pragma once

#include "quilt/dissection.hpp"
#include "quilt/symmetry.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace quilt {

enum class ColumnRule { minimum_remaining, first };

struct SearchOptions {
  ColumnRule rule = ColumnRule::minimum_remaining;
  // Largest number of rows in a cover; 0 means unbounded.
  int max_rows = 0;
  // Only branches k of the first choice with k % partitions == partition.
  int partition = 0;
  int partitions = 1;
};

/// Knuth's Algorithm X on dancing links. Every column is primary.
class DancingLinks {
 public:
  DancingLinks(int columns, const std::vector<std::vector<int>>& rows);

  /// Visits every exact cover (row ids, in selection order) and returns
  /// their number.
  std::uint64_t solve(const std::function<void(std::span<const int>)>& visit, const SearchOptions& options = {});

  /// Row weights counted against `max_rows` (default 1 per row).
  void set_row_weights(std::vector<int> w) { row_weight_ = std::move(w); }

 private:
  struct Node {
    int left, right, up, down, column, row;
  };
  void cover(int c);
  void uncover(int c);
  void search(int depth);

  int columns_;
  std::vector<Node> nodes_;
  std::vector<int> size_;
  std::vector<int> row_weight_;
  std::vector<int> chosen_;
  int max_row_length_ = 1;
  int remaining_columns_ = 0;
  int weight_ = 0;
  SearchOptions options_;
  const std::function<void(std::span<const int>)>* visit_ = nullptr;
  std::uint64_t count_ = 0;
};

/// Columns: the n*n cells (row-major). Rows: every in-bounds k x k placement.
struct ExactCoverInstance {
  int n = 0;
  std::vector<Square> placements;
  std::vector<std::vector<int>> rows;

  explicit ExactCoverInstance(int n);
};

/// Tilings fixed by one symmetry g. Columns are the cell orbits under <g>;
/// each row is a <g>-orbit of pairwise disjoint placements.
struct SymmetricInstance {
  int n = 0;
  Symmetry g = Symmetry::identity;
  std::vector<std::vector<Square>> orbits;  // members of each row
  std::vector<std::vector<int>> rows;
  int columns = 0;

  SymmetricInstance(int n, Symmetry g);
};

using TilingVisitor = std::function<void(const Dissection&)>;

/// All tilings of the n x n board; `visitor` may be empty.
std::uint64_t solve_count(const ExactCoverInstance& instance, const TilingVisitor& visitor = {},
                          const SearchOptions& options = {});
std::uint64_t solve_count(const SymmetricInstance& instance, const TilingVisitor& visitor = {},
                          const SearchOptions& options = {});

std::uint64_t count_all(int n, int jobs = 1);
std::uint64_t count_prime(int n, int jobs = 1);
std::uint64_t count_fixed(int n, Symmetry g);
/// Prime tilings fixed by g, by Moebius inversion over the divisors of n.
std::int64_t count_fixed_prime(int n, Symmetry g);

/// Orbit counts by Burnside's lemma from the eight fixed counts.
std::uint64_t count_up_to_symmetry_burnside(int n, bool prime_only);
/// Orbit counts by visiting every tiling and keeping canonical ones.
std::uint64_t count_up_to_symmetry_dedup(int n, bool prime_only, int jobs = 1);
/// Burnside, cross-validated by dedup when n <= dedup_limit.
std::uint64_t count_up_to_symmetry(int n, bool prime_only, int dedup_limit = 6);

struct StabilizerCensus {
  std::map<StabilizerClass, std::uint64_t> classes;
  std::uint64_t orbits_of_size(int size) const;
  std::uint64_t tilings() const;  // sum of orbit sizes
  std::uint64_t orbits() const;
};

StabilizerCensus stabilizer_census(int n, bool prime_only = false, int jobs = 1);

/// (n, N) -> prime dissections up to symmetry, for n <= n_max and N <= N_max.
std::map<std::pair<int, int>, std::uint64_t> crosscheck_table(int n_max, int N_max, int jobs = 1);

/// Prime tilings of one board up to symmetry, grouped by order, with at
/// most max_order squares (0 = unbounded).
std::map<int, std::uint64_t> prime_orbits_by_order(int n, int max_order, int jobs = 1);

int moebius(int n);

}  // namespace quilt
