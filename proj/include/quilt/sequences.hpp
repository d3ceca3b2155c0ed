#pragma once

#include "quilt/dissection.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace quilt {

/// Raised when a value depends on orders beyond the enumerated bound.
struct NotDetermined : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Aggregated prime dissections, up to symmetry, of every order
/// 1..max_order (the order-1 trivial dissection included).
class CountTable {
 public:
  explicit CountTable(int max_order = 0);

  /// Adds one dissection; call once per symmetry class.
  void add(const Dissection& d);
  /// Adds the (n = 1, N = 1) trivial dissection.
  void add_trivial();

  int max_order() const { return max_order_; }
  std::uint64_t at(int n, int order) const;
  const std::map<std::pair<int, int>, std::uint64_t>& grid() const { return grid_; }
  std::uint64_t order_total(int order) const;
  std::uint64_t order_with_symmetry(int order) const;
  std::uint64_t size_collections(int order) const;
  int largest_side() const;

 private:
  int max_order_;
  std::map<std::pair<int, int>, std::uint64_t> grid_;
  std::map<int, std::uint64_t> with_symmetry_;
  std::map<int, std::set<std::vector<int>>> multisets_;
};

/// f(n) when some order <= max_order works, otherwise nullopt (then
/// f(n) > max_order is all that is known).
std::optional<int> f_if_known(const CountTable& t, int n);
int f_of_n(const CountTable& t, int n);
int g_of_N(const CountTable& t, int order);
int least_edge_at_least(const CountTable& t, int order);
int smaller_squares_min(const CountTable& t, int n);

struct Sequence {
  std::string id;
  int offset = 1;  // index of values[0]
  std::vector<std::int64_t> values;
};

/// A221841, A221842 and A232484 for orders 1..N_max.
std::vector<Sequence> order_sequences(const CountTable& t, int N_max);
/// Every sequence derivable from the table, each cut at its completeness bound.
std::vector<Sequence> derived_sequences(const CountTable& t);

enum class SequenceFormat { bfile, delimited };
std::string emit(const Sequence& s, SequenceFormat format);
/// Inverse of emit in b-file form; the id is not stored in a b-file.
Sequence parse_bfile(const std::string& text, const std::string& id = {});
Sequence parse_delimited(const std::string& text, const std::string& id);

}  // namespace quilt
