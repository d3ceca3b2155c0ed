#include "quilt/exactcover.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>

namespace quilt {

DancingLinks::DancingLinks(int columns, const std::vector<std::vector<int>>& rows)
    : columns_(columns), size_(columns + 1, 0), row_weight_(rows.size(), 1) {
  // Node 0 is the root, 1..columns are headers.
  nodes_.resize(columns + 1);
  for (int c = 0; c <= columns; ++c) {
    nodes_[c] = {c == 0 ? columns : c - 1, c == columns ? 0 : c + 1, c, c, c, -1};
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    int first = -1;
    max_row_length_ = std::max<int>(max_row_length_, rows[r].size());
    for (int col : rows[r]) {
      if (col < 0 || col >= columns) throw std::out_of_range("DancingLinks: column out of range");
      int h = col + 1;
      int id = static_cast<int>(nodes_.size());
      nodes_.push_back({id, id, nodes_[h].up, h, h, static_cast<int>(r)});
      nodes_[nodes_[h].up].down = id;
      nodes_[h].up = id;
      ++size_[h];
      if (first < 0) {
        first = id;
      } else {
        nodes_[id].left = nodes_[first].left;
        nodes_[id].right = first;
        nodes_[nodes_[first].left].right = id;
        nodes_[first].left = id;
      }
    }
  }
}

void DancingLinks::cover(int c) {
  nodes_[nodes_[c].right].left = nodes_[c].left;
  nodes_[nodes_[c].left].right = nodes_[c].right;
  --remaining_columns_;
  for (int i = nodes_[c].down; i != c; i = nodes_[i].down)
    for (int j = nodes_[i].right; j != i; j = nodes_[j].right) {
      nodes_[nodes_[j].down].up = nodes_[j].up;
      nodes_[nodes_[j].up].down = nodes_[j].down;
      --size_[nodes_[j].column];
    }
}

void DancingLinks::uncover(int c) {
  for (int i = nodes_[c].up; i != c; i = nodes_[i].up)
    for (int j = nodes_[i].left; j != i; j = nodes_[j].left) {
      ++size_[nodes_[j].column];
      nodes_[nodes_[j].down].up = j;
      nodes_[nodes_[j].up].down = j;
    }
  ++remaining_columns_;
  nodes_[nodes_[c].right].left = c;
  nodes_[nodes_[c].left].right = c;
}

std::uint64_t DancingLinks::solve(const std::function<void(std::span<const int>)>& visit,
                                  const SearchOptions& options) {
  options_ = options;
  visit_ = &visit;
  count_ = 0;
  weight_ = 0;
  chosen_.clear();
  remaining_columns_ = columns_;
  search(0);
  return count_;
}

void DancingLinks::search(int depth) {
  if (nodes_[0].right == 0) {
    ++count_;
    if (*visit_) (*visit_)(std::span<const int>(chosen_));
    return;
  }
  const int cap = options_.max_rows;
  if (cap > 0) {
    // Every further row covers at most max_row_length_ columns.
    long long room = static_cast<long long>(cap - weight_) * max_row_length_;
    if (weight_ >= cap || room < remaining_columns_) return;
  }
  int c = nodes_[0].right;
  if (options_.rule == ColumnRule::minimum_remaining) {
    for (int j = nodes_[c].right; j != 0; j = nodes_[j].right)
      if (size_[j] < size_[c]) c = j;
  }
  if (size_[c] == 0) return;
  cover(c);
  int branch = 0;
  for (int r = nodes_[c].down; r != c; r = nodes_[r].down, ++branch) {
    if (depth == 0 && options_.partitions > 1 && branch % options_.partitions != options_.partition) continue;
    const int row = nodes_[r].row;
    if (cap > 0 && weight_ + row_weight_[row] > cap) continue;
    chosen_.push_back(row);
    weight_ += row_weight_[row];
    for (int j = nodes_[r].right; j != r; j = nodes_[j].right) cover(nodes_[j].column);
    search(depth + 1);
    for (int j = nodes_[r].left; j != r; j = nodes_[j].left) uncover(nodes_[j].column);
    weight_ -= row_weight_[row];
    chosen_.pop_back();
  }
  uncover(c);
}

ExactCoverInstance::ExactCoverInstance(int n_) : n(n_) {
  if (n < 1) throw std::invalid_argument("ExactCoverInstance: n must be positive");
  for (int k = n; k >= 1; --k)
    for (int y = 0; y + k <= n; ++y)
      for (int x = 0; x + k <= n; ++x) {
        placements.push_back({x, y, k});
        std::vector<int> cells;
        for (int dy = 0; dy < k; ++dy)
          for (int dx = 0; dx < k; ++dx) cells.push_back((y + dy) * n + x + dx);
        rows.push_back(std::move(cells));
      }
}

namespace {

bool overlaps(const Square& a, const Square& b) {
  return a.x < b.x + b.size && b.x < a.x + a.size && a.y < b.y + b.size && b.y < a.y + a.size;
}

Square image(Symmetry g, int n, const Square& s) {
  auto [x, y] = apply_block(g, n, s.x, s.y, s.size);
  return {x, y, s.size};
}

}  // namespace

SymmetricInstance::SymmetricInstance(int n_, Symmetry g_) : n(n_), g(g_) {
  if (n < 1) throw std::invalid_argument("SymmetricInstance: n must be positive");
  // Cell orbits under <g>.
  std::vector<int> orbit_of(n * n, -1);
  for (int cell = 0; cell < n * n; ++cell) {
    if (orbit_of[cell] >= 0) continue;
    int x = cell % n, y = cell / n;
    while (orbit_of[y * n + x] < 0) {
      orbit_of[y * n + x] = columns;
      auto [nx, ny] = apply_cell(g, n, x, y);
      x = nx;
      y = ny;
    }
    ++columns;
  }
  std::set<std::vector<Square>> seen;
  ExactCoverInstance base(n);
  for (const Square& p : base.placements) {
    std::vector<Square> members{p};
    Square q = image(g, n, p);
    while (!(q == p)) {
      members.push_back(q);
      q = image(g, n, q);
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    bool disjoint = true;
    for (std::size_t i = 0; i < members.size() && disjoint; ++i)
      for (std::size_t j = i + 1; j < members.size() && disjoint; ++j)
        if (overlaps(members[i], members[j])) disjoint = false;
    if (!disjoint || !seen.insert(members).second) continue;
    std::set<int> cols;
    for (const Square& m : members)
      for (int dy = 0; dy < m.size; ++dy)
        for (int dx = 0; dx < m.size; ++dx) cols.insert(orbit_of[(m.y + dy) * n + m.x + dx]);
    orbits.push_back(members);
    rows.emplace_back(cols.begin(), cols.end());
  }
}

std::uint64_t solve_count(const ExactCoverInstance& instance, const TilingVisitor& visitor,
                          const SearchOptions& options) {
  DancingLinks dlx(instance.n * instance.n, instance.rows);
  std::function<void(std::span<const int>)> on_cover;
  if (visitor) {
    on_cover = [&](std::span<const int> chosen) {
      Dissection d;
      d.side = instance.n;
      for (int r : chosen) d.squares.push_back(instance.placements[r]);
      d.sort();
      visitor(d);
    };
  }
  return dlx.solve(on_cover, options);
}

std::uint64_t solve_count(const SymmetricInstance& instance, const TilingVisitor& visitor,
                          const SearchOptions& options) {
  DancingLinks dlx(instance.columns, instance.rows);
  std::vector<int> weights;
  for (const auto& o : instance.orbits) weights.push_back(static_cast<int>(o.size()));
  dlx.set_row_weights(std::move(weights));
  std::function<void(std::span<const int>)> on_cover;
  if (visitor) {
    on_cover = [&](std::span<const int> chosen) {
      Dissection d;
      d.side = instance.n;
      for (int r : chosen)
        for (const Square& s : instance.orbits[r]) d.squares.push_back(s);
      d.sort();
      visitor(d);
    };
  }
  return dlx.solve(on_cover, options);
}

namespace {

/// Runs `work(partition, partitions)` on `jobs` threads, one accumulator each.
template <class Acc, class Work>
std::vector<Acc> in_parallel(int jobs, Work work) {
  jobs = std::max(1, jobs);
  std::vector<Acc> acc(jobs);
  if (jobs == 1) {
    work(acc[0], 0, 1);
    return acc;
  }
  std::vector<std::thread> pool;
  for (int p = 0; p < jobs; ++p) pool.emplace_back([&, p] { work(acc[p], p, jobs); });
  for (auto& t : pool) t.join();
  return acc;
}

bool is_canonical(const Dissection& d) {
  CanonicalKey own = encode(d);
  for (Symmetry g : all_symmetries)
    if (g != Symmetry::identity && encode(transformed(d, g)) < own) return false;
  return true;
}

}  // namespace

std::uint64_t count_all(int n, int jobs) {
  ExactCoverInstance inst(n);
  auto parts = in_parallel<std::uint64_t>(jobs, [&](std::uint64_t& acc, int p, int ps) {
    SearchOptions o;
    o.partition = p;
    o.partitions = ps;
    acc = solve_count(inst, {}, o);
  });
  std::uint64_t total = 0;
  for (auto v : parts) total += v;
  return total;
}

std::uint64_t count_prime(int n, int jobs) {
  ExactCoverInstance inst(n);
  auto parts = in_parallel<std::uint64_t>(jobs, [&](std::uint64_t& acc, int p, int ps) {
    SearchOptions o;
    o.partition = p;
    o.partitions = ps;
    solve_count(inst, [&](const Dissection& d) { acc += is_prime(d) ? 1 : 0; }, o);
  });
  std::uint64_t total = 0;
  for (auto v : parts) total += v;
  return total;
}

std::uint64_t count_fixed(int n, Symmetry g) { return solve_count(SymmetricInstance(n, g)); }

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

std::int64_t count_fixed_prime(int n, Symmetry g) {
  std::int64_t total = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0 && moebius(d) != 0) total += moebius(d) * static_cast<std::int64_t>(count_fixed(n / d, g));
  return total;
}

std::uint64_t count_up_to_symmetry_burnside(int n, bool prime_only) {
  std::int64_t sum = 0;
  for (Symmetry g : all_symmetries)
    sum += prime_only ? count_fixed_prime(n, g) : static_cast<std::int64_t>(count_fixed(n, g));
  if (sum % 8 != 0) throw std::logic_error("Burnside sum not divisible by 8");
  return static_cast<std::uint64_t>(sum / 8);
}

std::uint64_t count_up_to_symmetry_dedup(int n, bool prime_only, int jobs) {
  ExactCoverInstance inst(n);
  auto parts = in_parallel<std::uint64_t>(jobs, [&](std::uint64_t& acc, int p, int ps) {
    SearchOptions o;
    o.partition = p;
    o.partitions = ps;
    solve_count(
        inst,
        [&](const Dissection& d) {
          if ((!prime_only || is_prime(d)) && is_canonical(d)) ++acc;
        },
        o);
  });
  std::uint64_t total = 0;
  for (auto v : parts) total += v;
  return total;
}

std::uint64_t count_up_to_symmetry(int n, bool prime_only, int dedup_limit) {
  std::uint64_t b = count_up_to_symmetry_burnside(n, prime_only);
  if (n <= dedup_limit && count_up_to_symmetry_dedup(n, prime_only) != b)
    throw std::logic_error("orbit count: Burnside and canonical dedup disagree");
  return b;
}

std::uint64_t StabilizerCensus::orbits_of_size(int size) const {
  std::uint64_t total = 0;
  for (const auto& [c, v] : classes)
    if (orbit_size(c) == size) total += v;
  return total;
}

std::uint64_t StabilizerCensus::tilings() const {
  std::uint64_t total = 0;
  for (const auto& [c, v] : classes) total += v * orbit_size(c);
  return total;
}

std::uint64_t StabilizerCensus::orbits() const {
  std::uint64_t total = 0;
  for (const auto& [c, v] : classes) total += v;
  return total;
}

StabilizerCensus stabilizer_census(int n, bool prime_only, int jobs) {
  ExactCoverInstance inst(n);
  using Counts = std::array<std::uint64_t, 8>;
  auto parts = in_parallel<Counts>(jobs, [&](Counts& acc, int p, int ps) {
    acc.fill(0);
    SearchOptions o;
    o.partition = p;
    o.partitions = ps;
    solve_count(
        inst,
        [&](const Dissection& d) {
          if ((prime_only && !is_prime(d)) || !is_canonical(d)) return;
          ++acc[static_cast<int>(stabilizer(d))];
        },
        o);
  });
  StabilizerCensus census;
  for (StabilizerClass c : all_stabilizer_classes) {
    census.classes[c] = 0;
    for (const auto& part : parts) census.classes[c] += part[static_cast<int>(c)];
  }
  return census;
}

std::map<int, std::uint64_t> prime_orbits_by_order(int n, int max_order, int jobs) {
  ExactCoverInstance inst(n);
  using Counts = std::map<int, std::uint64_t>;
  auto parts = in_parallel<Counts>(jobs, [&](Counts& acc, int p, int ps) {
    SearchOptions o;
    o.max_rows = max_order;
    o.partition = p;
    o.partitions = ps;
    solve_count(
        inst,
        [&](const Dissection& d) {
          if (is_prime(d) && is_canonical(d)) ++acc[d.order()];
        },
        o);
  });
  Counts out;
  for (const auto& part : parts)
    for (const auto& [k, v] : part) out[k] += v;
  return out;
}

std::map<std::pair<int, int>, std::uint64_t> crosscheck_table(int n_max, int N_max, int jobs) {
  std::map<std::pair<int, int>, std::uint64_t> table;
  for (int n = 1; n <= n_max; ++n)
    for (const auto& [order, v] : prime_orbits_by_order(n, N_max, jobs)) table[{n, order}] = v;
  return table;
}

}  // namespace quilt
