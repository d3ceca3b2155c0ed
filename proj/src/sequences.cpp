#include "quilt/sequences.hpp"

#include <algorithm>
#include <sstream>

namespace quilt {

CountTable::CountTable(int max_order) : max_order_(max_order) {}

void CountTable::add(const Dissection& d) {
  grid_[{d.side, d.order()}] += 1;
  with_symmetry_[d.order()] += orbit_size(stabilizer(d));
  multisets_[d.order()].insert(size_multiset(d));
}

void CountTable::add_trivial() { add(Dissection{1, {{0, 0, 1}}}); }

std::uint64_t CountTable::at(int n, int order) const {
  auto it = grid_.find({n, order});
  return it == grid_.end() ? 0 : it->second;
}

std::uint64_t CountTable::order_total(int order) const {
  std::uint64_t total = 0;
  for (const auto& [key, v] : grid_)
    if (key.second == order) total += v;
  return total;
}

std::uint64_t CountTable::order_with_symmetry(int order) const {
  auto it = with_symmetry_.find(order);
  return it == with_symmetry_.end() ? 0 : it->second;
}

std::uint64_t CountTable::size_collections(int order) const {
  auto it = multisets_.find(order);
  return it == multisets_.end() ? 0 : it->second.size();
}

int CountTable::largest_side() const {
  int n = 0;
  for (const auto& [key, v] : grid_)
    if (v > 0) n = std::max(n, key.first);
  return n;
}

std::optional<int> f_if_known(const CountTable& t, int n) {
  for (int order = 1; order <= t.max_order(); ++order)
    if (t.at(n, order) > 0) return order;
  return std::nullopt;
}

int f_of_n(const CountTable& t, int n) {
  if (n < 1) throw std::invalid_argument("f(n) needs n >= 1");
  if (auto f = f_if_known(t, n)) return *f;
  throw NotDetermined("f(" + std::to_string(n) + ") exceeds the enumerated order " + std::to_string(t.max_order()));
}

int g_of_N(const CountTable& t, int order) {
  if (order < 1) throw std::invalid_argument("g(N) needs N >= 1");
  if (order > t.max_order())
    throw NotDetermined("g(" + std::to_string(order) + ") needs orders beyond " + std::to_string(t.max_order()));
  int g = 0;
  for (const auto& [key, v] : t.grid())
    if (v > 0 && key.second <= order) g = std::max(g, key.first);
  return g;
}

int least_edge_at_least(const CountTable& t, int order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  // f(n) >= order is settled when no order below it works, which needs
  // every order < `order` enumerated.
  if (order - 1 > t.max_order())
    throw NotDetermined("least edge for order " + std::to_string(order) + " needs orders up to " +
                        std::to_string(order - 1));
  for (int n = 1;; ++n) {
    auto f = f_if_known(t, n);
    if (!f || *f >= order) return n;
  }
}

int smaller_squares_min(const CountTable& t, int n) {
  if (n < 2) throw std::invalid_argument("needs n >= 2");
  std::optional<int> best;
  bool unknown = false;
  for (int d = 2; d <= n; ++d) {
    if (n % d) continue;
    if (auto f = f_if_known(t, d))
      best = best ? std::min(*best, *f) : *f;
    else
      unknown = true;
  }
  // Unknown divisors only have f > max_order, so any known value wins.
  if (!best) {
    (void)unknown;
    throw NotDetermined("no divisor of " + std::to_string(n) + " has a known f");
  }
  return *best;
}

std::vector<Sequence> order_sequences(const CountTable& t, int N_max) {
  if (N_max > t.max_order())
    throw NotDetermined("orders beyond " + std::to_string(t.max_order()) + " are not enumerated");
  Sequence a{"A221841", 1, {}}, b{"A221842", 1, {}}, c{"A232484", 1, {}};
  for (int order = 1; order <= N_max; ++order) {
    a.values.push_back(static_cast<std::int64_t>(t.order_total(order)));
    b.values.push_back(static_cast<std::int64_t>(t.order_with_symmetry(order)));
    c.values.push_back(static_cast<std::int64_t>(t.size_collections(order)));
  }
  return {a, b, c};
}

namespace {

bool is_prime_number(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

std::vector<Sequence> derived_sequences(const CountTable& t) {
  std::vector<Sequence> out = order_sequences(t, t.max_order());
  Sequence g{"A089047", 1, {}}, least{"A089046", 1, {}}, f{"A005670", 1, {}}, smaller{"A018835", 2, {}},
      primes{"A211302", 1, {}};
  for (int order = 1; order <= t.max_order(); ++order) g.values.push_back(g_of_N(t, order));
  for (int order = 1; order <= t.max_order() + 1; ++order) least.values.push_back(least_edge_at_least(t, order));
  for (int n = 1; f_if_known(t, n); ++n) f.values.push_back(f_of_n(t, n));
  // A018835 runs while every term is settled.
  for (int n = 2;; ++n) {
    bool settled = false;
    for (int d = 2; d <= n && !settled; ++d)
      if (n % d == 0 && f_if_known(t, d)) settled = true;
    if (!settled) break;
    smaller.values.push_back(smaller_squares_min(t, n));
  }
  for (int p = 2; f_if_known(t, p) || !is_prime_number(p); ++p)
    if (is_prime_number(p)) primes.values.push_back(f_of_n(t, p));
  for (auto* s : {&g, &least, &f, &smaller, &primes}) out.push_back(*s);
  return out;
}

std::string emit(const Sequence& s, SequenceFormat format) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    long long index = s.offset + static_cast<long long>(i);
    if (format == SequenceFormat::bfile)
      os << index << ' ' << s.values[i] << '\n';
    else
      os << s.id << ',' << index << ',' << s.values[i] << '\n';
  }
  return os.str();
}

Sequence parse_bfile(const std::string& text, const std::string& id) {
  Sequence s{id, 1, {}};
  std::istringstream is(text);
  std::string line;
  bool first = true;
  long long expected = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long index;
    std::int64_t value;
    if (!(ls >> index >> value)) throw std::invalid_argument("bad b-file line: " + line);
    if (first) {
      s.offset = static_cast<int>(index);
      expected = index;
      first = false;
    }
    if (index != expected) throw std::invalid_argument("b-file indices not consecutive");
    s.values.push_back(value);
    ++expected;
  }
  return s;
}

Sequence parse_delimited(const std::string& text, const std::string& id) {
  std::ostringstream b;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) continue;
    if (line.substr(0, c1) != id) continue;
    b << line.substr(c1 + 1, c2 - c1 - 1) << ' ' << line.substr(c2 + 1) << '\n';
  }
  return parse_bfile(b.str(), id);
}

}  // namespace quilt
