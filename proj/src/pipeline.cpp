#include "quilt/pipeline.hpp"

#include "quilt/ena.hpp"
#include "quilt/exactcover.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace quilt {

namespace fs = std::filesystem;

void write_file(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  fs::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << text;
    if (!os.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, file);
}

namespace {

std::string read_file(const fs::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + file.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

bool record_less(const Dissection& a, const Dissection& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  if (a.side != b.side) return a.side < b.side;
  return encode(a) < encode(b);
}

fs::path part_dir(const fs::path& out) { return out / "parts"; }

std::string part_stem(int order, int partition) {
  std::ostringstream os;
  os << "order" << std::setw(2) << std::setfill('0') << order << "-part" << std::setw(3) << partition;
  return os.str();
}

std::string stats_text(const OrderStats& s) {
  std::ostringstream os;
  os << "considered," << s.considered << "\nsolved," << s.solved << "\nsolutions," << s.solutions << "\nena_checked,"
     << s.ena_checked << "\n";
  return os.str();
}

OrderStats parse_stats(int order, const std::string& text) {
  OrderStats s;
  s.order = order;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    std::string key = line.substr(0, comma);
    std::uint64_t v = std::stoull(line.substr(comma + 1));
    if (key == "considered") s.considered = v;
    if (key == "solved") s.solved = v;
    if (key == "solutions") s.solutions = v;
    if (key == "ena_checked") s.ena_checked = v;
  }
  return s;
}

int read_partitions(const fs::path& out) {
  fs::path cfg = part_dir(out) / "partitions";
  if (!fs::exists(cfg)) return 0;
  return std::stoi(read_file(cfg));
}

bool part_done(const fs::path& out, int order, int partition) {
  return fs::exists(part_dir(out) / (part_stem(order, partition) + ".stats"));
}

}  // namespace

PartOutput run_part(int order, int partition, int partitions, WidthMode mode, bool verify_ena) {
  PartOutput out;
  out.stats.order = order;
  std::set<CanonicalKey> seen;
  GeneratorOptions opt;
  opt.partition = partition;
  opt.partitions = partitions;
  generate(
      order,
      [&](const PlaneTriangulation& t) {
        ++out.stats.considered;
        if (structural_filter(t) != FilterVerdict::accept) return true;
        LocalEquationHook hook(mode);
        std::uint64_t found = 0;
        enumerate_structures(t, cardinals_for(t, 0), &hook, [&](const TransversalStructure& s) {
          Realization r = realize(s, mode);
          if (!r) return;
          ++found;
          Dissection canon = canonical_form(*r.dissection);
          if (verify_ena) {
            ++out.stats.ena_checked;
            if (auto v = verify_both_scans(canon); !v) out.ena_failures.push_back(record_line(canon) + ": " + v.detail);
          }
          if (seen.insert(encode(canon)).second) out.dissections.push_back(std::move(canon));
        });
        if (found) {
          ++out.stats.solved;
          out.stats.solutions += found;
        }
        return true;
      },
      opt);
  std::sort(out.dissections.begin(), out.dissections.end(), record_less);
  return out;
}

std::string record_line(const Dissection& d) {
  std::ostringstream os;
  os << "{\"n\": " << d.side << ", \"order\": " << d.order() << ", \"squares\": [";
  for (std::size_t i = 0; i < d.squares.size(); ++i) {
    const auto& s = d.squares[i];
    os << (i ? ", " : "") << '[' << s.x << ", " << s.y << ", " << s.size << ']';
  }
  os << "]}";
  return os.str();
}

Dissection parse_record(const std::string& line) {
  auto j = nlohmann::json::parse(line);
  Dissection d;
  d.side = j.at("n").get<int>();
  for (const auto& s : j.at("squares")) d.squares.push_back({s.at(0).get<int>(), s.at(1).get<int>(), s.at(2).get<int>()});
  if (j.at("order").get<int>() != d.order()) throw std::invalid_argument("record order does not match its squares");
  d.sort();
  return d;
}

std::vector<Dissection> read_records(const fs::path& file) {
  std::vector<Dissection> out;
  std::ifstream is(file);
  if (!is) throw std::runtime_error("cannot read " + file.string());
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) out.push_back(parse_record(line));
  return out;
}

int enumerated_max_order(const fs::path& out) {
  const int partitions = read_partitions(out);
  if (partitions <= 0) return 0;
  int m = 3;
  for (int order = 4;; ++order) {
    for (int p = 0; p < partitions; ++p)
      if (!part_done(out, order, p)) return m;
    m = order;
  }
}

namespace {

void merge(const fs::path& out, EnumerateResult* result) {
  const int partitions = read_partitions(out);
  const int max_order = enumerated_max_order(out);
  std::vector<Dissection> all;
  std::ostringstream manifest;
  manifest << "name,index,value\n";
  std::vector<OrderStats> orders;
  for (int order = 4; order <= max_order; ++order) {
    OrderStats total;
    total.order = order;
    std::set<CanonicalKey> seen;
    for (int p = 0; p < partitions; ++p) {
      fs::path stem = part_dir(out) / part_stem(order, p);
      OrderStats s = parse_stats(order, read_file(stem.string() + ".stats"));
      total.considered += s.considered;
      total.solved += s.solved;
      total.solutions += s.solutions;
      total.ena_checked += s.ena_checked;
      for (auto& d : read_records(stem.string() + ".jsonl"))
        if (seen.insert(encode(d)).second) all.push_back(std::move(d));
    }
    total.dissections = seen.size();
    orders.push_back(total);
  }
  for (const auto& s : orders) manifest << "graphs_considered," << s.order << ',' << s.considered << '\n';
  for (const auto& s : orders) manifest << "graphs_solved," << s.order << ',' << s.solved << '\n';
  for (const auto& s : orders) manifest << "solutions," << s.order << ',' << s.solutions << '\n';
  for (const auto& s : orders) manifest << "dissections," << s.order << ',' << s.dissections << '\n';
  for (const auto& s : orders)
    if (s.ena_checked) manifest << "ena_checked," << s.order << ',' << s.ena_checked << '\n';
  manifest << "max_order,0," << max_order << '\n';
  std::sort(all.begin(), all.end(), record_less);
  std::string records;
  for (const auto& d : all) records += record_line(d) + "\n";
  CountTable table(max_order);
  for (const auto& d : all) table.add(d);
  std::ostringstream grid;
  grid << "n,order,count\n";
  for (const auto& [key, v] : table.grid()) grid << key.first << ',' << key.second << ',' << v << '\n';
  write_file(out / "dissections.jsonl", records);
  write_file(out / "grid.csv", grid.str());
  write_file(out / "manifest.csv", manifest.str());
  if (result) result->orders = orders;
}

}  // namespace

EnumerateResult run_enumerate(const EnumerateConfig& cfg, std::ostream* log) {
  if (cfg.min_order < 4 || cfg.max_order < cfg.min_order) throw std::invalid_argument("orders must satisfy 4 <= min <= max");
  if (cfg.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  fs::create_directories(part_dir(cfg.out));
  const int existing = read_partitions(cfg.out);
  if (existing && existing != cfg.partitions)
    throw std::runtime_error("output directory was partitioned " + std::to_string(existing) + " ways");
  if (!existing) write_file(part_dir(cfg.out) / "partitions", std::to_string(cfg.partitions) + "\n");
  write_file(cfg.out / "INCOMPLETE", "enumeration in progress\n");

  EnumerateResult result;
  std::vector<std::pair<int, int>> tasks;
  for (int order = cfg.min_order; order <= cfg.max_order; ++order)
    for (int p = 0; p < cfg.partitions; ++p) {
      if (part_done(cfg.out, order, p))
        ++result.parts_resumed;
      else
        tasks.emplace_back(order, p);
    }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      std::size_t k = next++;
      if (k >= tasks.size()) return;
      auto [order, p] = tasks[k];
      try {
        PartOutput part = run_part(order, p, cfg.partitions, cfg.mode, cfg.verify_ena);
        fs::path stem = part_dir(cfg.out) / part_stem(order, p);
        std::string records;
        for (const auto& d : part.dissections) records += record_line(d) + "\n";
        write_file(stem.string() + ".jsonl", records);
        write_file(stem.string() + ".stats", stats_text(part.stats));
        std::lock_guard lock(mu);
        ++result.parts_run;
        for (auto& f : part.ena_failures) result.ena_failures.push_back(std::move(f));
        if (log) *log << "order " << order << " part " << p << ": " << part.stats.considered << " graphs\n";
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < cfg.jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  merge(cfg.out, &result);
  if (result.ena_failures.empty())
    fs::remove(cfg.out / "INCOMPLETE");
  else
    write_file(cfg.out / "INCOMPLETE", "ENA verification failed\n");
  std::sort(result.ena_failures.begin(), result.ena_failures.end());
  return result;
}

LoadedRun load_run(const fs::path& out) {
  if (!fs::exists(out / "manifest.csv") || !fs::exists(out / "dissections.jsonl"))
    throw std::runtime_error("no enumeration output in " + out.string());
  LoadedRun run;
  std::map<int, OrderStats> by_order;
  int max_order = 0;
  std::istringstream is(read_file(out / "manifest.csv"));
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string name, index, value;
    std::getline(ls, name, ',');
    std::getline(ls, index, ',');
    std::getline(ls, value);
    if (name.empty()) continue;
    int k = std::stoi(index);
    std::uint64_t v = std::stoull(value);
    if (name == "max_order") {
      max_order = static_cast<int>(v);
      continue;
    }
    OrderStats& s = by_order[k];
    s.order = k;
    if (name == "graphs_considered") s.considered = v;
    if (name == "graphs_solved") s.solved = v;
    if (name == "solutions") s.solutions = v;
    if (name == "dissections") s.dissections = v;
    if (name == "ena_checked") s.ena_checked = v;
  }
  if (max_order < 4) throw std::runtime_error("no complete order in " + out.string());
  for (const auto& [k, s] : by_order) run.orders.push_back(s);
  run.dissections = read_records(out / "dissections.jsonl");
  run.table = CountTable(max_order);
  run.table.add_trivial();
  for (const auto& d : run.dissections)
    if (d.order() <= max_order) run.table.add(d);
  return run;
}

CrosscheckResult run_crosscheck(const CrosscheckConfig& cfg, std::ostream* log) {
  if (cfg.max_size < 1 || cfg.max_order < 1) throw std::invalid_argument("bounds must be positive");
  CrosscheckResult result;
  result.exact_cover = crosscheck_table(cfg.max_size, cfg.max_order, cfg.jobs);
  std::ostringstream grid;
  grid << "n,order,count\n";
  for (const auto& [key, v] : result.exact_cover) grid << key.first << ',' << key.second << ',' << v << '\n';
  std::ostringstream counts;
  counts << "name,index,value\n";
  const int full = std::min(cfg.full_count_size, cfg.max_size);
  std::vector<std::pair<std::string, std::vector<std::uint64_t>>> rows = {
      {"A045846", {}}, {"A221845", {}}, {"A224239", {}}, {"A221844", {}}, {"A226978", {}}, {"A226979", {}},
      {"A226980", {}}, {"A226981", {}}, {"A240120", {}}, {"A240121", {}}, {"A240122", {}}, {"A240123", {}},
      {"A240124", {}}, {"A240125", {}}};
  for (int n = 1; n <= full; ++n) {
    StabilizerCensus all = stabilizer_census(n, false, cfg.jobs);
    StabilizerCensus prime = stabilizer_census(n, true, cfg.jobs);
    auto cls = [&](StabilizerClass c) { return all.classes.at(c); };
    std::vector<std::uint64_t> v = {all.tilings(),
                                    prime.tilings(),
                                    all.orbits(),
                                    prime.orbits(),
                                    all.orbits_of_size(1),
                                    all.orbits_of_size(2),
                                    all.orbits_of_size(4),
                                    all.orbits_of_size(8),
                                    cls(StabilizerClass::both_diagonals),
                                    cls(StabilizerClass::both_axes),
                                    cls(StabilizerClass::quarter_turn),
                                    cls(StabilizerClass::one_diagonal),
                                    cls(StabilizerClass::half_turn),
                                    cls(StabilizerClass::one_axis)};
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k].second.push_back(v[k]);
    if (log) *log << "n=" << n << ": " << all.tilings() << " tilings\n";
  }
  for (const auto& [name, vals] : rows)
    for (std::size_t i = 0; i < vals.size(); ++i) counts << name << ',' << i + 1 << ',' << vals[i] << '\n';
  write_file(cfg.out / "exactcover_grid.csv", grid.str());
  write_file(cfg.out / "exactcover_counts.csv", counts.str());

  std::ostringstream diff;
  int graph_max = enumerated_max_order(cfg.out);
  if (graph_max >= 4 && fs::exists(cfg.out / "manifest.csv")) {
    LoadedRun run = load_run(cfg.out);
    result.compared = true;
    result.compared_orders = std::min(cfg.max_order, run.table.max_order());
    for (int n = 1; n <= cfg.max_size; ++n)
      for (int order = 1; order <= result.compared_orders; ++order) {
        auto it = result.exact_cover.find({n, order});
        std::uint64_t a = it == result.exact_cover.end() ? 0 : it->second;
        std::uint64_t b = run.table.at(n, order);
        if (a != b) {
          std::ostringstream line;
          line << "n=" << n << " order=" << order << " exact_cover=" << a << " graph=" << b;
          result.differences.push_back(line.str());
        }
      }
    diff << "# window n<=" << cfg.max_size << " order<=" << result.compared_orders << "\n";
    for (const auto& d : result.differences) diff << d << '\n';
  } else {
    diff << "# no graph-method output to compare\n";
  }
  write_file(cfg.out / "crosscheck_diff.txt", diff.str());
  return result;
}

namespace {

std::string ranges(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[j] + 1) ++j;
    if (i) os << ',';
    os << v[i];
    if (j > i) os << (j == i + 1 ? "," : "--") << v[j];
    i = j + 1;
  }
  return os.str();
}

}  // namespace

std::string format_tables(const LoadedRun& run) {
  const CountTable& t = run.table;
  const int M = t.max_order();
  const int nmax = t.largest_side();
  std::ostringstream os;
  os << "Table 1: prime dissections up to symmetry by size n (rows) and order N (columns), N <= " << M << "\n";
  os << std::setw(4) << "n";
  for (int N = 1; N <= M; ++N) os << std::setw(6) << N;
  os << "\n";
  for (int n = 1; n <= nmax; ++n) {
    os << std::setw(4) << n;
    for (int N = 1; N <= M; ++N) {
      auto v = t.at(n, N);
      if (v)
        os << std::setw(6) << v;
      else
        os << std::setw(6) << "";
    }
    os << "\n";
  }
  os << "\nTable 2: graphs and solutions by order\n";
  os << std::setw(4) << "N" << std::setw(14) << "considered" << std::setw(10) << "solved" << std::setw(12)
     << "solutions" << std::setw(13) << "dissections" << "\n";
  for (const auto& s : run.orders) {
    if (s.order > M) continue;
    os << std::setw(4) << s.order << std::setw(14) << s.considered << std::setw(10) << s.solved << std::setw(12)
       << s.solutions << std::setw(13) << s.dissections << "\n";
  }
  os << "\nTable 3: dissections of order N and size g(N)-i\n";
  os << std::setw(4) << "N" << std::setw(6) << "g(N)";
  for (int i = 9; i >= 0; --i) os << std::setw(6) << ("i=" + std::to_string(i));
  os << "\n";
  for (int N = 1; N <= M; ++N) {
    int g = g_of_N(t, N);
    os << std::setw(4) << N << std::setw(6) << g;
    for (int i = 9; i >= 0; --i) {
      int n = g - i;
      if (n >= 1 && t.at(n, N))
        os << std::setw(6) << t.at(n, N);
      else
        os << std::setw(6) << "";
    }
    os << "\n";
  }
  os << "\nTable 4: smallest order f(n); only orders <= " << M << " are settled\n";
  std::map<int, std::vector<int>> by_f;
  for (int n = 1; n <= nmax; ++n)
    if (auto f = f_if_known(t, n)) by_f[*f].push_back(n);
  for (const auto& [f, ns] : by_f) os << "f(n)=" << std::setw(3) << f << "  n=" << ranges(ns) << "\n";
  os << "f(n) > " << M << " for every other n\n";
  return os.str();
}

}  // namespace quilt
