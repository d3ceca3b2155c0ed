#pragma once

#include "quilt/dissection.hpp"
#include "quilt/linsys.hpp"
#include "quilt/sequences.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace quilt {

/// One row of the per-order manifest.
struct OrderStats {
  int order = 0;
  std::uint64_t considered = 0;  // candidate graphs from the generator
  std::uint64_t solved = 0;      // graphs with at least one realized structure
  std::uint64_t solutions = 0;   // realized structures
  std::uint64_t dissections = 0; // distinct dissections up to symmetry
  std::uint64_t ena_checked = 0;
  friend bool operator==(const OrderStats&, const OrderStats&) = default;
};

struct PartOutput {
  OrderStats stats;
  std::vector<Dissection> dissections;  // canonical forms, sorted, unique
  std::vector<std::string> ena_failures;
};

/// Graph-method search over one slice of the generator stream.
PartOutput run_part(int order, int partition, int partitions, WidthMode mode, bool verify_ena);

/// `{"n": 5, "order": 8, "squares": [[0, 0, 3], ...]}`
std::string record_line(const Dissection& d);
Dissection parse_record(const std::string& line);
std::vector<Dissection> read_records(const std::filesystem::path& file);

struct EnumerateConfig {
  int min_order = 4;
  int max_order = 4;
  int jobs = 1;
  int partitions = 16;  // fixed, so output never depends on `jobs`
  std::filesystem::path out;
  WidthMode mode = WidthMode::automatic;
  bool verify_ena = false;
};

struct EnumerateResult {
  std::vector<OrderStats> orders;
  int parts_run = 0;
  int parts_resumed = 0;
  std::vector<std::string> ena_failures;
};

/// Runs (or resumes) the slices of every order in range, then merges all
/// finished orders into dissections.jsonl, manifest.csv and grid.csv.
EnumerateResult run_enumerate(const EnumerateConfig& cfg, std::ostream* log = nullptr);

/// Orders 4..M whose slices are all present; M is the completeness bound.
int enumerated_max_order(const std::filesystem::path& out);

/// Merged view of an output directory. Throws if nothing was enumerated.
struct LoadedRun {
  std::vector<OrderStats> orders;
  std::vector<Dissection> dissections;
  CountTable table;
};
LoadedRun load_run(const std::filesystem::path& out);

struct CrosscheckConfig {
  int max_size = 6;
  int max_order = 12;
  int full_count_size = 7;  // full tiling counts for n <= min(this, max_size)
  int jobs = 1;
  std::filesystem::path out;
};

struct CrosscheckResult {
  std::map<std::pair<int, int>, std::uint64_t> exact_cover;
  std::vector<std::string> differences;
  int compared_orders = 0;
  bool compared = false;
};

/// Exact-cover counts written to exactcover_grid.csv / exactcover_counts.csv
/// and diffed against the graph method over the shared window.
CrosscheckResult run_crosscheck(const CrosscheckConfig& cfg, std::ostream* log = nullptr);

/// Text for Tables 1-4 within the completeness bound.
std::string format_tables(const LoadedRun& run);

/// Atomic write (temporary file, then rename).
void write_file(const std::filesystem::path& file, const std::string& text);

}  // namespace quilt
