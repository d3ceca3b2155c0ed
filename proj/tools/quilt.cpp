// quilt: enumerate prime square dissections, cross-check them by exact
// cover, and report tables and sequences.

#include "quilt/ena.hpp"
#include "quilt/pipeline.hpp"
#include "quilt/sequences.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using namespace quilt;

namespace {

fs::path default_out() {
  const char* env = std::getenv("QUILT_OUT_DIR");
  return env && *env ? fs::path(env) : fs::path("quilt-out");
}

WidthMode parse_mode(const std::string& s) {
  if (s == "fixed") return WidthMode::fixed;
  if (s == "arbitrary") return WidthMode::arbitrary;
  return WidthMode::automatic;
}

std::string sequences_text(const std::vector<Sequence>& seqs, const std::string& format) {
  std::string out;
  for (const auto& s : seqs) {
    if (format == "bfile") {
      out += "# " + s.id + "\n" + emit(s, SequenceFormat::bfile);
    } else if (format == "csv") {
      out += emit(s, SequenceFormat::delimited);
    } else {
      out += s.id + ":";
      for (std::size_t i = 0; i < s.values.size(); ++i) out += (i ? ", " : " ") + std::to_string(s.values[i]);
      out += "\n";
    }
  }
  return out;
}

std::vector<Sequence> exact_cover_sequences(const fs::path& out) {
  std::vector<Sequence> seqs;
  fs::path file = out / "exactcover_counts.csv";
  if (!fs::exists(file)) return seqs;
  std::ifstream is(file);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  for (const char* id : {"A045846", "A221845", "A224239", "A221844", "A226978", "A226979", "A226980", "A226981",
                         "A240120", "A240121", "A240122", "A240123", "A240124", "A240125"}) {
    Sequence s = parse_delimited(text, id);
    if (!s.values.empty()) seqs.push_back(s);
  }
  return seqs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime dissections of a square into integer squares"};
  app.require_subcommand(1);

  fs::path out = default_out();
  int jobs = 1;
  std::string bigint = "auto";
  std::string format = "ascii";

  auto* enumerate = app.add_subcommand("enumerate", "graph-method enumeration (resumable)");
  int order = 0, max_order = 0;
  bool verify_ena = false;
  enumerate->add_option("--order", order, "enumerate every order up to this one");
  enumerate->add_option("--max-order", max_order, "same as --order");
  enumerate->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  enumerate->add_option("--out", out, "output directory (default $QUILT_OUT_DIR)");
  enumerate->add_option("--bigint", bigint, "equation width")->check(CLI::IsMember({"auto", "fixed", "arbitrary"}));
  enumerate->add_option("--format", format, "print the merged records (ascii: as pictures)")->check(CLI::IsMember({"bfile", "csv", "ascii"}));
  enumerate->add_flag("--verify-ena", verify_ena, "check every dissection with both network scans");

  auto* crosscheck = app.add_subcommand("crosscheck", "exact-cover counts and comparison");
  int size = 6, cc_order = 12, full = 7;
  crosscheck->add_option("--size", size, "largest board side")->check(CLI::PositiveNumber);
  crosscheck->add_option("--max-order", cc_order, "largest order in the compared grid")->check(CLI::PositiveNumber);
  crosscheck->add_option("--full-size", full, "largest side for full tiling counts");
  crosscheck->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  crosscheck->add_option("--out", out, "output directory (default $QUILT_OUT_DIR)");

  auto* report = app.add_subcommand("report", "tables and sequences from earlier runs");
  std::string sequence;
  int limit = 0;
  report->add_option("--out", out, "output directory (default $QUILT_OUT_DIR)");
  report->add_option("--format", format, "sequence format")->check(CLI::IsMember({"bfile", "csv", "ascii"}));
  report->add_option("--sequence", sequence, "print one sequence");
  report->add_option("--limit", limit, "number of terms (refused beyond the enumerated bound)");
  report->add_option("--max-order", max_order, "restrict to orders up to this one");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enumerate) {
      EnumerateConfig cfg;
      cfg.max_order = std::max(order, max_order);
      if (cfg.max_order < 4) {
        std::cerr << "enumerate: --order must be at least 4\n";
        return 2;
      }
      cfg.jobs = jobs;
      cfg.out = out;
      cfg.mode = parse_mode(bigint);
      cfg.verify_ena = verify_ena;
      auto result = run_enumerate(cfg, &std::clog);
      for (const auto& s : result.orders)
        std::cout << "N=" << s.order << " considered=" << s.considered << " solved=" << s.solved
                  << " solutions=" << s.solutions << " dissections=" << s.dissections << "\n";
      if (enumerate->count("--format")) {
        for (const auto& d : read_records(out / "dissections.jsonl")) {
          if (format == "ascii")
            std::cout << "n=" << d.side << " order=" << d.order() << "\n" << render_ascii(d) << "\n";
          else
            std::cout << record_line(d) << "\n";
        }
      }
      for (const auto& f : result.ena_failures) std::cerr << "ENA failure: " << f << "\n";
      return result.ena_failures.empty() ? 0 : 1;
    }
    if (*crosscheck) {
      CrosscheckConfig cfg;
      cfg.max_size = size;
      cfg.max_order = cc_order;
      cfg.full_count_size = full;
      cfg.jobs = jobs;
      cfg.out = out;
      auto result = run_crosscheck(cfg, &std::clog);
      if (!result.compared) {
        std::cerr << "crosscheck: no graph-method output in " << out << "; run enumerate first\n";
        return 3;
      }
      for (const auto& d : result.differences) std::cerr << "mismatch: " << d << "\n";
      std::cout << "compared n<=" << size << ", order<=" << result.compared_orders << ": "
                << (result.differences.empty() ? "identical" : "DIFFERENT") << "\n";
      return result.differences.empty() ? 0 : 1;
    }
    if (*report) {
      LoadedRun run = load_run(out);
      if (max_order > 0 && max_order < run.table.max_order()) {
        CountTable cut(max_order);
        cut.add_trivial();
        for (const auto& d : run.dissections)
          if (d.order() <= max_order) cut.add(d);
        run.table = cut;
      }
      std::vector<Sequence> seqs = derived_sequences(run.table);
      for (auto& s : exact_cover_sequences(out)) seqs.push_back(s);
      if (!sequence.empty()) {
        auto it = std::find_if(seqs.begin(), seqs.end(), [&](const Sequence& s) { return s.id == sequence; });
        if (it == seqs.end()) {
          std::cerr << "report: no data for " << sequence << "\n";
          return 2;
        }
        Sequence s = *it;
        if (limit > 0) {
          if (static_cast<std::size_t>(limit) > s.values.size()) {
            std::cerr << "report: " << sequence << " is settled for " << s.values.size() << " terms only\n";
            return 4;
          }
          s.values.resize(limit);
        }
        std::cout << sequences_text({s}, format);
        return 0;
      }
      std::string tables = format_tables(run);
      write_file(out / "report" / "tables.txt", tables);
      write_file(out / "report" / "sequences.csv", sequences_text(seqs, "csv"));
      for (const auto& s : seqs) write_file(out / "report" / ("b" + s.id.substr(1) + ".txt"), emit(s, SequenceFormat::bfile));
      if (format == "ascii")
        std::cout << tables << "\n" << sequences_text(seqs, "ascii");
      else
        std::cout << sequences_text(seqs, format);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "quilt: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
