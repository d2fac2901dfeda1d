#ifndef AFROMT_VALIDATE_HPP
#define AFROMT_VALIDATE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "afromt/benchmark.hpp"

namespace afromt {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> findings;
  std::string note;

  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  void flag(std::string finding) {
    passed = false;
    findings.push_back(std::move(finding));
  }
};

struct ValidationReport {
  BenchmarkStats stats;
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  const CheckResult* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  /// Pass/fail table followed by findings. At most `max_findings` findings
  /// are listed per check.
  std::string render(std::size_t max_findings = 20) const {
    std::ostringstream os;
    os << "directions=" << stats.n_directions << " languages=" << stats.n_languages
       << " train=" << stats.totals.train << " dev=" << stats.totals.dev << " test=" << stats.totals.test
       << " total=" << stats.total() << "\n";
    os << "check\tresult\tdetail\n";
    for (const auto& c : checks) {
      os << c.name << '\t' << (c.passed ? "PASS" : "FAIL") << '\t';
      if (!c.passed) os << c.findings.size() << " finding(s)";
      else os << c.note;
      os << '\n';
    }
    for (const auto& c : checks) {
      for (std::size_t i = 0; i < c.findings.size() && i < max_findings; ++i)
        os << "  " << c.name << ": " << c.findings[i] << '\n';
      if (c.findings.size() > max_findings)
        os << "  " << c.name << ": ... " << (c.findings.size() - max_findings) << " more\n";
    }
    return os.str();
  }
};

/// Audit a benchmark against the builder invariants. Violations are listed,
/// never repaired.
///
/// `recorded` is the stats.tsv the builder wrote (if any); `fallback_caps`
/// applies to directions without recorded caps; `reference_totals` are
/// published train/dev/test totals to compare against.
inline ValidationReport validate_benchmark(const BenchmarkDataset& bench, const LanguageRegistry& registry,
                                           const std::optional<BenchmarkStats>& recorded = std::nullopt,
                                           const SplitCaps& fallback_caps = {5000, 50, 200},
                                           const std::optional<SplitCaps>& reference_totals = std::nullopt) {
  ValidationReport rep;
  rep.stats = compute_statistics(bench);

  CheckResult langcode{"langcode"}, instruction{"instruction"}, caps{"caps"}, split_dis{"split-disjointness"},
      dir_dis{"direction-disjointness"}, stats{"stats"};

  auto caps_of = [&](const DirectedPairDataset& d) {
    bool known = d.caps.train || d.caps.dev || d.caps.test;
    return known ? d.caps : fallback_caps;
  };

  bool have_provenance = false;
  for (const auto& d : bench.directions) {
    const auto code = d.pair.code();
    const auto* tgt = registry.find(d.pair.tgt);
    if (!tgt) instruction.flag(code + ": target language not in registry");
    const auto expected_instruction = tgt ? render_instruction(*tgt) : std::string();
    std::set<std::string> seen;
    for (auto s : kSplits) {
      const auto cap = caps_of(d)[s];
      if (d.splits[s].size() > cap)
        caps.flag(code + "." + std::string(split_name(s)) + ": " + std::to_string(d.splits[s].size()) +
                  " records exceed cap " + std::to_string(cap));
      std::size_t line = 0;
      for (const auto& e : d.splits[s]) {
        ++line;
        const auto where = code + "." + std::string(split_name(s)) + " line " + std::to_string(line);
        if (e.record.langcode != code) langcode.flag(where + ": langcode " + e.record.langcode);
        if (tgt && e.record.instruction != expected_instruction)
          instruction.flag(where + ": instruction does not name " + tgt->name);
        if (e.provenance.id.empty()) continue;
        have_provenance = true;
        if (!seen.insert(e.provenance.source_name + "\t" + e.provenance.id).second)
          split_dis.flag(where + ": " + e.provenance.id + " already used in this direction");
      }
    }
  }
  if (!have_provenance) {
    split_dis.note = "skipped: no provenance";
    dir_dis.note = "skipped: no provenance";
  }

  // abundant splits must feed the two directions from disjoint examples
  for (const auto& d : bench.directions) {
    if (!(d.pair.src < d.pair.tgt)) continue;
    const auto* rev = bench.find(d.pair.reversed());
    if (!rev) continue;
    for (auto s : kSplits) {
      const auto cap = caps_of(d)[s];
      if (d.supply[s] < 2 * cap && rev->supply[s] < 2 * caps_of(*rev)[s]) continue;
      std::set<std::string> ids;
      for (const auto& e : d.splits[s])
        if (!e.provenance.id.empty()) ids.insert(e.provenance.source_name + "\t" + e.provenance.id);
      for (const auto& e : rev->splits[s])
        if (!e.provenance.id.empty() && ids.count(e.provenance.source_name + "\t" + e.provenance.id))
          dir_dis.flag(d.pair.code() + "/" + rev->pair.code() + "." + std::string(split_name(s)) + ": " +
                       e.provenance.id + " used in both directions");
    }
  }

  if (recorded) {
    std::map<std::string, const DirectionCounts*> rows;
    for (const auto& r : recorded->directions) rows[r.direction] = &r;
    for (const auto& d : rep.stats.directions) {
      auto it = rows.find(d.direction);
      if (it == rows.end()) {
        stats.flag(d.direction + ": not listed in stats.tsv");
        continue;
      }
      for (auto s : kSplits)
        if (it->second->counts[s] != d.counts[s])
          stats.flag(d.direction + "." + std::string(split_name(s)) + ": stats.tsv says " +
                     std::to_string(it->second->counts[s]) + ", files hold " + std::to_string(d.counts[s]));
      rows.erase(it);
    }
    for (const auto& [dir, row] : rows) stats.flag(dir + ": listed in stats.tsv but has no files");
  } else {
    stats.note = "skipped: no stats.tsv";
  }

  rep.checks = {langcode, instruction, caps, split_dis, dir_dis, stats};

  if (reference_totals) {
    CheckResult ref{"reference-totals"};
    std::ostringstream msg;
    msg << "computed " << rep.stats.totals.train << "/" << rep.stats.totals.dev << "/" << rep.stats.totals.test
        << " (total " << rep.stats.total() << "), expected " << reference_totals->train << "/"
        << reference_totals->dev << "/" << reference_totals->test << " (total "
        << (reference_totals->train + reference_totals->dev + reference_totals->test) << ")";
    if (rep.stats.totals == *reference_totals) ref.note = "match: " + msg.str();
    else ref.flag("mismatch: " + msg.str());
    rep.checks.push_back(ref);
  }
  return rep;
}

inline ValidationReport validate_benchmark_dir(const std::filesystem::path& dir, const LanguageRegistry& registry,
                                               const SplitCaps& fallback_caps = {5000, 50, 200},
                                               const std::optional<SplitCaps>& reference_totals = std::nullopt) {
  auto bench = load_benchmark(dir);
  std::optional<BenchmarkStats> recorded;
  if (std::filesystem::exists(dir / "stats.tsv")) recorded = stats_from_tsv(text::read_file(dir / "stats.tsv"));
  return validate_benchmark(bench, registry, recorded, fallback_caps, reference_totals);
}

}  // namespace afromt

#endif  // AFROMT_VALIDATE_HPP
