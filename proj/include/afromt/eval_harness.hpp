#ifndef AFROMT_EVAL_HARNESS_HPP
#define AFROMT_EVAL_HARNESS_HPP

#include <array>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "afromt/benchmark.hpp"
#include "afromt/lang_registry.hpp"
#include "afromt/metrics.hpp"
#include "afromt/subword.hpp"

namespace afromt {

/// A system's outputs: one hypothesis line per benchmark record, keyed by
/// pair code.
struct SystemRun {
  std::string system_name;
  std::map<std::string, std::vector<std::string>> hypotheses;
};

/// Directory of "{src}-{tgt}.hyp" files plus an optional run.tsv holding
/// "key<TAB>value" metadata (system_name).
inline SystemRun load_run(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) fail(Errc::IoError, dir.string() + " is not a directory");
  SystemRun run;
  run.system_name = dir.filename().string();
  if (std::filesystem::exists(dir / "run.tsv")) {
    for (const auto& line : text::read_lines(dir / "run.tsv")) {
      auto f = text::split(line, '\t');
      if (f.size() == 2 && f[0] == "system_name") run.system_name = f[1];
    }
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".hyp") continue;
    auto code = entry.path().stem().string();
    parse_pair_code(code);
    run.hypotheses[code] = text::read_lines(entry.path());
  }
  return run;
}

enum class Metric { Bleu, SpBleu, Chrf };

inline constexpr std::array<Metric, 3> kMetrics = {Metric::Bleu, Metric::SpBleu, Metric::Chrf};

inline std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::Bleu: return "BLEU";
    case Metric::SpBleu: return "spBLEU";
    case Metric::Chrf: return "ChrF++";
  }
  return "?";
}

struct MetricValue {
  double score = 0.0;
  std::string signature;
};

struct PairScore {
  DirectedPair pair;
  Split split = Split::Test;
  std::size_t segments = 0;
  std::optional<MetricValue> bleu;
  std::optional<MetricValue> spbleu;
  std::optional<MetricValue> chrf;

  const std::optional<MetricValue>& get(Metric m) const {
    return m == Metric::Bleu ? bleu : m == Metric::SpBleu ? spbleu : chrf;
  }
};

struct MetricsConfig {
  BleuConfig bleu;
  ChrfConfig chrf;
};

/// Score every direction of `run` against the benchmark split. Subword BLEU
/// is computed only when a model is given.
inline std::vector<PairScore> score_run(const SystemRun& run, const BenchmarkDataset& bench, Split split,
                                        const MetricsConfig& cfg = {}, const SubwordModel* model = nullptr) {
  std::vector<PairScore> out;
  for (const auto& [code, hyps] : run.hypotheses) {
    const auto pair = parse_pair_code(code);
    const auto* ds = bench.find(pair);
    if (!ds || ds->splits[split].empty())
      fail(Errc::MissingDirection, code + " has no " + std::string(split_name(split)) + " records");
    std::vector<std::string> refs;
    for (const auto& e : ds->splits[split]) refs.push_back(e.record.output);
    if (refs.size() != hyps.size())
      fail(Errc::LineCountMismatch, code + ": " + std::to_string(hyps.size()) + " hypotheses for " +
                                        std::to_string(refs.size()) + " references");
    PairScore ps;
    ps.pair = pair;
    ps.split = split;
    ps.segments = refs.size();
    auto bleu = corpus_bleu(hyps, refs, cfg.bleu);
    ps.bleu = MetricValue{bleu.score, bleu.signature};
    if (model) {
      auto sp = sp_bleu(hyps, refs, *model, cfg.bleu);
      ps.spbleu = MetricValue{sp.score, sp.signature};
    }
    auto chrf = chrf_pp(hyps, refs, cfg.chrf);
    ps.chrf = MetricValue{chrf.score, chrf.signature};
    out.push_back(std::move(ps));
  }
  return out;
}

struct CategoryRow {
  std::string label;
  std::size_t members = 0;
  std::array<std::optional<double>, 3> means;  // indexed like kMetrics; empty = NA

  const std::optional<double>& mean(Metric m) const { return means[static_cast<std::size_t>(m)]; }
};

struct CategoryReport {
  std::string set_name;
  bool weighted = false;
  std::vector<CategoryRow> rows;

  const CategoryRow* find(std::string_view label) const {
    for (const auto& r : rows)
      if (r.label == label) return &r;
    return nullptr;
  }
};

/// Fixed report order: per anchor (Arabic, English, French) the two-way,
/// into-anchor, from-anchor, not-supported and supported rows; then
/// African-African; then the supported/unsupported totals.
inline std::vector<std::string> category_order(const LanguageRegistry& registry) {
  std::vector<std::string> order;
  for (auto anchor : kAnchors) {
    const auto* info = registry.find(anchor);
    if (!info) continue;
    order.push_back(category::both_ways(info->name));
    order.push_back(category::into(info->name));
    order.push_back(category::from(info->name));
    order.push_back(category::from_supported(info->name, false));
    order.push_back(category::from_supported(info->name, true));
  }
  order.push_back(category::kAfricanAfrican);
  order.push_back(category::kTotalSupported);
  order.push_back(category::kTotalUnsupported);
  return order;
}

/// Per-category mean of each metric over member directions: unweighted by
/// default, weighted by segment count when `weighted`. Categories without
/// members keep empty means (rendered NA).
inline CategoryReport aggregate_categories(const std::vector<PairScore>& scores, const LanguageRegistry& registry,
                                           std::string_view set_name = kDefaultSupportedSet, bool weighted = false) {
  CategoryReport rep;
  rep.set_name = std::string(set_name);
  rep.weighted = weighted;
  struct Acc {
    std::size_t members = 0;
    std::array<double, 3> sum{};
    std::array<double, 3> weight{};
  };
  std::map<std::string, Acc> acc;
  for (const auto& s : scores) {
    auto labels = categorize_pair(s.pair, registry, set_name);
    if (auto total = supported_total_label(s.pair, registry, set_name)) labels.insert(*total);
    const double w = weighted ? static_cast<double>(s.segments) : 1.0;
    for (const auto& label : labels) {
      auto& a = acc[label];
      ++a.members;
      for (std::size_t m = 0; m < kMetrics.size(); ++m) {
        if (const auto& v = s.get(kMetrics[m])) {
          a.sum[m] += w * v->score;
          a.weight[m] += w;
        }
      }
    }
  }
  for (const auto& label : category_order(registry)) {
    CategoryRow row;
    row.label = label;
    if (auto it = acc.find(label); it != acc.end()) {
      row.members = it->second.members;
      for (std::size_t m = 0; m < kMetrics.size(); ++m)
        if (it->second.weight[m] > 0) row.means[m] = it->second.sum[m] / it->second.weight[m];
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

enum class ReportFormat { Tsv, Json, Markdown };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "tsv") return ReportFormat::Tsv;
  if (s == "json") return ReportFormat::Json;
  if (s == "markdown" || s == "md") return ReportFormat::Markdown;
  fail(Errc::BadConfig, "unknown report format '" + std::string(s) + "'");
}

namespace detail {

inline std::string fixed2(const std::optional<double>& v) {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

}  // namespace detail

inline std::string render_report(const CategoryReport& rep, ReportFormat format) {
  std::string out;
  switch (format) {
    case ReportFormat::Markdown:
      out = "| Category | Directions | BLEU | spBLEU | ChrF++ |\n|---|---:|---:|---:|---:|\n";
      for (const auto& r : rep.rows) {
        out += "| " + r.label + " | " + std::to_string(r.members);
        for (auto m : kMetrics) out += " | " + detail::fixed2(r.mean(m));
        out += " |\n";
      }
      return out;
    case ReportFormat::Tsv:
      out = "category\tdirections\tbleu\tspbleu\tchrf\n";
      for (const auto& r : rep.rows) {
        out += r.label + "\t" + std::to_string(r.members);
        for (auto m : kMetrics) out += "\t" + detail::fixed2(r.mean(m));
        out += "\n";
      }
      return out;
    case ReportFormat::Json: {
      nlohmann::ordered_json j;
      j["set"] = rep.set_name;
      j["weighted"] = rep.weighted;
      j["categories"] = nlohmann::ordered_json::array();
      for (const auto& r : rep.rows) {
        nlohmann::ordered_json row;
        row["category"] = r.label;
        row["directions"] = r.members;
        for (auto m : kMetrics) {
          const auto& v = r.mean(m);
          row[std::string(metric_name(m))] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
        }
        j["categories"].push_back(std::move(row));
      }
      return j.dump(2) + "\n";
    }
  }
  return out;
}

}  // namespace afromt

#endif  // AFROMT_EVAL_HARNESS_HPP
