#ifndef AFROMT_BENCHMARK_HPP
#define AFROMT_BENCHMARK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "afromt/corpus.hpp"
#include "afromt/error.hpp"
#include "afromt/lang_registry.hpp"
#include "afromt/rng.hpp"
#include "afromt/text.hpp"

namespace afromt {

using SplitCaps = PerSplit<std::size_t>;

enum class MergePolicy {
  Reject,       // two corpora feeding one direction is an error
  Concatenate,  // corpora of the same pair are concatenated in manifest order
};

struct BuilderConfig {
  std::set<QualityTier> allowed_tiers{QualityTier::HumanEvaluated, QualityTier::Gold};
  PerSplit<double> split_ratios{0.8, 0.1, 0.1};
  SplitCaps caps{5000, 50, 200};
  std::uint64_t seed = 0;
  // A split with fewer examples than this (and fewer than 2x its cap) is
  // used in both directions instead of being halved.
  std::size_t scarce_threshold = 1000;
  MergePolicy merge_policy = MergePolicy::Reject;
  // Empty manifest: false -> EmptyCorpus error, true -> empty benchmark.
  bool allow_empty = false;

  void validate() const {
    const double sum = split_ratios.train + split_ratios.dev + split_ratios.test;
    if (std::abs(sum - 1.0) > 1e-9) fail(Errc::BadConfig, "split ratios must sum to 1");
    for (auto s : kSplits) {
      if (split_ratios[s] < 0.0) fail(Errc::BadConfig, "negative split ratio");
      if (caps[s] < 1) fail(Errc::BadConfig, "caps must be >= 1");
    }
    if (allowed_tiers.empty()) fail(Errc::BadConfig, "allowed_tiers is empty");
  }
};

/// Where a benchmark record came from. `reversed` marks records whose
/// input is the corpus' target side.
struct Provenance {
  std::string source_name;
  std::string id;
  bool reversed = false;

  bool operator==(const Provenance&) const = default;
};

struct BenchmarkEntry {
  TranslationRecord record;
  Provenance provenance;

  bool operator==(const BenchmarkEntry&) const = default;
};

struct DirectedPairDataset {
  DirectedPair pair;
  PerSplit<std::vector<BenchmarkEntry>> splits;
  SplitCaps caps;
  // examples available to the direction's corpus split before halving and
  // sampling; decides the abundant/scarce rule
  SplitCaps supply;
};

struct DirectionCounts {
  std::string direction;
  SplitCaps counts;
  SplitCaps caps;
  SplitCaps supply;

  bool operator==(const DirectionCounts&) const = default;
};

struct BenchmarkStats {
  std::size_t n_directions = 0;
  std::size_t n_languages = 0;
  SplitCaps totals;
  std::size_t scarce_threshold = 0;
  std::vector<DirectionCounts> directions;

  std::size_t total() const { return totals.train + totals.dev + totals.test; }
  bool operator==(const BenchmarkStats&) const = default;
};

struct BenchmarkDataset {
  std::vector<DirectedPairDataset> directions;  // ordered by pair code
  BenchmarkStats stats;

  const DirectedPairDataset* find(const DirectedPair& pair) const {
    for (const auto& d : directions)
      if (d.pair == pair) return &d;
    return nullptr;
  }
};

/// A corpus plus the per-split caps it should be sampled with; an unset
/// `caps` means BuilderConfig::caps.
struct BuildInput {
  ParallelCorpus corpus;
  std::optional<SplitCaps> caps;
};

// ---------------------------------------------------------------------------
// Pipeline stages

inline std::vector<BuildInput> filter_by_quality(std::vector<BuildInput> inputs, const BuilderConfig& config) {
  std::vector<BuildInput> kept;
  for (auto& in : inputs)
    if (config.allowed_tiers.count(in.corpus.tier)) kept.push_back(std::move(in));
  return kept;
}

inline std::vector<ParallelCorpus> filter_by_quality(std::vector<ParallelCorpus> corpora,
                                                     const BuilderConfig& config) {
  std::vector<ParallelCorpus> kept;
  for (auto& c : corpora)
    if (config.allowed_tiers.count(c.tier)) kept.push_back(std::move(c));
  return kept;
}

namespace detail {

inline std::size_t floor_share(double ratio, std::size_t n) {
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
}

// Reorder `ids` to follow corpus line order.
inline void restore_corpus_order(std::vector<std::string>& ids,
                                 const std::unordered_map<std::string, std::size_t>& position) {
  std::sort(ids.begin(), ids.end(),
            [&](const std::string& a, const std::string& b) { return position.at(a) < position.at(b); });
}

inline std::unordered_map<std::string, std::size_t> positions(const ParallelCorpus& corpus) {
  std::unordered_map<std::string, std::size_t> pos;
  pos.reserve(corpus.pairs.size());
  for (std::size_t i = 0; i < corpus.pairs.size(); ++i) pos.emplace(corpus.pairs[i].id, i);
  return pos;
}

inline std::string corpus_label(const ParallelCorpus& c) { return c.source_name + "/" + c.pair.code(); }

}  // namespace detail

/// Train/dev/test ids of a corpus. Official splits are returned unchanged.
/// Otherwise the ids are shuffled with the seeded generator; dev takes the
/// first floor(r_dev * n), test the next n - train - dev, and train the
/// remaining floor(r_train * n). Each list is returned in corpus order.
inline SplitIds split_corpus(const ParallelCorpus& corpus, const BuilderConfig& config) {
  if (corpus.official_splits) return *corpus.official_splits;
  const std::size_t n = corpus.pairs.size();
  if (n == 0) fail(Errc::EmptyCorpus, detail::corpus_label(corpus));

  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& p : corpus.pairs) ids.push_back(p.id);
  Rng rng(derive_seed(config.seed, "split/" + detail::corpus_label(corpus)));
  rng.shuffle(ids);

  const std::size_t n_train = detail::floor_share(config.split_ratios.train, n);
  const std::size_t n_dev = detail::floor_share(config.split_ratios.dev, n);
  const std::size_t n_test = n - n_train - n_dev;

  SplitIds out;
  out.dev.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_dev));
  out.test.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_dev),
                  ids.begin() + static_cast<std::ptrdiff_t>(n_dev + n_test));
  out.train.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_dev + n_test), ids.end());
  auto pos = detail::positions(corpus);
  for (auto s : kSplits) detail::restore_corpus_order(out[s], pos);
  return out;
}

/// A not-yet-rendered benchmark example.
struct Candidate {
  std::string input;
  std::string output;
  Provenance provenance;

  bool operator==(const Candidate&) const = default;
};

struct DirectionCandidates {
  DirectedPair pair;
  PerSplit<std::vector<Candidate>> splits;
  SplitCaps supply;
};

struct ExpandedDirections {
  DirectionCandidates forward;                  // corpus src -> tgt
  std::optional<DirectionCandidates> backward;  // absent for one-way corpora
};

/// How one split of a two-way corpus feeds its two directions.
enum class DirectionPolicy { Disjoint, Swap };

/// Abundant splits (>= 2x cap) and splits at or above the scarce threshold
/// are halved into disjoint id sets; smaller splits are used in both
/// directions.
inline DirectionPolicy direction_policy(std::size_t supply, std::size_t cap, std::size_t scarce_threshold) {
  if (supply >= 2 * cap || supply >= scarce_threshold) return DirectionPolicy::Disjoint;
  return DirectionPolicy::Swap;
}

inline ExpandedDirections expand_directions(const ParallelCorpus& corpus, const BuilderConfig& config,
                                            const SplitIds& split_ids, const SplitCaps& caps) {
  std::unordered_map<std::string, const SentencePair*> by_id;
  by_id.reserve(corpus.pairs.size());
  for (const auto& p : corpus.pairs) by_id.emplace(p.id, &p);
  auto pos = detail::positions(corpus);

  auto forward_candidate = [&](const std::string& id) {
    const auto* p = by_id.at(id);
    return Candidate{p->src_text, p->tgt_text, {corpus.source_name, id, false}};
  };
  auto backward_candidate = [&](const std::string& id) {
    const auto* p = by_id.at(id);
    return Candidate{p->tgt_text, p->src_text, {corpus.source_name, id, true}};
  };

  ExpandedDirections out;
  out.forward.pair = corpus.pair;
  if (corpus.both_directions) {
    out.backward.emplace();
    out.backward->pair = corpus.pair.reversed();
  }

  for (auto s : kSplits) {
    const auto& ids = split_ids[s];
    for (const auto& id : ids)
      if (!by_id.count(id)) fail(Errc::BadConfig, "split id " + id + " not in corpus " + corpus.source_name);
    out.forward.supply[s] = ids.size();
    if (!out.backward) {
      for (const auto& id : ids) out.forward.splits[s].push_back(forward_candidate(id));
      continue;
    }
    out.backward->supply[s] = ids.size();
    if (direction_policy(ids.size(), caps[s], config.scarce_threshold) == DirectionPolicy::Swap) {
      for (const auto& id : ids) {
        out.forward.splits[s].push_back(forward_candidate(id));
        out.backward->splits[s].push_back(backward_candidate(id));
      }
      continue;
    }
    std::vector<std::string> shuffled = ids;
    Rng rng(derive_seed(config.seed, "halves/" + detail::corpus_label(corpus) + "/" + std::string(split_name(s))));
    rng.shuffle(shuffled);
    const std::size_t half = (shuffled.size() + 1) / 2;
    std::vector<std::string> fwd(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<std::string> bwd(shuffled.begin() + static_cast<std::ptrdiff_t>(half), shuffled.end());
    detail::restore_corpus_order(fwd, pos);
    detail::restore_corpus_order(bwd, pos);
    for (const auto& id : fwd) out.forward.splits[s].push_back(forward_candidate(id));
    for (const auto& id : bwd) out.backward->splits[s].push_back(backward_candidate(id));
  }
  return out;
}

/// Uniform subset of size `cap` (all examples when they fit), in input order.
template <class T>
std::vector<T> sample_split(const std::vector<T>& examples, std::size_t cap, std::uint64_t seed) {
  if (examples.size() <= cap) return examples;
  std::vector<std::size_t> idx(examples.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(seed);
  // partial Fisher-Yates: the first `cap` slots end up a uniform sample
  for (std::size_t i = 0; i < cap; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  std::vector<T> out;
  out.reserve(cap);
  for (auto i : idx) out.push_back(examples[i]);
  return out;
}

inline std::string render_instruction(const LanguageInfo& tgt) {
  return "Translate the following text to " + tgt.name +
         " language. Return only the translated sentence only. Do not repeat the instruction.";
}

inline BenchmarkStats compute_statistics(const BenchmarkDataset& benchmark, std::size_t scarce_threshold) {
  BenchmarkStats st;
  st.scarce_threshold = scarce_threshold;
  std::set<std::string> langs;
  for (const auto& d : benchmark.directions) {
    DirectionCounts row{d.pair.code(), {}, d.caps, d.supply};
    for (auto s : kSplits) {
      row.counts[s] = d.splits[s].size();
      st.totals[s] += row.counts[s];
    }
    langs.insert(d.pair.src);
    langs.insert(d.pair.tgt);
    st.directions.push_back(std::move(row));
  }
  st.n_directions = benchmark.directions.size();
  st.n_languages = langs.size();
  return st;
}

inline BenchmarkStats compute_statistics(const BenchmarkDataset& benchmark) {
  return compute_statistics(benchmark, benchmark.stats.scarce_threshold);
}

namespace detail {

// One-way corpora are keyed by their direction, two-way corpora by the
// unordered pair, so a one-way corpus never absorbs a two-way one.
inline std::string merge_key(const ParallelCorpus& c) {
  if (!c.both_directions) return "1:" + c.pair.code();
  auto a = c.pair.src, b = c.pair.tgt;
  if (b < a) std::swap(a, b);
  return "2:" + a + "-" + b;
}

inline BuildInput concatenate(std::vector<BuildInput> group) {
  BuildInput merged = std::move(group.front());
  bool all_official = merged.corpus.official_splits.has_value();
  bool any_official = all_official;
  std::set<std::string> ids;
  for (const auto& p : merged.corpus.pairs) ids.insert(p.id);
  for (std::size_t i = 1; i < group.size(); ++i) {
    auto& c = group[i].corpus;
    const bool flip = c.pair != merged.corpus.pair;
    merged.corpus.source_name += "+" + c.source_name;
    for (auto& p : c.pairs) {
      if (!ids.insert(p.id).second)
        fail(Errc::BadConfig, "id " + p.id + " repeats across merged corpora " + merged.corpus.source_name);
      if (flip) std::swap(p.src_text, p.tgt_text);
      merged.corpus.pairs.push_back(std::move(p));
    }
    all_official = all_official && c.official_splits.has_value();
    any_official = any_official || c.official_splits.has_value();
    if (merged.corpus.official_splits && c.official_splits)
      for (auto s : kSplits)
        for (auto& id : (*c.official_splits)[s]) (*merged.corpus.official_splits)[s].push_back(std::move(id));
  }
  if (any_official && !all_official)
    fail(Errc::BadConfig, "cannot merge corpora with and without official splits: " + merged.corpus.source_name);
  return merged;
}

}  // namespace detail

/// Full pipeline: quality filter, split, direction expansion, per-split
/// sampling, instruction rendering. Output directions are ordered by pair
/// code and fully determined by (inputs, config).
inline BenchmarkDataset build_benchmark(std::vector<BuildInput> inputs, const LanguageRegistry& registry,
                                        const BuilderConfig& config) {
  config.validate();
  for (const auto& in : inputs) {
    registry.at(in.corpus.pair.src);
    registry.at(in.corpus.pair.tgt);
    if (in.corpus.pair.src == in.corpus.pair.tgt) fail(Errc::SameLanguage, in.corpus.pair.code());
    if (!official_splits_partition(in.corpus))
      fail(Errc::BadConfig, "official splits of " + in.corpus.source_name + " do not partition its ids");
  }

  inputs = filter_by_quality(std::move(inputs), config);
  BenchmarkDataset bench;
  bench.stats.scarce_threshold = config.scarce_threshold;
  if (inputs.empty()) {
    if (config.allow_empty) return bench;
    fail(Errc::EmptyCorpus, "no corpus passes the quality filter");
  }

  // group corpora feeding the same directions
  std::vector<std::string> order;
  std::map<std::string, std::vector<BuildInput>> groups;
  for (auto& in : inputs) {
    auto key = detail::merge_key(in.corpus);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(std::move(in));
  }
  std::vector<BuildInput> merged;
  for (const auto& key : order) {
    auto& g = groups[key];
    if (g.size() > 1 && config.merge_policy == MergePolicy::Reject)
      fail(Errc::DuplicateDirection, g[1].corpus.pair.code() + " (" + g[0].corpus.source_name + ", " +
                                         g[1].corpus.source_name + ")");
    merged.push_back(g.size() == 1 ? std::move(g.front()) : detail::concatenate(std::move(g)));
  }

  std::map<DirectedPair, DirectedPairDataset> directions;
  auto emit = [&](const DirectionCandidates& cand, const SplitCaps& caps) {
    if (directions.count(cand.pair)) fail(Errc::DuplicateDirection, cand.pair.code());
    DirectedPairDataset ds;
    ds.pair = cand.pair;
    ds.caps = caps;
    ds.supply = cand.supply;
    const auto instruction = render_instruction(registry.at(cand.pair.tgt));
    for (auto s : kSplits) {
      auto seed = derive_seed(config.seed, "sample/" + cand.pair.code() + "/" + std::string(split_name(s)));
      for (auto& c : sample_split(cand.splits[s], caps[s], seed))
        ds.splits[s].push_back({{cand.pair.code(), instruction, std::move(c.input), std::move(c.output)},
                                std::move(c.provenance)});
    }
    directions.emplace(cand.pair, std::move(ds));
  };

  for (const auto& in : merged) {
    const SplitCaps caps = in.caps.value_or(config.caps);
    auto ids = split_corpus(in.corpus, config);
    auto expanded = expand_directions(in.corpus, config, ids, caps);
    emit(expanded.forward, caps);
    if (expanded.backward) emit(*expanded.backward, caps);
  }

  for (auto& [pair, ds] : directions) bench.directions.push_back(std::move(ds));
  bench.stats = compute_statistics(bench, config.scarce_threshold);
  return bench;
}

inline BenchmarkDataset build_benchmark(std::vector<ParallelCorpus> corpora, const LanguageRegistry& registry,
                                        const BuilderConfig& config) {
  std::vector<BuildInput> inputs;
  for (auto& c : corpora) inputs.push_back({std::move(c), std::nullopt});
  return build_benchmark(std::move(inputs), registry, config);
}

// ---------------------------------------------------------------------------
// Manifest

struct ManifestEntry {
  std::string source_name;
  std::filesystem::path path;
  CorpusFormat format = CorpusFormat::Tsv;
  DirectedPair pair;
  QualityTier tier = QualityTier::Unknown;
  bool has_official_splits = false;
  bool both_directions = true;
  std::optional<SplitCaps> caps;
};

namespace detail {

inline bool parse_bool(const std::string& s, const std::string& where) {
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no") return false;
  fail(Errc::MalformedManifest, where + ": expected a boolean, got '" + s + "'");
}

inline std::size_t parse_count(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    fail(Errc::MalformedManifest, where + ": bad number '" + s + "'");
  }
}

}  // namespace detail

inline SplitCaps parse_caps(const std::string& s, const std::string& where = "caps") {
  auto f = text::split(s, ',');
  if (f.size() != 3) fail(Errc::MalformedManifest, where + ": expected train,dev,test");
  return {detail::parse_count(f[0], where), detail::parse_count(f[1], where), detail::parse_count(f[2], where)};
}

/// Manifest TSV. Columns: source_name, path, format, src, tgt, tier,
/// has_official_splits, and two optional ones: directions ("both" or
/// "forward") and caps ("train,dev,test" or "-"). Relative paths resolve
/// against `base_dir`. '#' lines and a "source_name" header are skipped.
inline std::vector<ManifestEntry> parse_manifest(std::string_view content,
                                                 const std::filesystem::path& base_dir = {}) {
  std::vector<ManifestEntry> out;
  std::size_t lineno = 0;
  for (const auto& raw : text::split(content, '\n')) {
    ++lineno;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto f = text::split(line, '\t');
    if (f[0] == "source_name") continue;
    const std::string where = "manifest line " + std::to_string(lineno);
    if (f.size() < 7 || f.size() > 9) fail(Errc::MalformedManifest, where + ": expected 7 to 9 columns");
    ManifestEntry e;
    e.source_name = f[0];
    e.path = f[1];
    if (e.path.is_relative() && !base_dir.empty()) e.path = base_dir / e.path;
    e.format = parse_corpus_format(f[2]);
    if (f[3] == f[4]) fail(Errc::SameLanguage, where + ": " + f[3]);
    e.pair = parse_pair_code(f[3] + "-" + f[4]);
    e.tier = parse_tier(f[5]);
    e.has_official_splits = detail::parse_bool(f[6], where);
    if (f.size() >= 8 && !f[7].empty() && f[7] != "-") {
      if (f[7] == "both") e.both_directions = true;
      else if (f[7] == "forward") e.both_directions = false;
      else fail(Errc::MalformedManifest, where + ": directions must be both or forward");
    }
    if (f.size() == 9 && !f[8].empty() && f[8] != "-") e.caps = parse_caps(f[8], where);
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  return parse_manifest(text::read_file(path), path.parent_path());
}

inline std::vector<BuildInput> load_manifest_corpora(const std::vector<ManifestEntry>& manifest) {
  std::vector<BuildInput> inputs;
  inputs.reserve(manifest.size());
  for (const auto& e : manifest) {
    auto corpus = load_parallel_corpus(e.path, e.format, e.pair, e.tier, e.source_name, e.has_official_splits);
    corpus.both_directions = e.both_directions;
    inputs.push_back({std::move(corpus), e.caps});
  }
  return inputs;
}

inline BenchmarkDataset build_benchmark(const std::vector<ManifestEntry>& manifest, const LanguageRegistry& registry,
                                        const BuilderConfig& config) {
  return build_benchmark(load_manifest_corpora(manifest), registry, config);
}

// ---------------------------------------------------------------------------
// On-disk layout: {src}-{tgt}.{split}.jsonl, a provenance sidecar
// {src}-{tgt}.{split}.prov.tsv, and stats.tsv.

inline std::string stats_to_tsv(const BenchmarkStats& st) {
  std::ostringstream os;
  os << "# directions=" << st.n_directions << " languages=" << st.n_languages
     << " scarce_threshold=" << st.scarce_threshold << "\n";
  os << "direction\ttrain\tdev\ttest\tcap_train\tcap_dev\tcap_test\tsupply_train\tsupply_dev\tsupply_test\n";
  for (const auto& d : st.directions) {
    os << d.direction;
    for (auto s : kSplits) os << '\t' << d.counts[s];
    for (auto s : kSplits) os << '\t' << d.caps[s];
    for (auto s : kSplits) os << '\t' << d.supply[s];
    os << '\n';
  }
  os << "TOTAL\t" << st.totals.train << '\t' << st.totals.dev << '\t' << st.totals.test << '\n';
  return os.str();
}

inline BenchmarkStats stats_from_tsv(std::string_view content) {
  BenchmarkStats st;
  std::set<std::string> langs;
  for (const auto& raw : text::split(content, '\n')) {
    std::string line = raw;
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto pos = line.find("scarce_threshold=");
      if (pos != std::string::npos) st.scarce_threshold = std::stoull(line.substr(pos + 17));
      continue;
    }
    auto f = text::split(line, '\t');
    if (f[0] == "direction" || f[0] == "TOTAL") continue;
    if (f.size() != 10) fail(Errc::MalformedManifest, "stats.tsv: bad row '" + line + "'");
    DirectionCounts row;
    row.direction = f[0];
    for (std::size_t i = 0; i < 3; ++i) {
      row.counts[kSplits[i]] = detail::parse_count(f[1 + i], "stats.tsv");
      row.caps[kSplits[i]] = detail::parse_count(f[4 + i], "stats.tsv");
      row.supply[kSplits[i]] = detail::parse_count(f[7 + i], "stats.tsv");
      st.totals[kSplits[i]] += row.counts[kSplits[i]];
    }
    auto pair = parse_pair_code(row.direction);
    langs.insert(pair.src);
    langs.insert(pair.tgt);
    st.directions.push_back(std::move(row));
  }
  st.n_directions = st.directions.size();
  st.n_languages = langs.size();
  return st;
}

inline std::filesystem::path split_file(const std::filesystem::path& dir, const DirectedPair& pair, Split s,
                                        std::string_view suffix = ".jsonl") {
  return dir / (pair.code() + "." + std::string(split_name(s)) + std::string(suffix));
}

inline void write_benchmark(const BenchmarkDataset& bench, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(Errc::IoError, "cannot create " + dir.string());
  for (const auto& d : bench.directions) {
    for (auto s : kSplits) {
      std::string records, prov;
      for (const auto& e : d.splits[s]) {
        records += serialize_record(e.record);
        records += '\n';
        prov += e.provenance.source_name + '\t' + e.provenance.id + '\t' +
                (e.provenance.reversed ? "reversed" : "forward") + '\n';
      }
      text::write_file(split_file(dir, d.pair, s), records);
      text::write_file(split_file(dir, d.pair, s, ".prov.tsv"), prov);
    }
  }
  text::write_file(dir / "stats.tsv", stats_to_tsv(bench.stats));
}

/// Read a benchmark directory. Every "{pair}.{split}.jsonl" file is loaded;
/// provenance and caps/supply come from the sidecars when present.
inline BenchmarkDataset load_benchmark(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) fail(Errc::IoError, dir.string() + " is not a directory");
  std::map<DirectedPair, DirectedPairDataset> by_pair;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.size() < 6 || name.substr(name.size() - 6) != ".jsonl") continue;
    auto parts = text::split(name.substr(0, name.size() - 6), '.');
    if (parts.size() != 2) continue;
    std::optional<Split> split;
    for (auto s : kSplits)
      if (split_name(s) == parts[1]) split = s;
    if (!split) continue;
    auto pair = parse_pair_code(parts[0]);
    auto& ds = by_pair[pair];
    ds.pair = pair;
    std::size_t lineno = 0;
    for (const auto& line : text::read_lines(entry.path())) {
      ++lineno;
      try {
        ds.splits[*split].push_back({parse_record(line), {}});
      } catch (const Error& e) {
        fail(e.code(), name + " line " + std::to_string(lineno) + ": " + e.detail());
      }
    }
    auto prov_path = split_file(dir, pair, *split, ".prov.tsv");
    if (std::filesystem::exists(prov_path)) {
      auto lines = text::read_lines(prov_path);
      auto& entries = ds.splits[*split];
      if (lines.size() != entries.size())
        fail(Errc::LineCountMismatch, prov_path.filename().string() + " does not match " + name);
      for (std::size_t i = 0; i < lines.size(); ++i) {
        auto f = text::split(lines[i], '\t');
        if (f.size() != 3) fail(Errc::MalformedLine, prov_path.filename().string() + " line " + std::to_string(i + 1));
        entries[i].provenance = {f[0], f[1], f[2] == "reversed"};
      }
    }
  }
  BenchmarkDataset bench;
  std::map<std::string, DirectionCounts> recorded;
  if (std::filesystem::exists(dir / "stats.tsv")) {
    auto st = stats_from_tsv(text::read_file(dir / "stats.tsv"));
    bench.stats.scarce_threshold = st.scarce_threshold;
    for (auto& row : st.directions) recorded.emplace(row.direction, row);
  }
  for (auto& [pair, ds] : by_pair) {
    if (auto it = recorded.find(pair.code()); it != recorded.end()) {
      ds.caps = it->second.caps;
      ds.supply = it->second.supply;
    }
    bench.directions.push_back(std::move(ds));
  }
  bench.stats = compute_statistics(bench, bench.stats.scarce_threshold);
  return bench;
}

}  // namespace afromt

#endif  // AFROMT_BENCHMARK_HPP
