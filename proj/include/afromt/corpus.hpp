#ifndef AFROMT_CORPUS_HPP
#define AFROMT_CORPUS_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "afromt/error.hpp"
#include "afromt/lang_registry.hpp"
#include "afromt/text.hpp"

namespace afromt {

enum class QualityTier { Synthetic, HumanEvaluated, Gold, Unknown };

inline constexpr std::array<QualityTier, 4> kAllTiers = {QualityTier::Synthetic, QualityTier::HumanEvaluated,
                                                         QualityTier::Gold, QualityTier::Unknown};

inline std::string_view tier_name(QualityTier t) {
  switch (t) {
    case QualityTier::Synthetic: return "synthetic";
    case QualityTier::HumanEvaluated: return "human";
    case QualityTier::Gold: return "gold";
    case QualityTier::Unknown: return "unknown";
  }
  return "unknown";
}

inline QualityTier parse_tier(std::string_view s) {
  std::string k(s);
  std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return std::tolower(c); });
  if (k == "synthetic") return QualityTier::Synthetic;
  if (k == "human" || k == "human-evaluated" || k == "human_evaluated" || k == "humanevaluated")
    return QualityTier::HumanEvaluated;
  if (k == "gold") return QualityTier::Gold;
  if (k == "unknown") return QualityTier::Unknown;
  fail(Errc::BadConfig, "unknown quality tier '" + std::string(s) + "'");
}

enum class Split { Train, Dev, Test };

inline constexpr std::array<Split, 3> kSplits = {Split::Train, Split::Dev, Split::Test};

inline std::string_view split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "train";
}

inline Split parse_split(std::string_view s) {
  for (auto sp : kSplits)
    if (split_name(sp) == s) return sp;
  fail(Errc::BadConfig, "unknown split '" + std::string(s) + "'");
}

/// Anything indexed by split (id lists, counts, caps).
template <class T>
struct PerSplit {
  T train{};
  T dev{};
  T test{};

  T& operator[](Split s) { return s == Split::Train ? train : s == Split::Dev ? dev : test; }
  const T& operator[](Split s) const { return s == Split::Train ? train : s == Split::Dev ? dev : test; }

  bool operator==(const PerSplit&) const = default;
};

using SplitIds = PerSplit<std::vector<std::string>>;

struct SentencePair {
  std::string id;
  std::string src_text;
  std::string tgt_text;

  bool operator==(const SentencePair&) const = default;
};

struct ParallelCorpus {
  DirectedPair pair;
  // false: the corpus only feeds pair.src -> pair.tgt
  bool both_directions = true;
  std::string source_name;
  QualityTier tier = QualityTier::Unknown;
  std::vector<SentencePair> pairs;
  std::optional<SplitIds> official_splits;
};

/// True when the official splits use every corpus id exactly once.
inline bool official_splits_partition(const ParallelCorpus& corpus) {
  if (!corpus.official_splits) return true;
  std::set<std::string> ids;
  std::size_t n = 0;
  for (auto s : kSplits)
    for (const auto& id : (*corpus.official_splits)[s]) {
      ids.insert(id);
      ++n;
    }
  if (n != ids.size() || n != corpus.pairs.size()) return false;
  return std::all_of(corpus.pairs.begin(), corpus.pairs.end(),
                     [&](const SentencePair& p) { return ids.count(p.id) != 0; });
}

/// One benchmark line. Fields appear in the JSONL in declaration order.
struct TranslationRecord {
  std::string langcode;
  std::string instruction;
  std::string input;
  std::string output;

  bool operator==(const TranslationRecord&) const = default;
};

inline constexpr std::array<std::string_view, 4> kRecordFields = {"langcode", "instruction", "input", "output"};

inline TranslationRecord parse_record(std::string_view line) {
  if (line.find('\n') != std::string_view::npos) fail(Errc::MalformedJson, "record spans several lines");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::MalformedJson, e.what());
  }
  if (!j.is_object()) fail(Errc::MalformedJson, "record is not a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(kRecordFields.begin(), kRecordFields.end(), key) == kRecordFields.end())
      fail(Errc::ExtraField, key);
  }
  std::array<std::string, 4> values;
  for (std::size_t i = 0; i < kRecordFields.size(); ++i) {
    const std::string key(kRecordFields[i]);
    auto it = j.find(key);
    if (it == j.end()) fail(Errc::MissingField, key);
    if (!it->is_string()) fail(Errc::MalformedJson, "field '" + key + "' is not a string");
    values[i] = it->get<std::string>();
    if (values[i].empty()) fail(Errc::MalformedJson, "field '" + key + "' is empty");
  }
  parse_pair_code(values[0]);
  return {values[0], values[1], values[2], values[3]};
}

/// Canonical line: fixed key order, no whitespace between tokens, standard
/// JSON string escaping (quote, backslash, control characters). Non-ASCII
/// text is written as raw UTF-8.
inline std::string serialize_record(const TranslationRecord& rec) {
  auto str = [](const std::string& s) {
    return nlohmann::json(s).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  };
  std::string out = "{";
  out += "\"langcode\":" + str(rec.langcode);
  out += ",\"instruction\":" + str(rec.instruction);
  out += ",\"input\":" + str(rec.input);
  out += ",\"output\":" + str(rec.output);
  out += "}";
  return out;
}

enum class CorpusFormat { Tsv, Moses, Jsonl };

inline CorpusFormat parse_corpus_format(std::string_view s) {
  if (s == "tsv") return CorpusFormat::Tsv;
  if (s == "moses" || s == "moses-two-file") return CorpusFormat::Moses;
  if (s == "jsonl") return CorpusFormat::Jsonl;
  fail(Errc::BadConfig, "unknown corpus format '" + std::string(s) + "'");
}

namespace detail {

struct RawSegment {
  std::string src;
  std::string tgt;
};

inline std::vector<RawSegment> read_segments(const std::filesystem::path& base, CorpusFormat format,
                                             const DirectedPair& pair, std::size_t first_line) {
  std::vector<RawSegment> out;
  switch (format) {
    case CorpusFormat::Tsv: {
      auto lines = text::read_lines(base);
      std::size_t n = first_line;
      for (const auto& line : lines) {
        auto cols = text::split(line, '\t');
        if (cols.size() > 2) fail(Errc::MalformedLine, "line " + std::to_string(n) + ": more than two columns");
        out.push_back({cols[0], cols.size() == 2 ? cols[1] : std::string()});
        ++n;
      }
      break;
    }
    case CorpusFormat::Moses: {
      auto src_path = base;
      src_path += "." + pair.src;
      auto tgt_path = base;
      tgt_path += "." + pair.tgt;
      auto src = text::read_lines(src_path);
      auto tgt = text::read_lines(tgt_path);
      if (src.size() != tgt.size())
        fail(Errc::LineCountMismatch, src_path.string() + " has " + std::to_string(src.size()) + " lines, " +
                                          tgt_path.string() + " has " + std::to_string(tgt.size()));
      for (std::size_t i = 0; i < src.size(); ++i) out.push_back({std::move(src[i]), std::move(tgt[i])});
      break;
    }
    case CorpusFormat::Jsonl: {
      std::size_t n = first_line;
      for (const auto& line : text::read_lines(base)) {
        TranslationRecord rec;
        try {
          rec = parse_record(line);
        } catch (const Error& e) {
          fail(e.code(), "line " + std::to_string(n) + ": " + e.detail());
        }
        if (rec.langcode == pair.code()) out.push_back({rec.input, rec.output});
        else if (rec.langcode == pair.reversed().code()) out.push_back({rec.output, rec.input});
        else fail(Errc::MalformedLine, "line " + std::to_string(n) + ": langcode " + rec.langcode +
                                           " does not match " + pair.code());
        ++n;
      }
      break;
    }
  }
  return out;
}

}  // namespace detail

/// Load a parallel corpus. Segments are trimmed; an empty segment is an
/// error. Ids are "{source_name}:{line}" with 1-based line numbers.
///
/// With `official_splits` the corpus is read from three files
/// `{path}.train`, `{path}.dev`, `{path}.test` (Moses: `{path}.train.{src}`
/// etc.), numbered continuously in that order, and the split membership is
/// kept as the corpus' official partition.
inline ParallelCorpus load_parallel_corpus(const std::filesystem::path& path, CorpusFormat format,
                                           const DirectedPair& pair, QualityTier tier,
                                           std::string source_name = {}, bool official_splits = false) {
  ParallelCorpus corpus;
  corpus.pair = pair;
  corpus.tier = tier;
  corpus.source_name = std::move(source_name);
  if (official_splits) corpus.official_splits.emplace();

  std::size_t line = 1;
  auto ingest = [&](const std::filesystem::path& base, std::vector<std::string>* split_ids) {
    for (auto& seg : detail::read_segments(base, format, pair, line)) {
      auto src = text::trim(seg.src);
      auto tgt = text::trim(seg.tgt);
      if (src.empty() || tgt.empty())
        fail(Errc::EmptySegment, std::to_string(line) + (official_splits ? " (" + base.string() + ")" : ""));
      SentencePair sp{corpus.source_name + ":" + std::to_string(line), std::string(src), std::string(tgt)};
      if (split_ids) split_ids->push_back(sp.id);
      corpus.pairs.push_back(std::move(sp));
      ++line;
    }
  };

  if (official_splits) {
    for (auto s : kSplits) {
      auto base = path;
      base += "." + std::string(split_name(s));
      ingest(base, &(*corpus.official_splits)[s]);
    }
  } else {
    ingest(path, nullptr);
  }
  return corpus;
}

}  // namespace afromt

#endif  // AFROMT_CORPUS_HPP
