#ifndef AFROMT_SUBWORD_HPP
#define AFROMT_SUBWORD_HPP

// Wide-coverage subword tokenizer: temperature-upsampled multilingual line
// sampling and deterministic byte-pair-encoding training over UTF-8 code
// points, with SentencePiece-style word-boundary pieces.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "afromt/error.hpp"
#include "afromt/rng.hpp"
#include "afromt/text.hpp"

namespace afromt {

/// Prefix marking a word-initial piece. Never part of a vocabulary entry.
inline constexpr std::string_view kBoundaryMarker = "▁";
inline constexpr std::string_view kUnkPiece = "<unk>";
/// What decode() writes for the unknown piece.
inline constexpr std::string_view kUnkReplacement = "�";
inline constexpr std::string_view kModelMagic = "SPBLEU1K-BPE";
inline constexpr int kModelVersion = 1;

// ---------------------------------------------------------------------------
// Temperature sampling

struct MonolingualSource {
  std::string lang;
  std::size_t n_lines = 0;
  std::filesystem::path path;
  std::vector<std::string> lines;
};

inline MonolingualSource load_monolingual_source(std::string lang, const std::filesystem::path& path) {
  MonolingualSource src{std::move(lang), 0, path, text::read_lines(path)};
  src.n_lines = src.lines.size();
  return src;
}

/// Sources manifest: "lang<TAB>path" per line, relative paths resolved
/// against the manifest's directory.
inline std::vector<MonolingualSource> load_sources_manifest(const std::filesystem::path& manifest) {
  std::vector<MonolingualSource> out;
  std::size_t lineno = 0;
  for (const auto& line : text::read_lines(manifest)) {
    ++lineno;
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto f = text::split(line, '\t');
    if (f[0] == "lang") continue;
    if (f.size() != 2) fail(Errc::MalformedManifest, "sources line " + std::to_string(lineno) + ": expected lang<TAB>path");
    std::filesystem::path p = f[1];
    if (p.is_relative()) p = manifest.parent_path() / p;
    out.push_back(load_monolingual_source(f[0], p));
  }
  return out;
}

/// q_i = n_i / N and p_i = q_i^alpha / sum_j q_j^alpha.
struct SamplingWeights {
  double alpha = 1.0;
  std::vector<std::string> langs;
  std::vector<std::size_t> counts;
  std::vector<double> q;
  std::vector<double> p;
};

/// With alpha = 1 the probabilities are the raw shares exactly; as alpha
/// tends to 0 they approach uniform over non-empty languages.
inline SamplingWeights compute_sampling_weights(std::span<const std::string> langs,
                                                std::span<const std::size_t> counts, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(Errc::BadAlpha, "alpha must be in (0, 1], got " + std::to_string(alpha));
  if (langs.size() != counts.size()) fail(Errc::BadConfig, "one count per language expected");
  SamplingWeights w;
  w.alpha = alpha;
  w.langs.assign(langs.begin(), langs.end());
  w.counts.assign(counts.begin(), counts.end());
  double total = 0.0;
  for (auto n : counts) total += static_cast<double>(n);
  if (total <= 0.0) fail(Errc::AllEmpty, "no source has any lines");
  w.q.resize(counts.size());
  w.p.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) w.q[i] = static_cast<double>(counts[i]) / total;
  if (alpha == 1.0) {
    w.p = w.q;
    return w;
  }
  double z = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    w.p[i] = counts[i] == 0 ? 0.0 : std::pow(w.q[i], alpha);
    z += w.p[i];
  }
  for (auto& v : w.p) v /= z;
  return w;
}

inline SamplingWeights compute_sampling_weights(std::span<const MonolingualSource> sources, double alpha) {
  std::vector<std::string> langs;
  std::vector<std::size_t> counts;
  for (const auto& s : sources) {
    langs.push_back(s.lang);
    counts.push_back(s.n_lines);
  }
  return compute_sampling_weights(langs, counts, alpha);
}

/// Index of the language chosen by a unit draw `u` in [0, 1).
inline std::size_t pick_language(const std::vector<double>& p, double u) {
  double acc = 0.0;
  std::size_t last = p.size();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    acc += p[i];
    last = i;
    if (u < acc) return i;
  }
  return last;  // rounding left u above the final cumulative sum
}

/// Draw `budget` lines: a language per draw according to p, then a line of
/// that language uniformly with replacement.
inline std::vector<std::string> sample_training_corpus(std::span<const MonolingualSource> sources,
                                                       const SamplingWeights& weights, std::size_t budget,
                                                       std::uint64_t seed) {
  if (budget < 1) fail(Errc::BadConfig, "line budget must be >= 1");
  if (weights.p.size() != sources.size()) fail(Errc::BadConfig, "weights do not match sources");
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(budget);
  for (std::size_t k = 0; k < budget; ++k) {
    const auto i = pick_language(weights.p, rng.unit());
    if (i >= sources.size() || sources[i].lines.empty())
      fail(Errc::EmptySource, i < sources.size() ? sources[i].lang : std::string("?"));
    out.push_back(sources[i].lines[static_cast<std::size_t>(rng.below(sources[i].lines.size()))]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model

/// One piece of an encoded text: a vocabulary symbol and whether it starts
/// a word. Its text form is the symbol, prefixed by the boundary marker
/// when word-initial.
struct Piece {
  int symbol = 0;
  bool word_initial = false;
};

/// Trained BPE model. Ranks: 0 is the unknown piece, then the alphabet in
/// byte order, then merge outputs in creation order. Immutable once built;
/// encode/decode are safe to call concurrently.
class SubwordModel {
 public:
  SubwordModel() = default;

  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::vector<std::pair<std::string, std::string>>& merges() const { return merges_; }
  const std::string& alpha_label() const { return alpha_; }
  std::set<std::string> alphabet() const {
    std::set<std::string> a;
    for (std::size_t r = 1; r < vocab_.size(); ++r)
      if (text::utf8_chars(vocab_[r]).size() == 1) a.insert(vocab_[r]);
    return a;
  }
  std::size_t size() const { return vocab_.size(); }
  int rank(std::string_view symbol) const {
    auto it = rank_of_.find(std::string(symbol));
    return it == rank_of_.end() ? -1 : it->second;
  }

  std::string piece_text(const Piece& p) const {
    return p.word_initial ? std::string(kBoundaryMarker) + vocab_[static_cast<std::size_t>(p.symbol)]
                          : vocab_[static_cast<std::size_t>(p.symbol)];
  }

  /// Pieces of one whitespace-free word.
  std::vector<Piece> encode_word(std::string_view word) const {
    std::vector<int> syms;
    for (const auto& ch : text::utf8_chars(word)) {
      auto it = rank_of_.find(ch);
      syms.push_back(ch == kBoundaryMarker || it == rank_of_.end() ? 0 : it->second);
    }
    for (;;) {
      int best_rank = std::numeric_limits<int>::max();
      std::size_t best_at = 0;
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
        if (syms[i] == 0 || syms[i + 1] == 0) continue;
        auto it = merge_rank_.find(key(syms[i], syms[i + 1]));
        if (it != merge_rank_.end() && it->second < best_rank) {
          best_rank = it->second;
          best_at = i;
        }
      }
      if (best_rank == std::numeric_limits<int>::max()) break;
      const int left = syms[best_at], right = syms[best_at + 1];
      const int merged = merge_output_[static_cast<std::size_t>(best_rank)];
      std::vector<int> next;
      next.reserve(syms.size());
      for (std::size_t i = 0; i < syms.size();) {
        if (i + 1 < syms.size() && syms[i] == left && syms[i + 1] == right) {
          next.push_back(merged);
          i += 2;
        } else {
          next.push_back(syms[i++]);
        }
      }
      syms = std::move(next);
    }
    std::vector<Piece> out;
    out.reserve(syms.size());
    for (std::size_t i = 0; i < syms.size(); ++i) out.push_back({syms[i], i == 0});
    return out;
  }

  std::vector<Piece> encode_pieces(std::string_view text) const {
    std::vector<Piece> out;
    for (const auto& w : text::split_whitespace(text)) {
      auto p = encode_word(w);
      out.insert(out.end(), p.begin(), p.end());
    }
    return out;
  }

  /// Split on whitespace, mark each word's first piece, apply merges by
  /// rank. Characters outside the alphabet (and the marker itself) become
  /// the unknown piece.
  std::vector<std::string> encode(std::string_view text) const {
    std::vector<std::string> out;
    for (const auto& p : encode_pieces(text)) out.push_back(piece_text(p));
    return out;
  }

  std::string decode(std::span<const std::string> pieces) const {
    std::string out;
    for (const auto& piece : pieces) {
      std::string_view sym = piece;
      const bool initial = sym.substr(0, kBoundaryMarker.size()) == kBoundaryMarker;
      if (initial) sym.remove_prefix(kBoundaryMarker.size());
      const int r = rank(sym);
      if (r < 0) fail(Errc::UnknownPiece, piece);
      if (initial && !out.empty()) out += ' ';
      out += r == 0 ? std::string(kUnkReplacement) : std::string(sym);
    }
    return out;
  }

  /// Everything below the header line; the checksum covers exactly this.
  std::string body() const {
    std::string b;
    for (std::size_t r = 0; r < vocab_.size(); ++r) b += std::to_string(r) + '\t' + vocab_[r] + '\n';
    b += "#MERGES\n";
    for (const auto& [l, r] : merges_) b += l + '\t' + r + '\n';
    return b;
  }

  std::string checksum() const { return text::hex64(text::fnv1a64(body())); }

  std::string serialize() const {
    return std::string(kModelMagic) + " v" + std::to_string(kModelVersion) + "; alpha=" + alpha_ +
           "; vocab=" + std::to_string(vocab_.size()) + "; checksum=" + checksum() + "\n" + body();
  }

  void save(const std::filesystem::path& path) const { text::write_file(path, serialize()); }

  static SubwordModel parse(std::string_view content) {
    auto nl = content.find('\n');
    if (nl == std::string_view::npos) fail(Errc::MalformedModel, "missing header");
    const std::string header(content.substr(0, nl));
    const std::string_view body = content.substr(nl + 1);
    if (header.rfind(std::string(kModelMagic) + " v", 0) != 0) fail(Errc::MalformedModel, "bad header: " + header);

    std::map<std::string, std::string> fields;
    auto parts = text::split(header, ';');
    const auto version = std::string(text::trim(parts[0]).substr(kModelMagic.size() + 2));
    if (version != std::to_string(kModelVersion))
      fail(Errc::VersionMismatch, "model version v" + version + ", expected v" + std::to_string(kModelVersion));
    for (std::size_t i = 1; i < parts.size(); ++i) {
      auto kv = std::string(text::trim(parts[i]));
      auto eq = kv.find('=');
      if (eq == std::string::npos) fail(Errc::MalformedModel, "bad header field: " + kv);
      fields[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    for (const char* k : {"alpha", "vocab", "checksum"})
      if (!fields.count(k)) fail(Errc::MalformedModel, std::string("header lacks ") + k);
    if (text::hex64(text::fnv1a64(body)) != fields["checksum"])
      fail(Errc::ChecksumMismatch, "expected " + fields["checksum"] + ", body hashes to " +
                                       text::hex64(text::fnv1a64(body)));

    SubwordModel m;
    m.alpha_ = fields["alpha"];
    bool in_merges = false;
    std::vector<std::pair<std::string, std::string>> merges;
    for (const auto& line : text::split(body, '\n')) {
      if (line.empty()) continue;
      if (line == "#MERGES") {
        in_merges = true;
        continue;
      }
      auto f = text::split(line, '\t');
      if (f.size() != 2) fail(Errc::MalformedModel, "bad line: " + line);
      if (in_merges) {
        merges.emplace_back(f[0], f[1]);
      } else {
        if (f[0] != std::to_string(m.vocab_.size())) fail(Errc::MalformedModel, "ranks are not dense at " + line);
        m.vocab_.push_back(f[1]);
      }
    }
    if (m.vocab_.empty() || m.vocab_[0] != kUnkPiece) fail(Errc::MalformedModel, "rank 0 must be the unknown piece");
    if (std::to_string(m.vocab_.size()) != fields["vocab"]) fail(Errc::MalformedModel, "vocab size mismatch");
    for (std::size_t r = 0; r < m.vocab_.size(); ++r)
      if (!m.rank_of_.emplace(m.vocab_[r], static_cast<int>(r)).second)
        fail(Errc::MalformedModel, "duplicate vocab entry " + m.vocab_[r]);
    std::unordered_set<std::string> known;
    for (std::size_t r = 1; r < m.vocab_.size(); ++r)
      if (text::utf8_chars(m.vocab_[r]).size() == 1) known.insert(m.vocab_[r]);
    for (const auto& [l, r] : merges) {
      if (!known.count(l) || !known.count(r)) fail(Errc::MalformedModel, "merge input missing: " + l + " " + r);
      if (m.rank(l + r) < 0) fail(Errc::MalformedModel, "merge output missing: " + l + r);
      known.insert(l + r);
      m.add_merge(l, r);
    }
    return m;
  }

  static SubwordModel load(const std::filesystem::path& path) { return parse(text::read_file(path)); }

  bool operator==(const SubwordModel& o) const {
    return vocab_ == o.vocab_ && merges_ == o.merges_ && alpha_ == o.alpha_;
  }

 private:
  friend class BpeTrainer;

  static std::uint64_t key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }

  int intern(const std::string& symbol) {
    auto [it, inserted] = rank_of_.emplace(symbol, static_cast<int>(vocab_.size()));
    if (inserted) vocab_.push_back(symbol);
    return it->second;
  }

  void add_merge(const std::string& l, const std::string& r) {
    const int out = intern(l + r);
    merge_rank_.emplace(key(rank(l), rank(r)), static_cast<int>(merges_.size()));
    merge_output_.push_back(out);
    merges_.emplace_back(l, r);
  }

  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> rank_of_;
  std::vector<std::pair<std::string, std::string>> merges_;
  std::unordered_map<std::uint64_t, int> merge_rank_;
  std::vector<int> merge_output_;
  std::string alpha_ = "na";
};

// ---------------------------------------------------------------------------
// Training

/// Incremental BPE trainer. Pair statistics count every adjacent position
/// inside every word occurrence (the word-initial marker is not part of a
/// symbol, so "▁a b" and "a b" are the same pair). Each step merges the
/// most frequent pair, ties going to the lexicographically smallest
/// (left, right) by bytes, until the vocabulary is full or no pair occurs
/// twice.
class BpeTrainer {
 public:
  static SubwordModel train(std::span<const std::string> lines, std::size_t vocab_size, std::string alpha_label) {
    BpeTrainer t;
    t.collect(lines);
    if (t.words_.empty()) fail(Errc::EmptyStream, "no words in training stream");
    if (vocab_size <= t.model_.vocab_.size())
      fail(Errc::VocabTooSmall, "vocab_size " + std::to_string(vocab_size) + " leaves no room beyond " +
                                    std::to_string(t.model_.vocab_.size() - 1) + " alphabet pieces + unk");
    t.model_.alpha_ = std::move(alpha_label);
    t.run(vocab_size);
    return std::move(t.model_);
  }

 private:
  struct Word {
    std::vector<int> syms;
    std::size_t count = 0;
  };

  struct Rank {
    std::size_t count;
    std::uint64_t key;
  };
  struct RankLess {
    const std::vector<std::string>* vocab;
    bool operator()(const Rank& a, const Rank& b) const {
      if (a.count != b.count) return a.count > b.count;
      const auto& v = *vocab;
      if (int c = v[a.key >> 32].compare(v[b.key >> 32]); c != 0) return c < 0;
      if (int c = v[a.key & 0xffffffffu].compare(v[b.key & 0xffffffffu]); c != 0) return c < 0;
      return a.key < b.key;
    }
  };

  void collect(std::span<const std::string> lines) {
    std::map<std::string, std::size_t> freq;
    for (const auto& line : lines)
      for (auto& w : text::split_whitespace(line)) ++freq[w];
    std::set<std::string> alphabet;
    for (const auto& [w, n] : freq)
      for (auto& ch : text::utf8_chars(w))
        if (ch != kBoundaryMarker) alphabet.insert(ch);
    model_.intern(std::string(kUnkPiece));
    for (const auto& ch : alphabet) model_.intern(ch);
    for (const auto& [w, n] : freq) {
      Word word;
      word.count = n;
      for (auto& ch : text::utf8_chars(w)) word.syms.push_back(ch == kBoundaryMarker ? 0 : model_.rank(ch));
      words_.push_back(std::move(word));
    }
  }

  void add_word_pairs(std::size_t wi, long sign) {
    const auto& w = words_[wi];
    for (std::size_t i = 0; i + 1 < w.syms.size(); ++i) {
      if (w.syms[i] == 0 || w.syms[i + 1] == 0) continue;
      const auto k = SubwordModel::key(w.syms[i], w.syms[i + 1]);
      auto& c = counts_[k];
      unrank(k, c);
      c = static_cast<std::size_t>(static_cast<long>(c) + sign * static_cast<long>(w.count));
      rerank(k, c);
      if (sign > 0) where_[k].insert(wi);
    }
  }

  void unrank(std::uint64_t k, std::size_t c) {
    if (c == 0 || banned_.count(k)) return;
    ranked_.erase(make_rank(k, c));
  }
  void rerank(std::uint64_t k, std::size_t c) {
    if (c == 0 || banned_.count(k)) return;
    ranked_.insert(make_rank(k, c));
  }
  static Rank make_rank(std::uint64_t k, std::size_t c) { return {c, k}; }

  void run(std::size_t vocab_size) {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) add_word_pairs(wi, +1);
    while (model_.vocab_.size() < vocab_size && !ranked_.empty()) {
      const Rank best = *ranked_.begin();
      if (best.count < 2) break;
      const std::string left = model_.vocab_[best.key >> 32], right = model_.vocab_[best.key & 0xffffffffu];
      if (left + right == kUnkPiece) {
        ranked_.erase(ranked_.begin());
        banned_.insert(best.key);
        continue;
      }
      model_.add_merge(left, right);
      const int a = model_.rank(left), b = model_.rank(right), merged = model_.rank(left + right);
      const auto affected = where_[best.key];
      for (auto wi : affected) {
        auto& w = words_[wi];
        bool present = false;
        for (std::size_t i = 0; i + 1 < w.syms.size(); ++i)
          if (w.syms[i] == a && w.syms[i + 1] == b) present = true;
        if (!present) continue;
        add_word_pairs(wi, -1);
        std::vector<int> next;
        next.reserve(w.syms.size());
        for (std::size_t i = 0; i < w.syms.size();) {
          if (i + 1 < w.syms.size() && w.syms[i] == a && w.syms[i + 1] == b) {
            next.push_back(merged);
            i += 2;
          } else {
            next.push_back(w.syms[i++]);
          }
        }
        w.syms = std::move(next);
        add_word_pairs(wi, +1);
      }
    }
  }

  SubwordModel model_;
  std::vector<Word> words_;
  std::unordered_map<std::uint64_t, std::size_t> counts_;
  std::unordered_map<std::uint64_t, std::set<std::size_t>> where_;
  std::set<Rank, RankLess> ranked_{RankLess{&model_.vocab_}};
  std::unordered_set<std::uint64_t> banned_;
};

/// Train a BPE model on a line stream. `vocab_size` counts the unknown
/// piece, the alphabet and every distinct merge output.
inline SubwordModel train_bpe(std::span<const std::string> lines, std::size_t vocab_size,
                              std::string alpha_label = "na") {
  return BpeTrainer::train(lines, vocab_size, std::move(alpha_label));
}

inline std::string format_alpha(double alpha) {
  std::ostringstream os;
  os << alpha;
  return os.str();
}

}  // namespace afromt

#endif  // AFROMT_SUBWORD_HPP
