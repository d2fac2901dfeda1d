#ifndef AFROMT_METRICS_HPP
#define AFROMT_METRICS_HPP

// Corpus-level BLEU, subword BLEU and chrF++ with reproducibility
// signatures. All scoring functions are pure; statistics are integer
// counts reduced over segments, so results do not depend on segment order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "afromt/error.hpp"
#include "afromt/subword.hpp"
#include "afromt/text.hpp"
#include "afromt/version.hpp"

namespace afromt {

// ---------------------------------------------------------------------------
// n-gram counting

template <class Token>
using NgramCounts = std::map<std::vector<Token>, std::size_t>;

/// Sliding-window n-gram multisets; element n-1 holds the order-n counts.
template <class Token>
std::vector<NgramCounts<Token>> extract_ngrams(std::span<const Token> tokens, int max_order) {
  if (max_order < 1) fail(Errc::BadConfig, "max_order must be >= 1");
  std::vector<NgramCounts<Token>> out(static_cast<std::size_t>(max_order));
  for (int n = 1; n <= max_order; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (tokens.size() < un) continue;
    for (std::size_t i = 0; i + un <= tokens.size(); ++i)
      ++out[un - 1][std::vector<Token>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                       tokens.begin() + static_cast<std::ptrdiff_t>(i + un))];
  }
  return out;
}

template <class Token>
std::vector<NgramCounts<Token>> extract_ngrams(const std::vector<Token>& tokens, int max_order) {
  return extract_ngrams(std::span<const Token>(tokens), max_order);
}

// ---------------------------------------------------------------------------
// Tokenization for plain BLEU

namespace detail {

inline bool is_ascii_punct(unsigned char c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
}

inline std::uint32_t decode_code_point(std::string_view ch) {
  const auto b = [&](std::size_t i) { return static_cast<std::uint32_t>(static_cast<unsigned char>(ch[i])); };
  switch (ch.size()) {
    case 1: return b(0);
    case 2: return ((b(0) & 0x1F) << 6) | (b(1) & 0x3F);
    case 3: return ((b(0) & 0x0F) << 12) | ((b(1) & 0x3F) << 6) | (b(2) & 0x3F);
    case 4: return ((b(0) & 0x07) << 18) | ((b(1) & 0x3F) << 12) | ((b(2) & 0x3F) << 6) | (b(3) & 0x3F);
  }
  return 0;
}

}  // namespace detail

/// Punctuation for the "whitespace-punct" tokenizer: ASCII punctuation,
/// Latin-1 and general punctuation blocks, CJK punctuation, and the Arabic
/// and Ethiopic sentence marks.
inline bool is_punctuation(std::string_view ch) {
  if (ch.size() == 1) return detail::is_ascii_punct(static_cast<unsigned char>(ch[0]));
  const auto cp = detail::decode_code_point(ch);
  if (cp == 0x00A1 || cp == 0x00A7 || cp == 0x00AB || cp == 0x00B6 || cp == 0x00B7 || cp == 0x00BB ||
      cp == 0x00BF)
    return true;
  if (cp >= 0x2010 && cp <= 0x2027) return true;
  if (cp >= 0x2030 && cp <= 0x205E) return true;
  if (cp >= 0x3001 && cp <= 0x3003) return true;
  if (cp == 0x060C || cp == 0x061B || cp == 0x061F || cp == 0x06D4) return true;
  if (cp >= 0x1361 && cp <= 0x1368) return true;
  return false;
}

/// Split on whitespace, then cut every punctuation character out as its
/// own token. `lowercase` folds ASCII letters only.
inline std::vector<std::string> tokenize_whitespace_punct(std::string_view text, bool lowercase = false) {
  std::vector<std::string> out;
  for (auto& word : text::split_whitespace(text)) {
    std::string cur;
    for (auto& ch : text::utf8_chars(word)) {
      if (is_punctuation(ch)) {
        if (!cur.empty()) out.push_back(std::move(cur));
        cur.clear();
        out.push_back(ch);
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
  }
  if (lowercase)
    for (auto& t : out)
      for (auto& c : t)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

// ---------------------------------------------------------------------------
// BLEU

enum class Smoothing {
  None,         // any zero-match order makes the score 0
  Floor,        // zero-match orders use floor_k matches
  Exponential,  // k-th zero-match order uses 1 / (2^k * total_n)
};

enum class BleuTokenization { WhitespacePunct, Subword };

struct BleuConfig {
  int max_ngram_order = 4;
  Smoothing smoothing = Smoothing::Exponential;
  double floor_k = 0.1;
  BleuTokenization tokenization = BleuTokenization::WhitespacePunct;
  bool lowercase = false;

  void validate() const {
    if (max_ngram_order < 1) fail(Errc::BadConfig, "max_ngram_order must be >= 1");
    if (smoothing == Smoothing::Floor && !(floor_k > 0.0)) fail(Errc::BadConfig, "floor k must be > 0");
  }
};

struct BleuScore {
  double score = 0.0;
  std::vector<double> precisions;           // unsmoothed m_n / t_n (0 when t_n = 0)
  std::vector<double> smoothed_precisions;  // values entering the geometric mean (1 for skipped orders)
  std::size_t effective_order = 0;          // orders with hypothesis n-grams
  std::vector<std::size_t> matches;
  std::vector<std::size_t> totals;
  double brevity_penalty = 0.0;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  std::string signature;
};

/// Sufficient statistics of a segment or a whole corpus.
struct BleuStats {
  std::vector<std::size_t> matches;
  std::vector<std::size_t> totals;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  explicit BleuStats(int order = 4)
      : matches(static_cast<std::size_t>(order), 0), totals(static_cast<std::size_t>(order), 0) {}

  BleuStats& operator+=(const BleuStats& o) {
    for (std::size_t i = 0; i < matches.size(); ++i) {
      matches[i] += o.matches[i];
      totals[i] += o.totals[i];
    }
    hyp_len += o.hyp_len;
    ref_len += o.ref_len;
    return *this;
  }
};

/// Clipped n-gram statistics of one tokenized segment pair.
inline BleuStats segment_bleu_stats(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                                    int order) {
  BleuStats st(order);
  st.hyp_len = hyp.size();
  st.ref_len = ref.size();
  const auto h = extract_ngrams(hyp, order);
  const auto r = extract_ngrams(ref, order);
  for (std::size_t n = 0; n < h.size(); ++n) {
    for (const auto& [gram, count] : h[n]) {
      st.totals[n] += count;
      auto it = r[n].find(gram);
      if (it != r[n].end()) st.matches[n] += std::min(count, it->second);
    }
  }
  return st;
}

/// BP = 1 when c >= r, exp(1 - r/c) when 0 < c < r, and 0 for an empty
/// hypothesis side.
inline double brevity_penalty(std::size_t hyp_len, std::size_t ref_len) {
  if (hyp_len == 0) return 0.0;
  if (hyp_len >= ref_len) return 1.0;
  return std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
}

inline std::string smoothing_tag(const BleuConfig& cfg) {
  switch (cfg.smoothing) {
    case Smoothing::None: return "none";
    case Smoothing::Exponential: return "exp";
    case Smoothing::Floor: {
      std::ostringstream os;
      os << "floor-" << cfg.floor_k;
      return os.str();
    }
  }
  return "exp";
}

/// Canonical fingerprint of a BLEU configuration, e.g.
/// "bleu|o:4|sm:exp|tok:wp|v:1.0.0". Subword BLEU names the model
/// checksum in place of the tokenizer.
inline std::string bleu_signature(const BleuConfig& cfg, const SubwordModel* model = nullptr) {
  std::ostringstream os;
  const bool sub = cfg.tokenization == BleuTokenization::Subword || model != nullptr;
  os << (sub ? "spbleu" : "bleu") << "|o:" << cfg.max_ngram_order << "|sm:" << smoothing_tag(cfg);
  if (sub) os << "|tok:spm-" << (model ? model->checksum() : std::string("none"));
  else os << "|tok:wp";
  if (cfg.lowercase) os << "|lc";
  os << "|v:" << kVersion;
  return os.str();
}

/// Score from aggregated statistics.
inline BleuScore bleu_from_stats(const BleuStats& st, const BleuConfig& cfg) {
  BleuScore s;
  const auto order = static_cast<std::size_t>(cfg.max_ngram_order);
  s.matches = st.matches;
  s.totals = st.totals;
  s.hyp_len = st.hyp_len;
  s.ref_len = st.ref_len;
  s.brevity_penalty = brevity_penalty(st.hyp_len, st.ref_len);
  s.precisions.resize(order);
  s.smoothed_precisions.resize(order);
  double zero_run = 1.0;
  bool any_zero = false;
  for (std::size_t n = 0; n < order; ++n) {
    const double m = static_cast<double>(st.matches[n]);
    const double t = static_cast<double>(st.totals[n]);
    s.precisions[n] = t > 0 ? m / t : 0.0;
    // no candidate n-grams of this order anywhere: precision is undefined,
    // so the order drops out of the mean instead of being smoothed
    if (st.totals[n] == 0) {
      s.smoothed_precisions[n] = 1.0;
      continue;
    }
    ++s.effective_order;
    if (st.matches[n] > 0) {
      s.smoothed_precisions[n] = m / t;
      continue;
    }
    any_zero = true;
    switch (cfg.smoothing) {
      case Smoothing::None: s.smoothed_precisions[n] = 0.0; break;
      case Smoothing::Floor: s.smoothed_precisions[n] = cfg.floor_k / t; break;
      case Smoothing::Exponential:
        zero_run *= 2.0;
        s.smoothed_precisions[n] = 1.0 / (zero_run * t);
        break;
    }
  }
  if (s.effective_order == 0 || (any_zero && cfg.smoothing == Smoothing::None)) {
    s.score = 0.0;
    return s;
  }
  double log_sum = 0.0;
  for (auto p : s.smoothed_precisions) log_sum += std::log(p);
  s.score = 100.0 * s.brevity_penalty * std::exp(log_sum / static_cast<double>(s.effective_order));
  s.score = std::clamp(s.score, 0.0, 100.0);
  return s;
}

inline void check_corpus_sizes(std::size_t hyps, std::size_t refs) {
  if (hyps != refs)
    fail(Errc::LengthMismatch, std::to_string(hyps) + " hypotheses vs " + std::to_string(refs) + " references");
  if (hyps == 0) fail(Errc::EmptyCorpus, "no segments to score");
}

/// BLEU over already tokenized segments.
inline BleuScore corpus_bleu_tokens(std::span<const std::vector<std::string>> hyps,
                                    std::span<const std::vector<std::string>> refs, const BleuConfig& cfg) {
  cfg.validate();
  check_corpus_sizes(hyps.size(), refs.size());
  BleuStats total(cfg.max_ngram_order);
  for (std::size_t i = 0; i < hyps.size(); ++i) total += segment_bleu_stats(hyps[i], refs[i], cfg.max_ngram_order);
  return bleu_from_stats(total, cfg);
}

/// Corpus BLEU with the configured pre-tokenization (one reference per
/// hypothesis).
inline BleuScore corpus_bleu(std::span<const std::string> hyps, std::span<const std::string> refs,
                             const BleuConfig& cfg = {}) {
  cfg.validate();
  check_corpus_sizes(hyps.size(), refs.size());
  if (cfg.tokenization == BleuTokenization::Subword)
    fail(Errc::ModelMissing, "subword tokenization needs a model; use sp_bleu");
  std::vector<std::vector<std::string>> h, r;
  for (const auto& s : hyps) h.push_back(tokenize_whitespace_punct(s, cfg.lowercase));
  for (const auto& s : refs) r.push_back(tokenize_whitespace_punct(s, cfg.lowercase));
  auto score = corpus_bleu_tokens(h, r, cfg);
  score.signature = bleu_signature(cfg);
  return score;
}

/// Subword BLEU: both sides are encoded with `model`, then scored as
/// token sequences with no other pre-tokenization.
inline BleuScore sp_bleu(std::span<const std::string> hyps, std::span<const std::string> refs,
                         const SubwordModel& model, BleuConfig cfg = {}) {
  cfg.tokenization = BleuTokenization::Subword;
  cfg.validate();
  check_corpus_sizes(hyps.size(), refs.size());
  if (model.size() == 0) fail(Errc::ModelMissing, "empty subword model");
  auto fold = [&](const std::string& s) {
    if (!cfg.lowercase) return s;
    std::string t = s;
    for (auto& c : t)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return t;
  };
  std::vector<std::vector<std::string>> h, r;
  for (const auto& s : hyps) h.push_back(model.encode(fold(s)));
  for (const auto& s : refs) r.push_back(model.encode(fold(s)));
  auto score = corpus_bleu_tokens(h, r, cfg);
  score.signature = bleu_signature(cfg, &model);
  return score;
}

// ---------------------------------------------------------------------------
// chrF++

struct ChrfConfig {
  int char_order = 6;
  int word_order = 2;
  double beta = 2.0;

  void validate() const {
    if (char_order < 1 || word_order < 0) fail(Errc::BadConfig, "chrF orders must be >= 1 (word order >= 0)");
    if (!(beta > 0.0)) fail(Errc::BadConfig, "beta must be > 0");
  }
};

struct ChrfOrderStats {
  bool word = false;  // false: character n-grams
  int n = 1;
  std::size_t hyp_count = 0;
  std::size_t ref_count = 0;
  std::size_t matches = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

struct ChrfScore {
  double score = 0.0;
  std::vector<ChrfOrderStats> orders;  // character orders first, then word orders
  std::size_t effective_orders = 0;
  std::string signature;
};

inline std::string chrf_signature(const ChrfConfig& cfg) {
  std::ostringstream os;
  os << (cfg.word_order > 0 ? "chrf++" : "chrf") << "|c:" << cfg.char_order << "|w:" << cfg.word_order
     << "|b:" << cfg.beta << "|v:" << kVersion;
  return os.str();
}

inline std::vector<std::string> chrf_characters(std::string_view text) {
  std::vector<std::string> out;
  for (auto& ch : text::utf8_chars(text))
    if (!(ch.size() == 1 && text::is_space(ch[0]))) out.push_back(std::move(ch));
  return out;
}

/// Adds one segment pair's per-order counts into `orders`.
inline void accumulate_chrf(std::vector<ChrfOrderStats>& orders, std::string_view hyp, std::string_view ref,
                            const ChrfConfig& cfg) {
  auto add = [&](std::size_t base, const auto& h, const auto& r, int max_order) {
    const auto hg = extract_ngrams(h, max_order);
    const auto rg = extract_ngrams(r, max_order);
    for (std::size_t n = 0; n < hg.size(); ++n) {
      auto& o = orders[base + n];
      for (const auto& [g, c] : hg[n]) {
        o.hyp_count += c;
        if (auto it = rg[n].find(g); it != rg[n].end()) o.matches += std::min(c, it->second);
      }
      for (const auto& [g, c] : rg[n]) o.ref_count += c;
    }
  };
  add(0, chrf_characters(hyp), chrf_characters(ref), cfg.char_order);
  if (cfg.word_order > 0)
    add(static_cast<std::size_t>(cfg.char_order), text::split_whitespace(hyp), text::split_whitespace(ref),
        cfg.word_order);
}

/// Per order: P = matches / hyp n-grams, R = matches / ref n-grams,
/// F_beta = (1 + b^2) P R / (b^2 P + R). The score is the mean F over every
/// order that has n-grams on at least one side, times 100.
inline ChrfScore chrf_from_orders(std::vector<ChrfOrderStats> orders, const ChrfConfig& cfg) {
  ChrfScore s;
  const double b2 = cfg.beta * cfg.beta;
  double sum = 0.0;
  for (auto& o : orders) {
    o.precision = o.hyp_count ? static_cast<double>(o.matches) / static_cast<double>(o.hyp_count) : 0.0;
    o.recall = o.ref_count ? static_cast<double>(o.matches) / static_cast<double>(o.ref_count) : 0.0;
    const double denom = b2 * o.precision + o.recall;
    o.f = denom > 0 ? (1.0 + b2) * o.precision * o.recall / denom : 0.0;
    if (o.hyp_count || o.ref_count) {
      ++s.effective_orders;
      sum += o.f;
    }
  }
  s.score = s.effective_orders ? std::clamp(100.0 * sum / static_cast<double>(s.effective_orders), 0.0, 100.0) : 0.0;
  s.orders = std::move(orders);
  s.signature = chrf_signature(cfg);
  return s;
}

inline std::vector<ChrfOrderStats> empty_chrf_orders(const ChrfConfig& cfg) {
  std::vector<ChrfOrderStats> orders;
  for (int n = 1; n <= cfg.char_order; ++n) orders.push_back({false, n});
  for (int n = 1; n <= cfg.word_order; ++n) orders.push_back({true, n});
  return orders;
}

inline ChrfScore chrf_pp(std::span<const std::string> hyps, std::span<const std::string> refs,
                         const ChrfConfig& cfg = {}) {
  cfg.validate();
  check_corpus_sizes(hyps.size(), refs.size());
  auto orders = empty_chrf_orders(cfg);
  for (std::size_t i = 0; i < hyps.size(); ++i) accumulate_chrf(orders, hyps[i], refs[i], cfg);
  return chrf_from_orders(std::move(orders), cfg);
}

}  // namespace afromt

#endif  // AFROMT_METRICS_HPP
