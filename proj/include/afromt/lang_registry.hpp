#ifndef AFROMT_LANG_REGISTRY_HPP
#define AFROMT_LANG_REGISTRY_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "afromt/error.hpp"
#include "afromt/registry_data.hpp"
#include "afromt/text.hpp"

namespace afromt {

/// Name of the supported-language set used by category reports unless the
/// caller picks another one.
inline constexpr std::string_view kDefaultSupportedSet = "spbleu101_supported";

/// Environment variable naming a registry directory (languages.tsv + sets.tsv)
/// that replaces the built-in registry in the CLI.
inline constexpr std::string_view kRegistryEnv = "AFROMT_REGISTRY";

struct LanguageInfo {
  std::string code;
  std::string name;
  std::string family;
  std::string script;
  bool is_african = false;

  bool operator==(const LanguageInfo&) const = default;
};

inline bool is_wellformed_code(std::string_view code) {
  return code.size() == 3 &&
         std::all_of(code.begin(), code.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

/// An ordered language pair (translation direction).
struct DirectedPair {
  std::string src;
  std::string tgt;

  std::string code() const { return src + "-" + tgt; }
  DirectedPair reversed() const { return {tgt, src}; }

  auto operator<=>(const DirectedPair&) const = default;
};

inline DirectedPair parse_pair_code(std::string_view text) {
  if (text.size() != 7 || text[3] != '-' || !is_wellformed_code(text.substr(0, 3)) ||
      !is_wellformed_code(text.substr(4, 3)))
    fail(Errc::MalformedPair, "expected xxx-yyy, got '" + std::string(text) + "'");
  DirectedPair p{std::string(text.substr(0, 3)), std::string(text.substr(4, 3))};
  if (p.src == p.tgt) fail(Errc::SameLanguage, p.code());
  return p;
}

/// Immutable after construction; concurrent reads are safe.
class LanguageRegistry {
 public:
  LanguageRegistry() = default;

  /// Parse the two registry files. Lines starting with '#' and blank lines
  /// are ignored.
  static LanguageRegistry parse(std::string_view languages_tsv, std::string_view sets_tsv) {
    LanguageRegistry reg;
    std::size_t lineno = 0;
    for (const auto& raw : text::split(languages_tsv, '\n')) {
      ++lineno;
      std::string_view line = raw;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (text::trim(line).empty() || line.front() == '#') continue;
      auto f = text::split(line, '\t');
      const std::string where = "languages line " + std::to_string(lineno);
      if (f.size() != 5) fail(Errc::MalformedRegistry, where + ": expected 5 fields");
      LanguageInfo info{f[0], f[1], f[2], f[3], false};
      if (!is_wellformed_code(info.code)) fail(Errc::MalformedRegistry, where + ": bad code '" + info.code + "'");
      if (info.name.empty()) fail(Errc::MalformedRegistry, where + ": empty name");
      if (f[4] == "1" || f[4] == "true") info.is_african = true;
      else if (f[4] == "0" || f[4] == "false") info.is_african = false;
      else fail(Errc::MalformedRegistry, where + ": is_african must be 0/1");
      if (!reg.entries_.emplace(info.code, info).second)
        fail(Errc::MalformedRegistry, where + ": duplicate code " + info.code);
    }
    lineno = 0;
    for (const auto& raw : text::split(sets_tsv, '\n')) {
      ++lineno;
      std::string_view line = raw;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (text::trim(line).empty() || line.front() == '#') continue;
      auto f = text::split(line, '\t');
      const std::string where = "sets line " + std::to_string(lineno);
      if (f.size() != 2 || f[0].empty()) fail(Errc::MalformedRegistry, where + ": expected name<TAB>codes");
      std::set<std::string> members;
      for (auto& c : text::split(f[1], ',')) {
        auto code = std::string(text::trim(c));
        if (code.empty()) continue;
        if (!reg.entries_.count(code))
          fail(Errc::MalformedRegistry, where + ": set " + f[0] + " references unknown code " + code);
        members.insert(code);
      }
      if (!reg.sets_.emplace(f[0], std::move(members)).second)
        fail(Errc::MalformedRegistry, where + ": duplicate set " + f[0]);
    }
    return reg;
  }

  static LanguageRegistry load(const std::filesystem::path& languages, const std::filesystem::path& sets) {
    return parse(text::read_file(languages), text::read_file(sets));
  }

  /// Load `dir/languages.tsv` and `dir/sets.tsv`.
  static LanguageRegistry load_dir(const std::filesystem::path& dir) {
    return load(dir / "languages.tsv", dir / "sets.tsv");
  }

  /// The bundled 46-language registry.
  static const LanguageRegistry& builtin() {
    static const LanguageRegistry reg = parse(registry_data::kLanguagesTsv, registry_data::kSetsTsv);
    return reg;
  }

  /// Registry named by $AFROMT_REGISTRY, else the built-in one.
  static LanguageRegistry from_environment() {
    if (const char* dir = std::getenv(std::string(kRegistryEnv).c_str()); dir && *dir) return load_dir(dir);
    return builtin();
  }

  const LanguageInfo* find(std::string_view code) const {
    auto it = entries_.find(std::string(code));
    return it == entries_.end() ? nullptr : &it->second;
  }

  const LanguageInfo& at(std::string_view code) const {
    if (!is_wellformed_code(code)) fail(Errc::MalformedCode, "'" + std::string(code) + "'");
    const auto* info = find(code);
    if (!info) fail(Errc::UnknownCode, std::string(code));
    return *info;
  }

  bool has_set(std::string_view name) const { return sets_.count(std::string(name)) != 0; }

  const std::set<std::string>& set(std::string_view name) const {
    auto it = sets_.find(std::string(name));
    if (it == sets_.end()) fail(Errc::BadConfig, "unknown language set " + std::string(name));
    return it->second;
  }

  bool in_set(std::string_view set_name, std::string_view code) const {
    return set(set_name).count(std::string(code)) != 0;
  }

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, LanguageInfo>& entries() const { return entries_; }
  const std::map<std::string, std::set<std::string>>& sets() const { return sets_; }

 private:
  std::map<std::string, LanguageInfo> entries_;
  std::map<std::string, std::set<std::string>> sets_;
};

inline LanguageInfo validate_language_code(std::string_view code, const LanguageRegistry& registry) {
  return registry.at(code);
}

// Category labels for per-category aggregation. The three anchors are the
// non-African languages every pair is reported against.

inline constexpr std::array<std::string_view, 3> kAnchors = {"ara", "eng", "fra"};

namespace category {

inline std::string both_ways(std::string_view anchor_name) { return std::string(anchor_name) + "↔XX"; }
inline std::string into(std::string_view anchor_name) { return "XX→" + std::string(anchor_name); }
inline std::string from(std::string_view anchor_name) { return std::string(anchor_name) + "→XX"; }
inline std::string from_supported(std::string_view anchor_name, bool supported) {
  return from(anchor_name) + (supported ? " (supported)" : " (not supported)");
}
inline const std::string kAfricanAfrican = "African↔African";
inline const std::string kTotalSupported = "Total supported languages";
inline const std::string kTotalUnsupported = "Total unsupported languages";

}  // namespace category

using CategoryLabels = std::set<std::string>;

/// Category labels of one direction. Labels form a set: a pair between two
/// anchors (ara->fra) carries labels of both anchors. The supported /
/// not-supported split applies when an anchor translates into an African
/// language; pass an empty set name to skip it.
inline CategoryLabels categorize_pair(const DirectedPair& pair, const LanguageRegistry& registry,
                                      std::string_view set_name = kDefaultSupportedSet) {
  const auto& src = registry.at(pair.src);
  const auto& tgt = registry.at(pair.tgt);
  CategoryLabels labels;
  for (auto anchor : kAnchors) {
    const auto* info = registry.find(anchor);
    if (!info) continue;
    if (src.code == anchor) {
      labels.insert(category::from(info->name));
      labels.insert(category::both_ways(info->name));
      if (tgt.is_african && !set_name.empty())
        labels.insert(category::from_supported(info->name, registry.in_set(set_name, tgt.code)));
    }
    if (tgt.code == anchor) {
      labels.insert(category::into(info->name));
      labels.insert(category::both_ways(info->name));
    }
  }
  if (src.is_african && tgt.is_african) labels.insert(category::kAfricanAfrican);
  return labels;
}

/// "Total supported/unsupported languages" membership: a direction with at
/// least one African side is supported iff every African side is in the set.
inline std::optional<std::string> supported_total_label(const DirectedPair& pair, const LanguageRegistry& registry,
                                                        std::string_view set_name = kDefaultSupportedSet) {
  const auto& src = registry.at(pair.src);
  const auto& tgt = registry.at(pair.tgt);
  if (!src.is_african && !tgt.is_african) return std::nullopt;
  bool supported = true;
  for (const auto* side : {&src, &tgt})
    if (side->is_african && !registry.in_set(set_name, side->code)) supported = false;
  return supported ? category::kTotalSupported : category::kTotalUnsupported;
}

}  // namespace afromt

#endif  // AFROMT_LANG_REGISTRY_HPP
