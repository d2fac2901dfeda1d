#ifndef AFROMT_FIXTURES_HPP
#define AFROMT_FIXTURES_HPP

// Synthetic corpora reproducing a table of per-direction split sizes. Each
// row becomes a one-way gold corpus whose official splits have exactly the
// listed sizes, so building from the generated manifest yields those counts.

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "afromt/benchmark.hpp"

namespace afromt {

struct CountRow {
  DirectedPair pair;
  SplitCaps counts;
};

/// Rows of "direction<TAB>train<TAB>dev<TAB>test"; '#' lines and a header
/// starting with "direction" are skipped.
inline std::vector<CountRow> parse_count_table(std::string_view content) {
  std::vector<CountRow> rows;
  for (const auto& raw : text::split(content, '\n')) {
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto f = text::split(line, '\t');
    if (f[0] == "direction") continue;
    if (f.size() != 4) fail(Errc::MalformedManifest, "count table: bad row '" + line + "'");
    rows.push_back({parse_pair_code(f[0]),
                    {detail::parse_count(f[1], f[0]), detail::parse_count(f[2], f[0]),
                     detail::parse_count(f[3], f[0])}});
  }
  return rows;
}

/// Write `dir/corpora/{pair}.{split}` TSV files and `dir/manifest.tsv`.
/// Rows whose counts exceed `default_caps` get a per-corpus caps override
/// so that sampling keeps every example. Returns the manifest path.
inline std::filesystem::path write_count_fixture(const std::vector<CountRow>& rows, const std::filesystem::path& dir,
                                                 const SplitCaps& default_caps = {5000, 50, 200}) {
  std::filesystem::create_directories(dir / "corpora");
  std::string manifest = "source_name\tpath\tformat\tsrc\ttgt\ttier\thas_official_splits\tdirections\tcaps\n";
  for (const auto& row : rows) {
    const auto code = row.pair.code();
    std::size_t line = 0;
    for (auto s : kSplits) {
      std::string content;
      for (std::size_t i = 0; i < row.counts[s]; ++i) {
        ++line;
        content += row.pair.src + " sentence " + std::to_string(line) + '\t' + row.pair.tgt + " sentence " +
                   std::to_string(line) + '\n';
      }
      text::write_file(dir / "corpora" / (code + "." + std::string(split_name(s))), content);
    }
    std::string caps = "-";
    if (row.counts.train > default_caps.train || row.counts.dev > default_caps.dev ||
        row.counts.test > default_caps.test) {
      caps = std::to_string(std::max(row.counts.train, default_caps.train)) + "," +
             std::to_string(std::max(row.counts.dev, default_caps.dev)) + "," +
             std::to_string(std::max(row.counts.test, default_caps.test));
    }
    manifest += code + "\tcorpora/" + code + "\ttsv\t" + row.pair.src + "\t" + row.pair.tgt + "\tgold\t1\tforward\t" +
                caps + "\n";
  }
  const auto path = dir / "manifest.tsv";
  text::write_file(path, manifest);
  return path;
}

}  // namespace afromt

#endif  // AFROMT_FIXTURES_HPP
