#include <algorithm>
#include <set>

#include "afromt/benchmark.hpp"
#include "afromt/fixtures.hpp"
#include "afromt/validate.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace afromt;

namespace {

const auto& reg() { return LanguageRegistry::builtin(); }

ParallelCorpus make_corpus(const std::string& src, const std::string& tgt, std::size_t n,
                           QualityTier tier = QualityTier::Gold, const std::string& name = "c") {
  ParallelCorpus c;
  c.pair = {src, tgt};
  c.tier = tier;
  c.source_name = name;
  for (std::size_t i = 1; i <= n; ++i)
    c.pairs.push_back({name + ":" + std::to_string(i), src + " text " + std::to_string(i),
                       tgt + " text " + std::to_string(i)});
  return c;
}

std::set<std::string> ids_of(const std::vector<Candidate>& v) {
  std::set<std::string> s;
  for (const auto& c : v) s.insert(c.provenance.id);
  return s;
}

}  // namespace

TEST(Builder, FilterByQuality) {
  std::vector<ParallelCorpus> cs;
  for (auto t : {QualityTier::Gold, QualityTier::Synthetic, QualityTier::Unknown, QualityTier::HumanEvaluated})
    cs.push_back(make_corpus("eng", "hau", 1, t, std::string(tier_name(t))));
  BuilderConfig cfg;
  auto kept = filter_by_quality(cs, cfg);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].tier, QualityTier::Gold);
  EXPECT_EQ(kept[1].tier, QualityTier::HumanEvaluated);

  cfg.allowed_tiers = {kAllTiers.begin(), kAllTiers.end()};
  EXPECT_EQ(filter_by_quality(cs, cfg).size(), 4u);

  std::vector<ParallelCorpus> synth{make_corpus("eng", "hau", 1, QualityTier::Synthetic)};
  EXPECT_TRUE(filter_by_quality(synth, BuilderConfig{}).empty());
}

TEST(Builder, SplitSizesFollowFloorRule) {
  BuilderConfig cfg;
  auto s100 = split_corpus(make_corpus("eng", "hau", 100), cfg);
  EXPECT_EQ(s100.train.size(), 80u);
  EXPECT_EQ(s100.dev.size(), 10u);
  EXPECT_EQ(s100.test.size(), 10u);
  auto s99 = split_corpus(make_corpus("eng", "hau", 99), cfg);
  EXPECT_EQ(s99.train.size(), 79u);
  EXPECT_EQ(s99.dev.size(), 9u);
  EXPECT_EQ(s99.test.size(), 11u);
  EXPECT_ERRC(split_corpus(make_corpus("eng", "hau", 0), cfg), Errc::EmptyCorpus);
}

TEST(Builder, SplitPartitionProperty) {
  BuilderConfig cfg;
  for (std::size_t n = 1; n <= 300; ++n) {
    cfg.seed = n * 31;
    auto c = make_corpus("eng", "hau", n);
    auto s = split_corpus(c, cfg);
    EXPECT_EQ(s.train.size(), n * 8 / 10) << n;
    EXPECT_EQ(s.dev.size(), n / 10) << n;
    std::set<std::string> all;
    for (auto sp : kSplits) {
      all.insert(s[sp].begin(), s[sp].end());
      // corpus order within each split
      EXPECT_TRUE(std::is_sorted(s[sp].begin(), s[sp].end(), [](const std::string& a, const std::string& b) {
        return std::stoul(a.substr(2)) < std::stoul(b.substr(2));
      }));
    }
    EXPECT_EQ(all.size(), n);
    EXPECT_EQ(split_corpus(c, cfg).test, s.test);
  }
}

TEST(Builder, OfficialSplitsReturnedVerbatim) {
  auto c = make_corpus("eng", "hau", 4);
  c.official_splits = SplitIds{{"c:3", "c:1"}, {"c:2"}, {"c:4"}};
  auto s = split_corpus(c, BuilderConfig{});
  EXPECT_EQ(s.train, (std::vector<std::string>{"c:3", "c:1"}));
  EXPECT_EQ(s.dev, (std::vector<std::string>{"c:2"}));
  EXPECT_EQ(s.test, (std::vector<std::string>{"c:4"}));
}

TEST(Builder, AbundantSplitIsHalvedDisjointly) {
  auto c = make_corpus("eng", "hau", 12000);
  SplitIds ids;
  for (const auto& p : c.pairs) ids.train.push_back(p.id);
  auto ex = expand_directions(c, BuilderConfig{}, ids, {5000, 50, 200});
  ASSERT_TRUE(ex.backward);
  auto f = ids_of(ex.forward.splits.train), b = ids_of(ex.backward->splits.train);
  EXPECT_EQ(f.size(), 6000u);
  EXPECT_EQ(b.size(), 6000u);
  for (const auto& id : f) EXPECT_FALSE(b.count(id));
  EXPECT_EQ(ex.backward->pair.code(), "hau-eng");
  EXPECT_TRUE(ex.backward->splits.train.front().provenance.reversed);
  EXPECT_EQ(ex.backward->splits.train.front().input.substr(0, 3), "hau");
}

TEST(Builder, ExactlyTwiceCapGivesCapEach) {
  auto c = make_corpus("eng", "hau", 400);
  SplitIds ids;
  for (const auto& p : c.pairs) ids.test.push_back(p.id);
  auto ex = expand_directions(c, BuilderConfig{}, ids, {5000, 50, 200});
  EXPECT_EQ(ex.forward.splits.test.size(), 200u);
  EXPECT_EQ(ex.backward->splits.test.size(), 200u);
  auto f = ids_of(ex.forward.splits.test), b = ids_of(ex.backward->splits.test);
  for (const auto& id : f) EXPECT_FALSE(b.count(id));
}

TEST(Builder, ScarceSplitIsSwapped) {
  auto c = make_corpus("eng", "hau", 120);
  SplitIds ids;
  for (const auto& p : c.pairs) ids.train.push_back(p.id);
  auto ex = expand_directions(c, BuilderConfig{}, ids, {5000, 50, 200});
  ASSERT_EQ(ex.forward.splits.train.size(), 120u);
  ASSERT_EQ(ex.backward->splits.train.size(), 120u);
  for (std::size_t i = 0; i < 120; ++i) {
    EXPECT_EQ(ex.forward.splits.train[i].input, ex.backward->splits.train[i].output);
    EXPECT_EQ(ex.forward.splits.train[i].output, ex.backward->splits.train[i].input);
  }
  EXPECT_EQ(direction_policy(120, 5000, 1000), DirectionPolicy::Swap);
  EXPECT_EQ(direction_policy(1000, 5000, 1000), DirectionPolicy::Disjoint);
  EXPECT_EQ(direction_policy(100, 50, 1000), DirectionPolicy::Disjoint);
}

TEST(Builder, OneWayCorpusFeedsOnlyForward) {
  auto c = make_corpus("eng", "hau", 50);
  c.both_directions = false;
  SplitIds ids;
  for (const auto& p : c.pairs) ids.train.push_back(p.id);
  auto ex = expand_directions(c, BuilderConfig{}, ids, {5000, 50, 200});
  EXPECT_FALSE(ex.backward);
  EXPECT_EQ(ex.forward.splits.train.size(), 50u);
}

TEST(Builder, SampleSplit) {
  std::vector<int> v(8000);
  for (int i = 0; i < 8000; ++i) v[i] = i;
  auto s = sample_split(v, 5000, 42);
  EXPECT_EQ(s.size(), 5000u);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_EQ(std::set<int>(s.begin(), s.end()).size(), 5000u);
  EXPECT_EQ(sample_split(v, 5000, 42), s);
  EXPECT_NE(sample_split(v, 5000, 43), s);

  std::vector<int> w(146);
  EXPECT_EQ(sample_split(w, 200, 1).size(), 146u);
  EXPECT_EQ(sample_split(w, 146, 1), w);
}

TEST(Builder, SampleSplitIsUniform) {
  // each of 10 items kept with probability 3/10
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<int> hits(10);
  const int trials = 20000;
  for (int t = 0; t < trials; ++t)
    for (int x : sample_split(v, 3, static_cast<std::uint64_t>(t))) ++hits[x];
  const double expect = trials * 0.3, sd = std::sqrt(trials * 0.3 * 0.7);
  for (int h : hits) EXPECT_NEAR(h, expect, 4.5 * sd);
}

TEST(Builder, RenderInstruction) {
  EXPECT_EQ(render_instruction(reg().at("ach")),
            "Translate the following text to Acholi language. Return only the translated sentence only. Do not "
            "repeat the instruction.");
  EXPECT_EQ(render_instruction(reg().at("lug")),
            "Translate the following text to Luganda language. Return only the translated sentence only. Do not "
            "repeat the instruction.");
  EXPECT_EQ(render_instruction(reg().at("teo")),
            "Translate the following text to Ateso language. Return only the translated sentence only. Do not "
            "repeat the instruction.");
}

TEST(Builder, AbundantPairYieldsCappedDirections) {
  std::vector<ParallelCorpus> cs{make_corpus("eng", "afr", 60000)};
  auto bench = build_benchmark(cs, reg(), BuilderConfig{});
  ASSERT_EQ(bench.directions.size(), 2u);
  for (const auto& d : bench.directions) {
    EXPECT_EQ(d.splits.train.size(), 5000u);
    EXPECT_EQ(d.splits.dev.size(), 50u);
    EXPECT_EQ(d.splits.test.size(), 200u);
    for (auto s : kSplits)
      for (const auto& e : d.splits[s]) {
        EXPECT_EQ(e.record.langcode, d.pair.code());
        EXPECT_EQ(e.record.instruction, render_instruction(reg().at(d.pair.tgt)));
      }
  }
  EXPECT_EQ(bench.stats.n_directions, 2u);
  EXPECT_EQ(bench.stats.n_languages, 2u);
  EXPECT_EQ(bench.stats.totals, (SplitCaps{10000, 100, 400}));
  EXPECT_TRUE(validate_benchmark(bench, reg()).ok());
}

TEST(Builder, StatisticsOfSmallBenchmark) {
  BenchmarkDataset b;
  DirectedPairDataset d;
  d.pair = {"eng", "hau"};
  for (auto [s, n] : {std::pair{Split::Train, 10}, {Split::Dev, 2}, {Split::Test, 3}})
    for (int i = 0; i < n; ++i) d.splits[s].push_back({{"eng-hau", "i", "x", "y"}, {}});
  b.directions.push_back(d);
  auto st = compute_statistics(b);
  EXPECT_EQ(st.totals, (SplitCaps{10, 2, 3}));
  EXPECT_EQ(st.n_directions, 1u);
  EXPECT_EQ(st.n_languages, 2u);
  EXPECT_EQ(st.total(), 15u);
}

TEST(Builder, TableRowViaFixture) {
  oracle::TempDir dir("fixture");
  auto rows = parse_count_table("direction\ttrain\tdev\ttest\naar-amh\t1166\t50\t145\n");
  auto manifest = write_count_fixture(rows, dir.path);
  auto bench = build_benchmark(load_manifest(manifest), reg(), BuilderConfig{});
  ASSERT_EQ(bench.directions.size(), 1u);
  EXPECT_EQ(bench.stats.totals, (SplitCaps{1166, 50, 145}));
}

TEST(Builder, EmptyManifest) {
  EXPECT_ERRC(build_benchmark(std::vector<ParallelCorpus>{}, reg(), BuilderConfig{}), Errc::EmptyCorpus);
  BuilderConfig cfg;
  cfg.allow_empty = true;
  auto b = build_benchmark(std::vector<ParallelCorpus>{}, reg(), cfg);
  EXPECT_TRUE(b.directions.empty());
  EXPECT_EQ(b.stats.total(), 0u);
}

TEST(Builder, DuplicateDirectionNeedsMergePolicy) {
  std::vector<ParallelCorpus> cs{make_corpus("eng", "hau", 100, QualityTier::Gold, "a"),
                                 make_corpus("hau", "eng", 100, QualityTier::Gold, "b")};
  EXPECT_ERRC(build_benchmark(cs, reg(), BuilderConfig{}), Errc::DuplicateDirection);
  BuilderConfig cfg;
  cfg.merge_policy = MergePolicy::Concatenate;
  auto bench = build_benchmark(cs, reg(), cfg);
  ASSERT_EQ(bench.directions.size(), 2u);
  std::set<std::string> sources, prefixes;
  for (const auto& d : bench.directions)
    for (auto s : kSplits)
      for (const auto& e : d.splits[s]) {
        sources.insert(e.provenance.source_name);
        prefixes.insert(e.provenance.id.substr(0, 2));
      }
  EXPECT_EQ(sources, (std::set<std::string>{"a+b"}));
  EXPECT_EQ(prefixes, (std::set<std::string>{"a:", "b:"}));
  EXPECT_TRUE(validate_benchmark(bench, reg()).ok());

  // merged corpora must not reuse ids
  std::vector<ParallelCorpus> clash{make_corpus("eng", "hau", 10, QualityTier::Gold, "a"),
                                    make_corpus("eng", "hau", 10, QualityTier::Gold, "a")};
  clash[1].source_name = "other";
  EXPECT_ERRC(build_benchmark(clash, reg(), cfg), Errc::BadConfig);
}

TEST(Builder, RejectsBadInput) {
  std::vector<ParallelCorpus> cs{make_corpus("eng", "zzz", 10)};
  EXPECT_ERRC(build_benchmark(cs, reg(), BuilderConfig{}), Errc::UnknownCode);
  BuilderConfig cfg;
  cfg.split_ratios = {0.5, 0.2, 0.2};
  EXPECT_ERRC(build_benchmark(std::vector<ParallelCorpus>{make_corpus("eng", "hau", 10)}, reg(), cfg),
              Errc::BadConfig);
}

TEST(Builder, DeterministicAndSeedSensitive) {
  std::vector<ParallelCorpus> cs{make_corpus("eng", "hau", 3000), make_corpus("yor", "ach", 300, QualityTier::Gold, "d")};
  BuilderConfig cfg;
  cfg.seed = 99;
  oracle::TempDir a("det-a"), b("det-b"), c("det-c");
  write_benchmark(build_benchmark(cs, reg(), cfg), a.path);
  write_benchmark(build_benchmark(cs, reg(), cfg), b.path);
  cfg.seed = 100;
  write_benchmark(build_benchmark(cs, reg(), cfg), c.path);
  bool any_diff = false;
  for (const auto& e : std::filesystem::directory_iterator(a.path)) {
    const auto name = e.path().filename();
    EXPECT_EQ(text::read_file(e.path()), text::read_file(b.path / name)) << name;
    any_diff |= text::read_file(e.path()) != text::read_file(c.path / name);
  }
  EXPECT_TRUE(any_diff);
}

TEST(Builder, WriteLoadRoundTrip) {
  std::vector<ParallelCorpus> cs{make_corpus("eng", "hau", 500)};
  auto bench = build_benchmark(cs, reg(), BuilderConfig{});
  oracle::TempDir dir("roundtrip");
  write_benchmark(bench, dir.path);
  auto loaded = load_benchmark(dir.path);
  ASSERT_EQ(loaded.directions.size(), bench.directions.size());
  for (std::size_t i = 0; i < bench.directions.size(); ++i) {
    EXPECT_EQ(loaded.directions[i].pair, bench.directions[i].pair);
    EXPECT_EQ(loaded.directions[i].caps, bench.directions[i].caps);
    EXPECT_EQ(loaded.directions[i].supply, bench.directions[i].supply);
    for (auto s : kSplits) EXPECT_EQ(loaded.directions[i].splits[s], bench.directions[i].splits[s]);
  }
  EXPECT_EQ(loaded.stats, bench.stats);
  EXPECT_EQ(stats_from_tsv(stats_to_tsv(bench.stats)), bench.stats);
  auto rep = validate_benchmark_dir(dir.path, reg());
  EXPECT_TRUE(rep.ok()) << rep.render();
}

TEST(Validate, FlagsWrongInstruction) {
  std::vector<ParallelCorpus> cs{make_corpus("eng", "hau", 100)};
  auto bench = build_benchmark(cs, reg(), BuilderConfig{});
  bench.directions[0].splits.dev[0].record.instruction = render_instruction(reg().at("yor"));
  auto rep = validate_benchmark(bench, reg());
  EXPECT_FALSE(rep.ok());
  ASSERT_TRUE(rep.find("instruction"));
  EXPECT_FALSE(rep.find("instruction")->passed);
  EXPECT_NE(rep.find("instruction")->findings.front().find(bench.directions[0].pair.code()), std::string::npos);
  EXPECT_TRUE(rep.find("caps")->passed);
}

TEST(Validate, FlagsCapsAndOverlap) {
  std::vector<ParallelCorpus> cs{make_corpus("eng", "hau", 1000)};
  auto bench = build_benchmark(cs, reg(), BuilderConfig{});
  auto& d = bench.directions[0];
  d.splits.dev.push_back(d.splits.dev.front());
  auto rep = validate_benchmark(bench, reg(), std::nullopt, {5000, 50, 200});
  EXPECT_TRUE(rep.find("split-disjointness")->passed == false);
  d.caps = {5000, 10, 200};
  rep = validate_benchmark(bench, reg());
  EXPECT_FALSE(rep.find("caps")->passed);
  EXPECT_NE(rep.find("caps")->findings.front().find("eng-hau.dev"), std::string::npos);
}

TEST(Validate, ReferenceTotals) {
  std::vector<ParallelCorpus> cs{make_corpus("eng", "hau", 100)};
  auto bench = build_benchmark(cs, reg(), BuilderConfig{});
  auto t = bench.stats.totals;
  auto ok = validate_benchmark(bench, reg(), std::nullopt, {5000, 50, 200}, t);
  EXPECT_TRUE(ok.ok());
  EXPECT_EQ(ok.find("reference-totals")->note.rfind("match: ", 0), 0u);
  t.train += 1;
  auto bad = validate_benchmark(bench, reg(), std::nullopt, {5000, 50, 200}, t);
  EXPECT_FALSE(bad.ok());
  EXPECT_EQ(bad.find("reference-totals")->findings.front().rfind("mismatch: ", 0), 0u);
}

TEST(Manifest, ParsesColumnsAndRejectsJunk) {
  auto m = parse_manifest(
      "source_name\tpath\tformat\tsrc\ttgt\ttier\thas_official_splits\n"
      "# comment\n"
      "opus\tdata/c\tmoses\teng\thau\tgold\t0\n"
      "x\t/abs/d.tsv\ttsv\tyor\tach\thuman\t1\tforward\t10,2,3\n",
      "/base");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].path, std::filesystem::path("/base/data/c"));
  EXPECT_EQ(m[0].format, CorpusFormat::Moses);
  EXPECT_TRUE(m[0].both_directions);
  EXPECT_FALSE(m[0].caps);
  EXPECT_EQ(m[1].path, std::filesystem::path("/abs/d.tsv"));
  EXPECT_FALSE(m[1].both_directions);
  EXPECT_TRUE(m[1].has_official_splits);
  EXPECT_EQ(*m[1].caps, (SplitCaps{10, 2, 3}));
  EXPECT_ERRC(parse_manifest("a\tb\ttsv\teng\thau\n"), Errc::MalformedManifest);
  EXPECT_ERRC(parse_manifest("a\tb\tpdf\teng\thau\tgold\t0\n"), Errc::BadConfig);
  EXPECT_ERRC(parse_manifest("a\tb\ttsv\teng\teng\tgold\t0\n"), Errc::SameLanguage);
  EXPECT_ERRC(parse_manifest("a\tb\ttsv\teng\thau\tgold\tperhaps\n"), Errc::MalformedManifest);
  EXPECT_ERRC(parse_manifest("a\tb\ttsv\teng\thau\tgold\t0\tsideways\n"), Errc::MalformedManifest);
  EXPECT_ERRC(parse_caps("1,2"), Errc::MalformedManifest);
}
