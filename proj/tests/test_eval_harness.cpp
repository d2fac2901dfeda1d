#include <map>

#include "afromt/eval_harness.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace afromt;

namespace {

const auto& reg() { return LanguageRegistry::builtin(); }

PairScore fixed_score(const std::string& code, double v, std::size_t segments = 1) {
  PairScore s;
  s.pair = parse_pair_code(code);
  s.segments = segments;
  s.bleu = MetricValue{v, "b"};
  s.chrf = MetricValue{v + 1, "c"};
  return s;
}

BenchmarkDataset toy_benchmark() {
  std::vector<ParallelCorpus> cs;
  for (auto [src, tgt, n] : {std::tuple{"eng", "hau", 300}, {"nyn", "ach", 150}}) {
    ParallelCorpus c;
    c.pair = {src, tgt};
    c.tier = QualityTier::Gold;
    c.source_name = std::string(src) + tgt;
    for (int i = 1; i <= n; ++i)
      c.pairs.push_back({c.source_name + ":" + std::to_string(i), std::string(src) + " w" + std::to_string(i % 7) +
                                                                     " x" + std::to_string(i),
                         std::string(tgt) + " v" + std::to_string(i % 5) + " y" + std::to_string(i)});
    cs.push_back(c);
  }
  return build_benchmark(cs, reg(), BuilderConfig{});
}

std::vector<std::string> references(const BenchmarkDataset& b, const DirectedPair& p, Split s) {
  std::vector<std::string> out;
  for (const auto& e : b.find(p)->splits[s]) out.push_back(e.record.output);
  return out;
}

}  // namespace

TEST(ScoreRun, EchoScoresHundred) {
  auto bench = toy_benchmark();
  SystemRun run{"echo", {}};
  for (const auto& d : bench.directions) run.hypotheses[d.pair.code()] = references(bench, d.pair, Split::Test);
  auto model = train_bpe(std::vector<std::string>{"eng w1 x1 hau v1 y1", "nyn ach"}, 30);
  auto scores = score_run(run, bench, Split::Test, {}, &model);
  ASSERT_EQ(scores.size(), 4u);
  for (const auto& s : scores) {
    for (auto m : kMetrics) {
      ASSERT_TRUE(s.get(m)) << s.pair.code();
      EXPECT_DOUBLE_EQ(s.get(m)->score, 100.0) << s.pair.code() << " " << metric_name(m);
    }
  }
}

TEST(ScoreRun, MatchesDirectMetricCalls) {
  auto bench = toy_benchmark();
  SystemRun run{"toy", {}};
  std::map<std::string, std::vector<std::string>> refs;
  for (const auto& d : bench.directions) {
    auto r = references(bench, d.pair, Split::Dev);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = i % 3 ? r[i].substr(0, r[i].size() / 2) : "nothing alike";
    run.hypotheses[d.pair.code()] = r;
    refs[d.pair.code()] = references(bench, d.pair, Split::Dev);
  }
  auto scores = score_run(run, bench, Split::Dev);
  for (const auto& s : scores) {
    const auto& h = run.hypotheses[s.pair.code()];
    const auto& r = refs[s.pair.code()];
    EXPECT_EQ(s.bleu->score, corpus_bleu(h, r).score);
    EXPECT_EQ(s.chrf->score, chrf_pp(h, r).score);
    EXPECT_FALSE(s.spbleu);
    EXPECT_EQ(s.segments, r.size());
  }
}

TEST(ScoreRun, Errors) {
  auto bench = toy_benchmark();
  SystemRun run{"short", {}};
  auto r = references(bench, {"eng", "hau"}, Split::Test);
  r.pop_back();
  run.hypotheses["eng-hau"] = r;
  EXPECT_ERRC(score_run(run, bench, Split::Test), Errc::LineCountMismatch);
  SystemRun missing{"m", {{"eng-yor", {"x"}}}};
  EXPECT_ERRC(score_run(missing, bench, Split::Test), Errc::MissingDirection);
}

TEST(LoadRun, ReadsHypFilesAndMetadata) {
  oracle::TempDir dir("run");
  text::write_file(dir.path / "eng-hau.hyp", "a\nb\n");
  text::write_file(dir.path / "notes.txt", "ignored\n");
  text::write_file(dir.path / "run.tsv", "system_name\tmy-system\n");
  auto run = load_run(dir.path);
  EXPECT_EQ(run.system_name, "my-system");
  ASSERT_EQ(run.hypotheses.size(), 1u);
  EXPECT_EQ(run.hypotheses.at("eng-hau"), (std::vector<std::string>{"a", "b"}));
  text::write_file(dir.path / "english-hausa.hyp", "a\n");
  EXPECT_ERRC(load_run(dir.path), Errc::MalformedPair);
}

TEST(Aggregate, SingleDirection) {
  auto rep = aggregate_categories({fixed_score("eng-hau", 50)}, reg());
  const auto* row = rep.find("English→XX");
  ASSERT_TRUE(row);
  EXPECT_EQ(row->members, 1u);
  EXPECT_EQ(row->mean(Metric::Bleu), 50.0);
  EXPECT_EQ(row->mean(Metric::Chrf), 51.0);
  EXPECT_FALSE(row->mean(Metric::SpBleu));
  EXPECT_EQ(rep.find("English→XX (supported)")->members, 1u);
  EXPECT_EQ(rep.find(category::kTotalSupported)->members, 1u);
  EXPECT_EQ(rep.find("Arabic→XX (not supported)")->members, 0u);
  EXPECT_FALSE(rep.find("Arabic→XX (not supported)")->mean(Metric::Bleu));
}

TEST(Aggregate, AfricanMeanAndWeighting) {
  std::vector<PairScore> s{fixed_score("nyn-ach", 10, 1), fixed_score("ach-lug", 20, 1),
                           fixed_score("teo-nyn", 30, 2)};
  auto rep = aggregate_categories(s, reg());
  EXPECT_DOUBLE_EQ(*rep.find(category::kAfricanAfrican)->mean(Metric::Bleu), 20.0);
  EXPECT_EQ(rep.find(category::kAfricanAfrican)->members, 3u);
  auto w = aggregate_categories(s, reg(), kDefaultSupportedSet, true);
  EXPECT_DOUBLE_EQ(*w.find(category::kAfricanAfrican)->mean(Metric::Bleu), (10 + 20 + 60) / 4.0);
}

TEST(Aggregate, OrderFollowsTableLayout) {
  auto rep = aggregate_categories({fixed_score("eng-hau", 50)}, reg());
  std::vector<std::string> labels;
  for (const auto& r : rep.rows) labels.push_back(r.label);
  std::vector<std::string> want{"Arabic↔XX",
                                "XX→Arabic",
                                "Arabic→XX",
                                "Arabic→XX (not supported)",
                                "Arabic→XX (supported)",
                                "English↔XX",
                                "XX→English",
                                "English→XX",
                                "English→XX (not supported)",
                                "English→XX (supported)",
                                "French↔XX",
                                "XX→French",
                                "French→XX",
                                "French→XX (not supported)",
                                "French→XX (supported)",
                                "African↔African",
                                "Total supported languages",
                                "Total unsupported languages"};
  EXPECT_EQ(labels, want);
}

TEST(Render, FormatsAreDeterministic) {
  auto rep = aggregate_categories({fixed_score("eng-hau", 50), fixed_score("ara-yor", 12.25)}, reg());
  for (auto f : {ReportFormat::Markdown, ReportFormat::Tsv, ReportFormat::Json})
    EXPECT_EQ(render_report(rep, f), render_report(rep, f));
  auto md = render_report(rep, ReportFormat::Markdown);
  EXPECT_EQ(md.rfind("| Category | Directions | BLEU | spBLEU | ChrF++ |\n", 0), 0u);
  EXPECT_NE(md.find("| English→XX | 1 | 50.00 | NA | 51.00 |\n"), std::string::npos);
  EXPECT_NE(md.find("| Arabic→XX (not supported) | 0 | NA | NA | NA |\n"), std::string::npos);
  auto tsv = render_report(rep, ReportFormat::Tsv);
  EXPECT_NE(tsv.find("Arabic→XX (supported)\t1\t12.25\tNA\t13.25\n"), std::string::npos);
  auto js = nlohmann::json::parse(render_report(rep, ReportFormat::Json));
  EXPECT_EQ(js["categories"][0]["category"], "Arabic↔XX");
  EXPECT_TRUE(js["categories"][3]["BLEU"].is_null());
}

TEST(Render, EmptyReportIsHeaderOnly) {
  EXPECT_EQ(render_report(CategoryReport{}, ReportFormat::Markdown),
            "| Category | Directions | BLEU | spBLEU | ChrF++ |\n|---|---:|---:|---:|---:|\n");
  EXPECT_EQ(parse_report_format("md"), ReportFormat::Markdown);
  EXPECT_ERRC(parse_report_format("html"), Errc::BadConfig);
}
