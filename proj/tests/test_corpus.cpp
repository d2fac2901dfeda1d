#include <random>

#include "afromt/corpus.hpp"
#include "afromt/text.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace afromt;

namespace {

const std::string kAcholiInstruction =
    "Translate the following text to Acholi language. Return only the translated sentence only. Do not repeat the "
    "instruction.";

// First sample record, with the spacing after commas as printed.
const std::string kFigureLine =
    R"({"langcode":"nyn-ach", "instruction":")" + kAcholiInstruction +
    R"(", "input":"Bakakora omukoro gw'okuhendera emishomo yaabo, orwakashatu oruhwaire.", )"
    R"("output":"Gubed ki yub me kwero tyeko kwan i ceng adek ma okato"})";

}  // namespace

TEST(Record, ParsesSampleLine) {
  auto rec = parse_record(kFigureLine);
  EXPECT_EQ(rec.langcode, "nyn-ach");
  EXPECT_EQ(rec.instruction, kAcholiInstruction);
  EXPECT_EQ(rec.input, "Bakakora omukoro gw'okuhendera emishomo yaabo, orwakashatu oruhwaire.");
  EXPECT_EQ(rec.output, "Gubed ki yub me kwero tyeko kwan i ceng adek ma okato");
}

TEST(Record, CanonicalFormDropsInterTokenSpaces) {
  std::string canonical = kFigureLine;
  for (auto key : {"instruction", "input", "output"}) {
    const std::string spaced = "\", \"" + std::string(key) + "\"";
    auto at = canonical.find(spaced);
    ASSERT_NE(at, std::string::npos);
    canonical.replace(at, spaced.size(), "\",\"" + std::string(key) + "\"");
  }
  EXPECT_EQ(serialize_record(parse_record(kFigureLine)), canonical);
  EXPECT_EQ(serialize_record(parse_record(canonical)), canonical);
}

TEST(Record, Errors) {
  EXPECT_ERRC(parse_record(R"({"langcode":"nyn-ach","instruction":"i","input":"x"})"), Errc::MissingField);
  try {
    parse_record(R"({"langcode":"nyn-ach","instruction":"i","input":"x"})");
  } catch (const Error& e) {
    EXPECT_EQ(e.detail(), "output");
  }
  EXPECT_ERRC(parse_record(R"({"langcode":"nyn-ach","instruction":"i","input":"x","output":"y","id":1})"),
              Errc::ExtraField);
  EXPECT_ERRC(parse_record(R"({"langcode":"nyn-ach","instruction":"i","input":"x","output":""})"),
              Errc::MalformedJson);
  EXPECT_ERRC(parse_record(R"({"langcode":"nyn-ach","instruction":"i","input":"x","output":5})"),
              Errc::MalformedJson);
  EXPECT_ERRC(parse_record(R"({"langcode":"nyn-ach",)"), Errc::MalformedJson);
  EXPECT_ERRC(parse_record(R"(["nyn-ach"])"), Errc::MalformedJson);
  EXPECT_ERRC(parse_record(R"({"langcode":"nyn","instruction":"i","input":"x","output":"y"})"),
              Errc::MalformedPair);
}

TEST(Record, EscapingFollowsJsonRules) {
  TranslationRecord r{"eng-hau", "say \"hi\"", "back\\slash\ttab\nnewline", "ünïcödé ▁ text"};
  auto line = serialize_record(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_NE(line.find(R"(say \"hi\")"), std::string::npos);
  EXPECT_NE(line.find(R"(back\\slash\ttab\nnewline)"), std::string::npos);
  EXPECT_NE(line.find("ünïcödé ▁ text"), std::string::npos);
  EXPECT_EQ(parse_record(line), r);
}

TEST(Record, RoundTripProperty) {
  std::mt19937_64 g(7);
  const std::string pool = "ab \"\\\t/{}:,";
  std::uniform_int_distribution<int> len(1, 12), pick(0, static_cast<int>(pool.size()) - 1);
  auto rand_text = [&] {
    std::string s;
    int n = len(g);
    for (int i = 0; i < n; ++i) s += pool[pick(g)];
    return s;
  };
  for (int t = 0; t < 500; ++t) {
    TranslationRecord r{"eng-hau", rand_text(), rand_text(), rand_text()};
    for (auto* f : {&r.instruction, &r.input, &r.output})
      if (f->empty()) *f = "x";
    auto line = serialize_record(r);
    EXPECT_EQ(parse_record(line), r);
    EXPECT_EQ(serialize_record(parse_record(line)), line);
  }
}

TEST(Corpus, MosesTwoFiles) {
  oracle::TempDir dir("moses");
  text::write_file(dir.path / "c.eng", "one\n two \nthree\n");
  text::write_file(dir.path / "c.hau", "daya\nbiyu\nuku\n");
  auto c = load_parallel_corpus(dir.path / "c", CorpusFormat::Moses, {"eng", "hau"}, QualityTier::Gold);
  ASSERT_EQ(c.pairs.size(), 3u);
  EXPECT_EQ(c.pairs[0].id, ":1");
  EXPECT_EQ(c.pairs[1].id, ":2");
  EXPECT_EQ(c.pairs[2].id, ":3");
  EXPECT_EQ(c.pairs[1].src_text, "two");
  EXPECT_EQ(c.tier, QualityTier::Gold);

  text::write_file(dir.path / "c.hau", "daya\nbiyu\nuku\nhudu\n");
  EXPECT_ERRC(load_parallel_corpus(dir.path / "c", CorpusFormat::Moses, {"eng", "hau"}, QualityTier::Gold),
              Errc::LineCountMismatch);
  EXPECT_ERRC(load_parallel_corpus(dir.path / "none", CorpusFormat::Moses, {"eng", "hau"}, QualityTier::Gold),
              Errc::IoError);
}

TEST(Corpus, TsvEmptySegmentNamesLine) {
  oracle::TempDir dir("tsv");
  std::string content;
  for (int i = 1; i <= 9; ++i) content += "src " + std::to_string(i) + "\t" + (i == 7 ? "  " : "tgt") + "\n";
  text::write_file(dir.path / "c.tsv", content);
  try {
    load_parallel_corpus(dir.path / "c.tsv", CorpusFormat::Tsv, {"eng", "hau"}, QualityTier::Gold, "src");
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptySegment);
    EXPECT_EQ(e.detail(), "7");
  }
  text::write_file(dir.path / "d.tsv", "a\tb\tc\n");
  EXPECT_ERRC(load_parallel_corpus(dir.path / "d.tsv", CorpusFormat::Tsv, {"eng", "hau"}, QualityTier::Gold),
              Errc::MalformedLine);
  text::write_file(dir.path / "e.tsv", "only source\n");
  EXPECT_ERRC(load_parallel_corpus(dir.path / "e.tsv", CorpusFormat::Tsv, {"eng", "hau"}, QualityTier::Gold),
              Errc::EmptySegment);
}

TEST(Corpus, TsvTrimsAndKeepsOrder) {
  oracle::TempDir dir("tsv2");
  text::write_file(dir.path / "c.tsv", "  a  b \t x\r\nc\td\n");
  auto c = load_parallel_corpus(dir.path / "c.tsv", CorpusFormat::Tsv, {"eng", "hau"}, QualityTier::Gold, "opus");
  ASSERT_EQ(c.pairs.size(), 2u);
  EXPECT_EQ(c.pairs[0], (SentencePair{"opus:1", "a  b", "x"}));
  EXPECT_EQ(c.pairs[1], (SentencePair{"opus:2", "c", "d"}));
}

TEST(Corpus, JsonlAcceptsEitherOrientation) {
  oracle::TempDir dir("jsonl");
  text::write_file(dir.path / "c.jsonl",
                   serialize_record({"eng-hau", "i", "hello", "sannu"}) + "\n" +
                       serialize_record({"hau-eng", "i", "na gode", "thanks"}) + "\n");
  auto c = load_parallel_corpus(dir.path / "c.jsonl", CorpusFormat::Jsonl, {"eng", "hau"}, QualityTier::Gold);
  ASSERT_EQ(c.pairs.size(), 2u);
  EXPECT_EQ(c.pairs[1].src_text, "thanks");
  EXPECT_EQ(c.pairs[1].tgt_text, "na gode");
  EXPECT_ERRC(load_parallel_corpus(dir.path / "c.jsonl", CorpusFormat::Jsonl, {"eng", "yor"}, QualityTier::Gold),
              Errc::MalformedLine);
}

TEST(Corpus, OfficialSplitsNumberContinuously) {
  oracle::TempDir dir("official");
  text::write_file(dir.path / "c.train", "a\tb\nc\td\n");
  text::write_file(dir.path / "c.dev", "e\tf\n");
  text::write_file(dir.path / "c.test", "g\th\n");
  auto c = load_parallel_corpus(dir.path / "c", CorpusFormat::Tsv, {"eng", "hau"}, QualityTier::Gold, "s", true);
  ASSERT_TRUE(c.official_splits);
  EXPECT_EQ(c.official_splits->train, (std::vector<std::string>{"s:1", "s:2"}));
  EXPECT_EQ(c.official_splits->dev, (std::vector<std::string>{"s:3"}));
  EXPECT_EQ(c.official_splits->test, (std::vector<std::string>{"s:4"}));
  EXPECT_TRUE(official_splits_partition(c));
  c.official_splits->test.push_back("s:1");
  EXPECT_FALSE(official_splits_partition(c));
}

TEST(Corpus, TierAndSplitNames) {
  for (auto t : kAllTiers) EXPECT_EQ(parse_tier(tier_name(t)), t);
  EXPECT_EQ(parse_tier("Human"), QualityTier::HumanEvaluated);
  EXPECT_ERRC(parse_tier("platinum"), Errc::BadConfig);
  for (auto s : kSplits) EXPECT_EQ(parse_split(split_name(s)), s);
  EXPECT_ERRC(parse_split("validation"), Errc::BadConfig);
}
