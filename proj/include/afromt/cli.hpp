#ifndef AFROMT_CLI_HPP
#define AFROMT_CLI_HPP

// Command-line front end. Exit status: 0 success, 1 usage error, 2 data or
// validation error. Diagnostics go to `err`, data to `out` or files.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "afromt/afromt.hpp"

namespace afromt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

namespace detail {

inline PerSplit<double> parse_ratios(const std::string& s) {
  auto f = text::split(s, ',');
  if (f.size() != 3) fail(Errc::BadConfig, "--ratios expects train,dev,test");
  try {
    return {std::stod(f[0]), std::stod(f[1]), std::stod(f[2])};
  } catch (const std::exception&) {
    fail(Errc::BadConfig, "--ratios: bad number in '" + s + "'");
  }
}

inline std::set<QualityTier> parse_tiers(const std::string& s) {
  std::set<QualityTier> tiers;
  for (const auto& t : text::split(s, ','))
    if (!text::trim(t).empty()) tiers.insert(parse_tier(text::trim(t)));
  return tiers;
}

inline nlohmann::ordered_json caps_json(const SplitCaps& c) { return {c.train, c.dev, c.test}; }

}  // namespace detail

struct GlobalOptions {
  std::string registry;  // empty: $AFROMT_REGISTRY, else built-in
  std::uint64_t seed = 0;
  int verbosity = 0;
  std::string out;

  LanguageRegistry load_registry() const {
    if (!registry.empty()) return LanguageRegistry::load_dir(registry);
    return LanguageRegistry::from_environment();
  }

  std::string registry_label() const {
    if (!registry.empty()) return registry;
    if (const char* env = std::getenv(std::string(kRegistryEnv).c_str()); env && *env) return env;
    return "builtin";
  }
};

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"afromt: low-resource MT benchmark construction and scoring"};
  app.name("afromt");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file with option defaults (flags override it)");

  GlobalOptions global;
  app.add_option("--registry", global.registry, "registry directory (languages.tsv + sets.tsv)");
  app.add_option("--seed", global.seed, "64-bit seed");
  app.add_flag("-v,--verbose", global.verbosity, "more diagnostics");

  // build-benchmark
  auto* build = app.add_subcommand("build-benchmark", "assemble a benchmark from a corpus manifest");
  std::string manifest_path, caps_str = "5000,50,200", ratios_str = "0.8,0.1,0.1", tiers_str = "gold,human",
              merge_str = "reject";
  std::size_t scarce_threshold = 1000;
  bool allow_empty = false;
  build->add_option("--manifest", manifest_path, "corpus manifest TSV")->required();
  build->add_option("--out", global.out, "output directory")->required();
  build->add_option("--caps", caps_str, "train,dev,test caps");
  build->add_option("--ratios", ratios_str, "train,dev,test split ratios");
  build->add_option("--tiers", tiers_str, "allowed quality tiers");
  build->add_option("--scarce-threshold", scarce_threshold, "below this a split feeds both directions");
  build->add_option("--merge", merge_str, "reject|concat corpora sharing a direction");
  build->add_flag("--allow-empty", allow_empty, "an empty manifest yields an empty benchmark");

  // train-tokenizer
  auto* train = app.add_subcommand("train-tokenizer", "sample monolingual text and train the subword model");
  std::string sources_path, model_out;
  double alpha = 0.3;
  std::size_t vocab_size = 250000, budget = 1000000;
  train->add_option("--manifest", sources_path, "sources TSV (lang<TAB>path)")->required();
  train->add_option("--alpha", alpha, "sampling temperature exponent in (0,1]");
  train->add_option("--vocab-size", vocab_size, "vocabulary size including <unk>");
  train->add_option("--budget", budget, "number of sampled training lines");
  train->add_option("--out", model_out, "model file")->required();

  // score
  auto* score = app.add_subcommand("score", "score a hypothesis file against a reference file");
  std::string hyp_path, ref_path, metric = "bleu", model_path, smoothing = "exp";
  double floor_k = 0.1;
  int order = 4;
  bool as_json = false, lowercase = false;
  score->add_option("--hyp", hyp_path, "hypotheses, one per line")->required();
  score->add_option("--ref", ref_path, "references, one per line")->required();
  score->add_option("--metric", metric, "bleu|spbleu|chrf")->check(CLI::IsMember({"bleu", "spbleu", "chrf"}));
  score->add_option("--model", model_path, "subword model for spbleu");
  score->add_option("--smoothing", smoothing, "exp|none|floor")->check(CLI::IsMember({"exp", "none", "floor"}));
  score->add_option("--floor-k", floor_k, "k for floor smoothing");
  score->add_option("--order", order, "max n-gram order");
  score->add_flag("--lowercase", lowercase, "fold ASCII case before scoring");
  score->add_flag("--json", as_json, "JSON output");

  // report
  auto* report = app.add_subcommand("report", "score a system run and aggregate per language category");
  std::string run_dir, bench_dir, split_str = "test", set_name(kDefaultSupportedSet), format_str = "markdown";
  bool weighted = false;
  report->add_option("--run", run_dir, "run directory of {src}-{tgt}.hyp files")->required();
  report->add_option("--benchmark", bench_dir, "benchmark directory")->required();
  report->add_option("--split", split_str, "train|dev|test");
  report->add_option("--model", model_path, "subword model; enables spBLEU");
  report->add_option("--sets", set_name, "named language set for supported/unsupported rows");
  report->add_option("--format", format_str, "markdown|tsv|json");
  report->add_flag("--weighted", weighted, "weight means by segment count");

  // validate
  auto* validate = app.add_subcommand("validate", "audit a benchmark directory");
  std::string expect_totals, validate_caps = "5000,50,200";
  validate->add_option("--benchmark", bench_dir, "benchmark directory")->required();
  validate->add_option("--expect-totals", expect_totals, "published train,dev,test totals to compare against");
  validate->add_option("--caps", validate_caps, "caps for directions without recorded caps");

  // make-fixture
  auto* fixture = app.add_subcommand("make-fixture", "write synthetic corpora + manifest from a count table");
  std::string counts_path;
  fixture->add_option("--counts", counts_path, "direction<TAB>train<TAB>dev<TAB>test table")->required();
  fixture->add_option("--out", global.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "afromt: " << e.what() << "\n" << "run 'afromt --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (*build) {
      BuilderConfig cfg;
      cfg.seed = global.seed;
      cfg.caps = parse_caps(caps_str, "--caps");
      cfg.split_ratios = detail::parse_ratios(ratios_str);
      cfg.allowed_tiers = detail::parse_tiers(tiers_str);
      cfg.scarce_threshold = scarce_threshold;
      cfg.allow_empty = allow_empty;
      if (merge_str == "reject") cfg.merge_policy = MergePolicy::Reject;
      else if (merge_str == "concat") cfg.merge_policy = MergePolicy::Concatenate;
      else fail(Errc::BadConfig, "--merge must be reject or concat");
      cfg.validate();
      const auto registry = global.load_registry();
      auto manifest = load_manifest(manifest_path);
      auto bench = build_benchmark(manifest, registry, cfg);
      write_benchmark(bench, global.out);

      nlohmann::ordered_json audit;
      audit["command"] = "build-benchmark";
      audit["version"] = std::string(kVersion);
      audit["manifest"] = manifest_path;
      audit["registry"] = global.registry_label();
      audit["seed"] = cfg.seed;
      audit["rng"] = std::string(Rng::kAlgorithm);
      audit["caps"] = detail::caps_json(cfg.caps);
      audit["ratios"] = {cfg.split_ratios.train, cfg.split_ratios.dev, cfg.split_ratios.test};
      audit["tiers"] = nlohmann::ordered_json::array();
      for (auto t : cfg.allowed_tiers) audit["tiers"].push_back(std::string(tier_name(t)));
      audit["scarce_threshold"] = cfg.scarce_threshold;
      audit["merge"] = merge_str;
      audit["directions"] = bench.stats.n_directions;
      audit["languages"] = bench.stats.n_languages;
      audit["totals"] = detail::caps_json(bench.stats.totals);
      text::write_file(std::filesystem::path(global.out) / "build.json", audit.dump(2) + "\n");
      out << "built " << bench.stats.n_directions << " directions over " << bench.stats.n_languages
          << " languages: train=" << bench.stats.totals.train << " dev=" << bench.stats.totals.dev
          << " test=" << bench.stats.totals.test << "\n";
      return kExitOk;
    }

    if (*train) {
      auto sources = load_sources_manifest(sources_path);
      auto weights = compute_sampling_weights(sources, alpha);
      auto lines = sample_training_corpus(sources, weights, budget, global.seed);
      auto model = train_bpe(lines, vocab_size, format_alpha(alpha));
      model.save(model_out);
      nlohmann::ordered_json audit;
      audit["command"] = "train-tokenizer";
      audit["version"] = std::string(kVersion);
      audit["manifest"] = sources_path;
      audit["alpha"] = alpha;
      audit["vocab_size"] = vocab_size;
      audit["budget"] = budget;
      audit["seed"] = global.seed;
      audit["rng"] = std::string(Rng::kAlgorithm);
      audit["checksum"] = model.checksum();
      audit["weights"] = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < weights.langs.size(); ++i)
        audit["weights"].push_back({{"lang", weights.langs[i]}, {"lines", weights.counts[i]}, {"p", weights.p[i]}});
      text::write_file(model_out + ".audit.json", audit.dump(2) + "\n");
      if (global.verbosity > 0)
        err << "trained " << model.size() << " pieces, " << model.merges().size() << " merges\n";
      out << "wrote " << model_out << " (" << model.size() << " pieces, checksum " << model.checksum() << ")\n";
      return kExitOk;
    }

    if (*score) {
      const auto hyps = text::read_lines(hyp_path);
      const auto refs = text::read_lines(ref_path);
      BleuConfig bcfg;
      bcfg.max_ngram_order = order;
      bcfg.lowercase = lowercase;
      bcfg.floor_k = floor_k;
      bcfg.smoothing = smoothing == "none" ? Smoothing::None : smoothing == "floor" ? Smoothing::Floor
                                                                                      : Smoothing::Exponential;
      nlohmann::ordered_json j;
      std::string line;
      if (metric == "chrf") {
        auto s = chrf_pp(hyps, refs);
        j["metric"] = "chrf++";
        j["score"] = s.score;
        j["components"] = nlohmann::ordered_json::array();
        for (const auto& o : s.orders)
          j["components"].push_back({{"type", o.word ? "word" : "char"}, {"n", o.n}, {"hyp", o.hyp_count},
                                     {"ref", o.ref_count}, {"matches", o.matches}, {"precision", o.precision},
                                     {"recall", o.recall}, {"f", o.f}});
        j["signature"] = s.signature;
        char buf[64];
        std::snprintf(buf, sizeof buf, "chrF++ = %.2f", s.score);
        line = std::string(buf) + "  " + s.signature;
      } else {
        BleuScore s;
        if (metric == "spbleu") {
          if (model_path.empty()) fail(Errc::ModelMissing, "--metric spbleu needs --model");
          auto model = SubwordModel::load(model_path);
          s = sp_bleu(hyps, refs, model, bcfg);
        } else {
          s = corpus_bleu(hyps, refs, bcfg);
        }
        j["metric"] = metric;
        j["score"] = s.score;
        j["components"] = {{"precisions", s.precisions},
                           {"smoothed_precisions", s.smoothed_precisions},
                           {"matches", s.matches},
                           {"totals", s.totals},
                           {"brevity_penalty", s.brevity_penalty},
                           {"hyp_len", s.hyp_len},
                           {"ref_len", s.ref_len}};
        j["signature"] = s.signature;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s = %.2f  BP=%.4f  ratio=%.4f  hyp_len=%zu  ref_len=%zu",
                      metric == "spbleu" ? "spBLEU" : "BLEU", s.score, s.brevity_penalty,
                      s.ref_len ? static_cast<double>(s.hyp_len) / static_cast<double>(s.ref_len) : 0.0, s.hyp_len,
                      s.ref_len);
        line = std::string(buf) + "  " + s.signature;
      }
      if (as_json) out << j.dump(2) << "\n";
      else out << line << "\n";
      return kExitOk;
    }

    if (*report) {
      const auto registry = global.load_registry();
      if (!registry.has_set(set_name)) fail(Errc::BadConfig, "registry has no set named " + set_name);
      auto bench = load_benchmark(bench_dir);
      auto run = load_run(run_dir);
      std::optional<SubwordModel> model;
      if (!model_path.empty()) model = SubwordModel::load(model_path);
      auto scores = score_run(run, bench, parse_split(split_str), {}, model ? &*model : nullptr);
      if (global.verbosity > 0)
        for (const auto& s : scores)
          err << s.pair.code() << "\tBLEU=" << s.bleu->score << "\tchrF++=" << s.chrf->score << "\n";
      auto rep = aggregate_categories(scores, registry, set_name, weighted);
      out << render_report(rep, parse_report_format(format_str));
      return kExitOk;
    }

    if (*validate) {
      const auto registry = global.load_registry();
      std::optional<SplitCaps> reference;
      if (!expect_totals.empty()) reference = parse_caps(expect_totals, "--expect-totals");
      auto rep = validate_benchmark_dir(bench_dir, registry, parse_caps(validate_caps, "--caps"), reference);
      out << rep.render();
      if (!rep.ok()) {
        for (const auto& c : rep.checks)
          if (!c.passed) err << "afromt: validate: " << c.name << " failed (" << c.findings.front() << ")\n";
        return kExitData;
      }
      return kExitOk;
    }

    if (*fixture) {
      auto rows = parse_count_table(text::read_file(counts_path));
      auto path = write_count_fixture(rows, global.out);
      out << "wrote " << rows.size() << " corpora and " << path.string() << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "afromt: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "afromt: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace afromt::cli

#endif  // AFROMT_CLI_HPP
