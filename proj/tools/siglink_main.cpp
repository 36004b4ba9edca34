#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "siglink/classifier.hpp"
#include "siglink/errors.hpp"
#include "siglink/eval.hpp"
#include "siglink/features.hpp"
#include "siglink/stats.hpp"
#include "siglink/synth.hpp"
#include "siglink/timeml.hpp"

namespace {

using namespace siglink;

std::vector<std::filesystem::path> resolve_paths(const std::vector<std::string>& args) {
  std::vector<std::filesystem::path> paths;
  for (const std::string& a : args) paths.emplace_back(a);
  if (paths.empty()) {
    if (const char* root = std::getenv("SIGLINK_CORPUS_ROOT")) paths.emplace_back(root);
  }
  if (paths.empty())
    throw IoError("no corpus paths given (and SIGLINK_CORPUS_ROOT is unset)");
  return paths;
}

Corpus load_or_die(const std::vector<std::string>& args, bool strict) {
  Corpus corpus = load_corpus(resolve_paths(args));
  for (const CorpusIssue& issue : corpus.issues)
    std::cerr << issue.path << ": " << issue.message << "\n";
  if (strict && !corpus.issues.empty())
    throw IoError(std::to_string(corpus.issues.size()) + " file(s) failed to parse");
  if (corpus.documents.empty()) throw EmptyDataError("no documents parsed");
  return corpus;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  out << text;
  if (!out) throw IoError("write failed for '" + out_path + "'");
}

FeatureSet parse_features_flag(const std::string& name) {
  std::optional<FeatureSet> fs = parse_feature_set(name);
  if (!fs)
    throw IoError("unknown feature set '" + name +
                  "' (expected base, base+signal or base+signal+hint)");
  return *fs;
}

struct RunOptions {
  std::vector<std::string> paths;
  std::string features = "base";
  std::uint64_t seed = 0;
  int folds = 10;
  int min_freq = 1;
  double eval_fraction = 1.0 / 3.0;
  std::string which = "signalled";
  std::string mode = "xv";
  std::string format = "json";
  std::string out;
  TrainConfig train;
};

void add_train_flags(CLI::App* cmd, RunOptions& opt) {
  cmd->add_option("--l2-lambda", opt.train.l2_lambda, "L2 penalty weight");
  cmd->add_option("--max-iters", opt.train.max_iters, "optimizer iteration cap");
  cmd->add_option("--tol", opt.train.tol, "relative objective-change stop threshold");
}

void add_report_flags(CLI::App* cmd, RunOptions& opt) {
  cmd->add_option("--format", opt.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", opt.out, "write the report to this file");
}

void emit_report(const EvalReport& report, const RunOptions& opt) {
  emit(opt.format == "text" ? report_text(report) : report_json(report), opt.out);
}

std::vector<LinkInstance> dataset_from(const RunOptions& opt) {
  Corpus corpus = load_or_die(opt.paths, false);
  std::vector<LinkInstance> data = build_dataset(corpus.documents);
  if (data.empty()) throw EmptyDataError("no event-event links in the corpus");
  return data;
}

int dispatch(const CLI::App& app, RunOptions& opt) {
  if (app.got_subcommand("validate")) {
    Corpus corpus = load_corpus(resolve_paths(opt.paths));
    for (const CorpusIssue& issue : corpus.issues)
      std::cerr << issue.path << ": " << issue.message << "\n";
    std::size_t links = 0;
    for (const Document& doc : corpus.documents) links += doc.tlinks.size();
    std::cout << corpus.documents.size() << " document(s), " << links << " tlink(s), "
              << corpus.issues.size() << " issue(s)\n";
    return corpus.issues.empty() ? 0 : 1;
  }

  if (app.got_subcommand("stats")) {
    const CLI::App* stats = app.get_subcommand("stats");
    if (stats->got_subcommand("signals")) {
      Corpus corpus = load_or_die(opt.paths, false);
      std::vector<PhraseStat> rows =
          signal_phrase_stats(corpus.documents, static_cast<std::size_t>(opt.min_freq));
      emit(opt.format == "json" ? phrase_stats_json(rows) : phrase_stats_tsv(rows),
           opt.out);
      return 0;
    }
    if (stats->got_subcommand("links")) {
      std::vector<CorpusGroup> groups;
      for (const std::string& path : opt.paths) {
        Corpus corpus = load_or_die({path}, false);
        groups.push_back({path, std::move(corpus.documents)});
      }
      if (groups.empty()) throw IoError("no corpus paths given");
      std::vector<LinkCounts> rows = tlink_counts(groups);
      emit(opt.format == "json" ? link_counts_json(rows) : link_counts_tsv(rows),
           opt.out);
      return 0;
    }
    throw IoError("stats needs a subcommand (signals or links)");
  }

  if (app.got_subcommand("run")) {
    const CLI::App* run = app.get_subcommand("run");
    FeatureSet fs = parse_features_flag(opt.features);
    std::vector<LinkInstance> data = dataset_from(opt);
    if (run->got_subcommand("xv")) {
      emit_report(run_experiment(data, SplitSpec::xv(opt.folds, opt.seed), fs, opt.train),
                  opt);
      return 0;
    }
    if (run->got_subcommand("split")) {
      emit_report(run_experiment(data, SplitSpec::holdout(opt.eval_fraction, opt.seed),
                                 fs, opt.train),
                  opt);
      return 0;
    }
    if (run->got_subcommand("subset")) {
      SplitSpec spec = opt.mode == "split"
                           ? SplitSpec::holdout(opt.eval_fraction, opt.seed)
                           : SplitSpec::xv(opt.folds, opt.seed);
      Subset which =
          opt.which == "unsignalled" ? Subset::Unsignalled : Subset::Signalled;
      emit_report(run_subset_experiment(data, spec, fs, opt.train, which), opt);
      return 0;
    }
    throw IoError("run needs a subcommand (xv, split or subset)");
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TLINK classification experiments over TimeML corpora"};
  app.require_subcommand(1);
  RunOptions opt;

  CLI::App* validate = app.add_subcommand("validate", "parse documents and report issues");
  validate->add_option("paths", opt.paths, "files or directories");

  CLI::App* stats = app.add_subcommand("stats", "corpus statistics");
  stats->require_subcommand(1);
  CLI::App* signals =
      stats->add_subcommand("signals", "signal phrase likelihood table");
  signals->add_option("--min-freq", opt.min_freq, "minimum corpus frequency");
  signals->add_option("paths", opt.paths, "files or directories");
  signals->add_option("--format", opt.format, "tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));
  signals->add_option("--out", opt.out, "write output to this file");
  CLI::App* links = stats->add_subcommand("links", "TLINK and signal counts per corpus");
  links->add_option("paths", opt.paths, "one group per path");
  links->add_option("--format", opt.format, "tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));
  links->add_option("--out", opt.out, "write output to this file");

  CLI::App* run = app.add_subcommand("run", "train and evaluate");
  run->require_subcommand(1);
  CLI::App* xv = run->add_subcommand("xv", "k-fold cross-validation");
  xv->add_option("--folds", opt.folds, "fold count")->check(CLI::Range(2, 1000));
  CLI::App* split = run->add_subcommand("split", "single train/eval split");
  split->add_option("--eval-fraction", opt.eval_fraction, "held-out share")
      ->check(CLI::Range(0.0, 1.0));
  CLI::App* subset = run->add_subcommand("subset", "experiment within one subset");
  subset->add_option("--which", opt.which, "signalled or unsignalled")
      ->check(CLI::IsMember({"signalled", "unsignalled"}));
  subset->add_option("--mode", opt.mode, "xv or split")
      ->check(CLI::IsMember({"xv", "split"}));
  subset->add_option("--folds", opt.folds, "fold count")->check(CLI::Range(2, 1000));
  subset->add_option("--eval-fraction", opt.eval_fraction, "held-out share")
      ->check(CLI::Range(0.0, 1.0));
  for (CLI::App* cmd : {xv, split, subset}) {
    cmd->add_option("--features", opt.features, "base, base+signal or base+signal+hint");
    cmd->add_option("--seed", opt.seed, "shuffle seed");
    cmd->add_option("paths", opt.paths, "files or directories");
    add_train_flags(cmd, opt);
    add_report_flags(cmd, opt);
  }

  CLI::App* bound = app.add_subcommand("bound", "signalled-accuracy bound");
  double p = 0.0, pn = 0.0, s = 0.0;
  bound->add_option("--p", p, "overall accuracy with signal features")->required();
  bound->add_option("--pn", pn, "accuracy without signal features")->required();
  bound->add_option("--s", s, "proportion of signalled links")->required();
  bound->add_option("--format", opt.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  bound->add_option("--out", opt.out, "write output to this file");

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  SynthSpec spec;
  std::string synth_out;
  synth->add_option("--docs", spec.n_docs, "document count")->check(CLI::Range(1, 100000));
  synth->add_option("--links-per-doc", spec.links_per_doc, "links per document")
      ->check(CLI::Range(1, 100000));
  synth->add_option("--seed", spec.seed, "generator seed");
  synth->add_option("--signal-fraction", spec.signal_fraction, "share of signalled links")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--noise", spec.lexicon_noise, "lexicon noise rate")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--out", synth_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand("bound")) {
      BoundResult result = signalled_accuracy_bound(p, pn, s);
      std::ostringstream text;
      if (opt.format == "json") {
        text << std::setprecision(17) << "{\"a\": " << result.value
             << ", \"in_range\": " << (result.in_range ? "true" : "false") << "}\n";
      } else {
        text << "a = " << result.value << "\n";
        if (!result.in_range) text << "warning: bound falls outside [0, 1]\n";
      }
      emit(text.str(), opt.out);
      return 0;
    }
    if (app.got_subcommand("synth")) {
      write_corpus(spec, synth_out);
      std::cout << "wrote " << spec.n_docs << " document(s) to " << synth_out << "\n";
      return 0;
    }
    return dispatch(app, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
