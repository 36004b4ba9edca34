// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit on any
// failure. The corpus-reproduction criterion needs the licensed corpora and is
// [SKIP]ped unless SIGLINK_TIMEBANK_DIR and SIGLINK_AQUAINT_DIR are set.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "siglink/classifier.hpp"
#include "siglink/eval.hpp"
#include "siglink/features.hpp"
#include "siglink/relations.hpp"
#include "siglink/rng.hpp"
#include "siglink/stats.hpp"
#include "siglink/synth.hpp"
#include "siglink/timeml.hpp"

namespace {

using namespace siglink;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(bool ok, const std::string& name) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
  if (!ok) ++g_failures;
}

void report_timed(bool ok, const std::string& name, Clock::time_point start,
                  double budget_s) {
  double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream line;
  line.precision(2);
  line << name << " (" << std::fixed << elapsed << "s, budget " << budget_s << "s)";
  report(ok && elapsed < budget_s, line.str());
}

// --- 1. parser fidelity on the worked two-event example ---------------------

const char* kWorkedExample =
    "John <EVENT id=\"e1\"> smiled </EVENT> <SIGNAL id=\"s1\"> after </SIGNAL> \n"
    "he <EVENT id=\"e2\"> ate </EVENT> .\n"
    "<TLINK id=\"l1\" eventID=\"e1\" relatedToEvent=\"e2\"\n"
    "  relType=\"AFTER\" signalID=\"s1\" />";

void check_parser_fidelity() {
  auto start = Clock::now();
  Document doc = parse_document(kWorkedExample, Dialect::Auto, "worked-example");
  bool ok = doc.events.size() == 2 && doc.signals.size() == 1 &&
            doc.tlinks.size() == 1 &&
            doc.tlinks[0].rel_type == RelationType::AFTER &&
            doc.tlinks[0].signal_id.has_value() &&
            *doc.tlinks[0].signal_id == "s1";
  report_timed(ok, "parser fidelity: 2 events, 1 signal, 1 AFTER tlink citing s1",
               start, 1.0);
}

// --- 2. relation algebra over all 14 types ----------------------------------

void check_relation_algebra() {
  bool ok = true;
  std::set<FoldedClass> image;
  for (RelationType r : all_relation_types()) {
    ok = ok && invert(invert(r)) == r;
    Fold fr = fold(r);
    Fold fi = fold(invert(r));
    image.insert(fr.label);
    ok = ok && fr.label == fi.label;
    if (invert(r) != r) ok = ok && fr.swap_args != fi.swap_args;
  }
  ok = ok && image.size() == kNumFoldedClasses;
  report(ok, "relation algebra: involution, 6-class image, swap flips on inverses");
}

// --- 3. fold consistency over randomized paired documents -------------------

struct PairedDocs {
  std::string forward;   // TLINK(e1 -> e2, r)
  std::string backward;  // TLINK(e2 -> e1, invert(r))
};

PairedDocs paired_docs(Rng& rng, RelationType r) {
  static const char* kNames[] = {"Alice", "Bob", "Carol", "David", "Erin"};
  static const char* kVerbs[] = {"ran", "slept", "spoke", "ate", "left",
                                 "arrived", "smiled", "waved"};
  static const char* kClasses[] = {"OCCURRENCE", "REPORTING", "STATE"};
  static const char* kPhrases[] = {"after", "before", "until", "while", "once"};

  std::string v1 = kVerbs[rng.below(8)];
  std::string v2 = kVerbs[rng.below(8)];
  while (v2 == v1) v2 = kVerbs[rng.below(8)];
  bool with_signal = rng.bernoulli(0.6);
  std::string connective =
      with_signal ? "<SIGNAL id=\"s1\">" + std::string(kPhrases[rng.below(5)]) +
                        "</SIGNAL>"
                  : std::string("and then");

  std::string text = std::string(kNames[rng.below(5)]) + " <EVENT id=\"e1\" class=\"" +
                     kClasses[rng.below(3)] + "\">" + v1 + "</EVENT> " + connective +
                     " " + kNames[rng.below(5)] + " <EVENT id=\"e2\" class=\"" +
                     kClasses[rng.below(3)] + "\">" + v2 + "</EVENT>.\n";

  std::string signal_attr = with_signal ? " signalID=\"s1\"" : "";
  PairedDocs docs;
  docs.forward = text + "<TLINK id=\"l1\" eventID=\"e1\" relatedToEvent=\"e2\" relType=\"" +
                 std::string(to_string(r)) + "\"" + signal_attr + "/>";
  docs.backward = text + "<TLINK id=\"l1\" eventID=\"e2\" relatedToEvent=\"e1\" relType=\"" +
                  std::string(to_string(invert(r))) + "\"" + signal_attr + "/>";
  return docs;
}

void check_fold_consistency() {
  // Pairs relate a link to its argument-swapped inverse; the two symmetric
  // relations are their own inverses and have no distinct paired form.
  std::vector<RelationType> invertible;
  for (RelationType r : all_relation_types())
    if (invert(r) != r) invertible.push_back(r);

  Rng rng(7001);
  bool ok = true;
  int cases = 0;
  for (int i = 0; i < 240 && ok; ++i, ++cases) {
    RelationType r = invertible[rng.below(invertible.size())];
    PairedDocs docs = paired_docs(rng, r);
    Document fwd = parse_document(docs.forward, Dialect::Auto, "pair");
    Document bwd = parse_document(docs.backward, Dialect::Auto, "pair");
    auto a = build_instance(fwd, fwd.tlinks[0]);
    auto b = build_instance(bwd, bwd.tlinks[0]);
    ok = a.has_value() && b.has_value() && a->label == b->label &&
         extract_features(*a, FeatureSet::BaseSignal) ==
             extract_features(*b, FeatureSet::BaseSignal);
  }
  report(ok, "fold consistency: " + std::to_string(cases) +
                 " randomized inverse-pair documents give identical instances");
}

// --- 4. gradient against central finite differences -------------------------

Problem random_problem(Rng& rng) {
  Problem p;
  p.n_labels = 2 + rng.below(4);     // <= 5 labels
  p.n_features = 3 + rng.below(28);  // <= 30 features
  p.l2_lambda = rng.unit() * 0.5;
  std::size_t n = 5 + rng.below(26);
  for (std::size_t i = 0; i < n; ++i) {
    EncodedInstance inst;
    std::size_t k = 1 + rng.below(5);
    for (std::size_t j = 0; j < k; ++j) inst.features.push_back(rng.below(p.n_features));
    inst.label = rng.below(p.n_labels);
    p.instances.push_back(std::move(inst));
  }
  return p;
}

void check_gradient() {
  auto start = Clock::now();
  Rng rng(7002);
  bool ok = true;
  const double h = 1e-5;
  for (int trial = 0; trial < 24 && ok; ++trial) {
    Problem p = random_problem(rng);
    std::size_t dim = p.n_labels * p.n_features;
    std::vector<double> w(dim), grad(dim);
    for (double& x : w) x = rng.unit() * 2.0 - 1.0;
    objective_and_gradient(p, w, grad);
    for (std::size_t i = 0; i < dim && ok; ++i) {
      std::vector<double> lo = w, hi = w;
      lo[i] -= h;
      hi[i] += h;
      double fd = (objective(p, hi) - objective(p, lo)) / (2.0 * h);
      double scale = std::max({1.0, std::fabs(grad[i]), std::fabs(fd)});
      ok = std::fabs(grad[i] - fd) <= 1e-6 * scale;
    }
  }
  report_timed(ok, "gradient check: 24 random problems vs central differences at 1e-6",
               start, 10.0);
}

// --- 5. baseline identity ----------------------------------------------------

LinkInstance synthetic_instance(const std::string& lid, FoldedClass label,
                                const std::string& v1, const std::string& v2,
                                const std::string& phrase) {
  LinkInstance inst;
  inst.doc_id = "doc";
  inst.lid = lid;
  inst.label = label;
  auto arg = [](const std::string& word, int pos) {
    EventArg a;
    a.eiid = "ei-" + word;
    a.eid = "e-" + word;
    a.event_class = "OCCURRENCE";
    a.tense = "NONE";
    a.aspect = "NONE";
    a.polarity = "NONE";
    a.modality = "NONE";
    a.text_lower = word;
    a.span = {pos, pos};
    a.sentence = 0;
    return a;
  };
  inst.e1 = arg(v1, 0);
  inst.e2 = arg(v2, 2);
  if (!phrase.empty()) inst.signal = SignalInfo{phrase, {1, 1}};
  return inst;
}

void check_baseline_identity() {
  Rng rng(7003);
  std::vector<LinkInstance> data;
  for (int i = 0; i < 83; ++i) {  // deliberately not divisible by the fold count
    FoldedClass label = all_folded_classes()[rng.below(kNumFoldedClasses)];
    data.push_back(synthetic_instance("l" + std::to_string(1000 + i), label, "ran",
                                      "hid", rng.bernoulli(0.5) ? "after" : ""));
  }

  auto gather = [&data](std::span<const std::size_t> idx) {
    std::vector<LinkInstance> out;
    for (std::size_t i : idx) out.push_back(data[i]);
    return out;
  };

  bool ok = true;

  SplitSpec xv = SplitSpec::xv(7, 13);
  EvalReport xv_report = run_experiment(data, xv, FeatureSet::Base);
  std::size_t hits = 0, total = 0;
  auto folds = kfold_split(data, xv.folds, xv.seed);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < folds.size(); ++g)
      if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
    FoldedClass modal = most_common_class(gather(train_idx)).first;
    for (std::size_t i : folds[f]) {
      hits += data[i].label == modal;
      total += 1;
    }
  }
  ok = ok && xv_report.baseline == static_cast<double>(hits) / total;

  SplitSpec holdout = SplitSpec::holdout(0.3, 29);
  EvalReport holdout_report = run_experiment(data, holdout, FeatureSet::Base);
  auto [train_idx, eval_idx] = holdout_split(data, holdout.eval_fraction, holdout.seed);
  FoldedClass modal = most_common_class(gather(train_idx)).first;
  std::size_t holdout_hits = 0;
  for (std::size_t i : eval_idx) holdout_hits += data[i].label == modal;
  ok = ok &&
       holdout_report.baseline == static_cast<double>(holdout_hits) / eval_idx.size();

  report(ok, "baseline identity: reported baseline equals the recomputed modal score");
}

// --- 6. signal-feature gain on a synthetic corpus ----------------------------

void check_signal_gain() {
  auto start = Clock::now();

  SynthSpec spec;
  spec.n_docs = 100;
  spec.links_per_doc = 30;  // ~3000 links
  spec.seed = 7004;
  spec.signal_fraction = 0.5;
  spec.lexicon_noise = 0.1;

  std::vector<Document> docs;
  for (const SynthFile& f : generate(spec))
    docs.push_back(parse_document(f.content, Dialect::Auto, f.name));
  std::vector<LinkInstance> data = build_dataset(docs);

  SplitSpec xv = SplitSpec::xv(10, 7004);
  EvalReport sig_base =
      run_subset_experiment(data, xv, FeatureSet::Base, {}, Subset::Signalled);
  EvalReport sig_full =
      run_subset_experiment(data, xv, FeatureSet::BaseSignal, {}, Subset::Signalled);
  EvalReport unsig_base =
      run_subset_experiment(data, xv, FeatureSet::Base, {}, Subset::Unsignalled);
  EvalReport unsig_full =
      run_subset_experiment(data, xv, FeatureSet::BaseSignal, {}, Subset::Unsignalled);

  bool ok = true;
  ok = ok && sig_base.accuracy <= sig_base.baseline + 0.03;
  ok = ok && sig_full.accuracy >= 0.85;
  ok = ok && std::fabs(unsig_base.accuracy - unsig_base.baseline) <= 0.03;
  ok = ok && std::fabs(unsig_full.accuracy - unsig_full.baseline) <= 0.03;

  std::ostringstream detail;
  detail.precision(4);
  detail << std::fixed << "signal feature gain: signalled base " << sig_base.accuracy
         << " (baseline " << sig_base.baseline << "), base+signal " << sig_full.accuracy
         << "; unsignalled " << unsig_base.accuracy << "/" << unsig_full.accuracy
         << " (baseline " << unsig_base.baseline << ")";
  report_timed(ok, detail.str(), start, 120.0);
}

// --- 7. signalled-accuracy bound ---------------------------------------------

void check_bound() {
  BoundResult r = signalled_accuracy_bound(0.6146, 0.6032, 319.0 / 6234.0);
  bool ok = std::fabs(r.value - 0.8263) <= 0.0005 && r.in_range;

  Rng rng(7005);
  for (int i = 0; i < 500 && ok; ++i) {
    double p_n = rng.unit();
    double a = rng.unit();
    double s = 0.05 + 0.95 * rng.unit();
    double p = p_n * (1.0 - s) + a * s;
    ok = std::fabs(signalled_accuracy_bound(p, p_n, s).value - a) <= 1e-12;
  }
  report(ok, "signalled accuracy bound: 0.8263 +- 0.0005 and 1e-12 round trip");
}

// --- 8. hint tables and models never see held-out labels ---------------------

std::vector<std::string> fold_model_bytes(std::span<const LinkInstance> data,
                                          const SplitSpec& spec) {
  std::vector<std::string> bytes(spec.folds);
  run_experiment(data, spec, FeatureSet::BaseSignalHint, {},
                 [&bytes](int fold, const MaxEntModel& model,
                          std::span<const std::size_t>, std::span<const std::size_t>) {
                   std::ostringstream out;
                   model.save(out);
                   bytes[fold] = out.str();
                 });
  return bytes;
}

void check_hint_leakage() {
  static const char* kPhrases[] = {"after", "before", "until", "while", "during"};
  Rng rng(7006);
  std::vector<LinkInstance> data;
  for (int i = 0; i < 150; ++i)
    data.push_back(synthetic_instance(
        "l" + std::to_string(1000 + i),
        all_folded_classes()[rng.below(kNumFoldedClasses)], "ran", "hid",
        rng.bernoulli(0.7) ? kPhrases[rng.below(5)] : ""));

  SplitSpec spec = SplitSpec::xv(5, 31);
  std::vector<std::string> original = fold_model_bytes(data, spec);
  auto folds = kfold_split(data, spec.folds, spec.seed);

  bool ok = true;
  for (std::size_t t = 0; t < folds.size() && ok; ++t) {
    std::vector<LinkInstance> mutated = data;
    for (std::size_t i : folds[t]) {
      int next = (static_cast<int>(mutated[i].label) + 1) % kNumFoldedClasses;
      mutated[i].label = static_cast<FoldedClass>(next);
    }
    std::vector<std::string> rerun = fold_model_bytes(mutated, spec);
    // Fold t trains on everything except fold t: byte-identical model.
    ok = rerun[t] == original[t];
    // Sanity: the mutation must change at least one other fold's model.
    bool any_changed = false;
    for (std::size_t f = 0; f < folds.size(); ++f)
      if (f != t) any_changed = any_changed || rerun[f] != original[f];
    ok = ok && any_changed;
  }
  report(ok, "hint leakage: mutating held-out labels leaves each fold model intact");
}

// --- 9. reproduction on the licensed corpora (conditional) -------------------

void check_corpus_reproduction() {
  const char* timebank = std::getenv("SIGLINK_TIMEBANK_DIR");
  const char* aquaint = std::getenv("SIGLINK_AQUAINT_DIR");
  if (!timebank || !aquaint) {
    std::cout << "[SKIP] corpus reproduction "
                 "(set SIGLINK_TIMEBANK_DIR and SIGLINK_AQUAINT_DIR to enable)\n";
    return;
  }

  Corpus tb = load_corpus({timebank});
  Corpus aq = load_corpus({aquaint});
  for (const CorpusIssue& issue : tb.issues)
    std::cerr << issue.path << ": " << issue.message << "\n";
  for (const CorpusIssue& issue : aq.issues)
    std::cerr << issue.path << ": " << issue.message << "\n";

  std::vector<CorpusGroup> groups;
  groups.push_back({"timebank", tb.documents});
  groups.push_back({"aquaint", aq.documents});
  std::vector<LinkCounts> counts = tlink_counts(groups);

  bool counts_ok = counts[0].total_tlinks == 6418 && counts[0].with_signal == 718 &&
                   counts[1].total_tlinks == 5365 && counts[1].with_signal == 178 &&
                   counts[2].total_tlinks == 11783 && counts[2].with_signal == 896 &&
                   counts[2].event_event_total == 6234 &&
                   counts[2].event_event_with_signal == 319;
  std::ostringstream count_detail;
  count_detail << "corpus counts: " << counts[0].total_tlinks << "/"
               << counts[0].with_signal << ", " << counts[1].total_tlinks << "/"
               << counts[1].with_signal << ", combined " << counts[2].total_tlinks
               << "/" << counts[2].with_signal << ", event-event "
               << counts[2].event_event_total << "/"
               << counts[2].event_event_with_signal
               << " (want 6418/718, 5365/178, 11783/896, 6234/319)";
  report(counts_ok, count_detail.str());

  std::vector<Document> all_docs = tb.documents;
  all_docs.insert(all_docs.end(), aq.documents.begin(), aq.documents.end());
  std::vector<LinkInstance> data = build_dataset(all_docs);

  SplitSpec xv = SplitSpec::xv(10, 0);
  EvalReport base = run_experiment(data, xv, FeatureSet::Base);
  EvalReport with_signal = run_experiment(data, xv, FeatureSet::BaseSignal);
  EvalReport sig_subset =
      run_subset_experiment(data, xv, FeatureSet::BaseSignal, {}, Subset::Signalled);

  std::ostringstream acc_detail;
  acc_detail.precision(4);
  acc_detail << std::fixed << "corpus accuracies: base " << base.accuracy
             << " (want 0.6032 +- 0.025), base+signal " << with_signal.accuracy
             << " (want 0.6146 +- 0.025), signalled subset " << sig_subset.accuracy
             << " (want 0.8219 +- 0.05)";
  report(std::fabs(base.accuracy - 0.6032) <= 0.025 &&
             std::fabs(with_signal.accuracy - 0.6146) <= 0.025 &&
             std::fabs(sig_subset.accuracy - 0.8219) <= 0.05,
         acc_detail.str());
}

}  // namespace

int main() {
  check_parser_fidelity();
  check_relation_algebra();
  check_fold_consistency();
  check_gradient();
  check_baseline_identity();
  check_signal_gain();
  check_bound();
  check_hint_leakage();
  check_corpus_reproduction();

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
