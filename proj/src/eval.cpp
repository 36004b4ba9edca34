#include "siglink/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "siglink/errors.hpp"
#include "siglink/rng.hpp"

namespace siglink {

namespace {

std::vector<LinkInstance> gather(std::span<const LinkInstance> data,
                                 std::span<const std::size_t> indices) {
  std::vector<LinkInstance> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(data[i]);
  return out;
}

struct Tally {
  std::size_t correct = 0;
  std::size_t baseline_correct = 0;
  std::size_t total = 0;
  std::size_t sig_correct = 0, sig_total = 0;
  std::size_t unsig_correct = 0, unsig_total = 0;
};

void score_fold(std::span<const LinkInstance> data, std::span<const std::size_t> eval_idx,
                const MaxEntModel& model, FoldedClass train_modal, EvalReport& report,
                Tally& tally) {
  for (std::size_t i : eval_idx) {
    const LinkInstance& inst = data[i];
    FoldedClass predicted = model.predict_instance(inst).label;
    report.confusion[static_cast<int>(inst.label)][static_cast<int>(predicted)] += 1;
    bool hit = predicted == inst.label;
    tally.correct += hit;
    tally.baseline_correct += inst.label == train_modal;
    tally.total += 1;
    if (inst.has_signal()) {
      tally.sig_total += 1;
      tally.sig_correct += hit;
    } else {
      tally.unsig_total += 1;
      tally.unsig_correct += hit;
    }
  }
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

EvalReport run_on(std::span<const LinkInstance> data, const SplitSpec& spec,
                  FeatureSet feature_set, const TrainConfig& cfg,
                  const FoldCallback& on_fold, const char* mode_suffix) {
  if (data.empty()) throw EmptyDataError("experiment needs a non-empty dataset");

  EvalReport report;
  report.feature_set = feature_set;
  report.seed = spec.seed;
  if (feature_set == FeatureSet::BaseSignalHint)
    report.hint_scope =
        spec.mode == SplitMode::KFold ? HintScope::PerFold : HintScope::Holdout;

  Tally tally;
  if (spec.mode == SplitMode::Holdout) {
    report.mode = std::string("holdout") + mode_suffix;
    auto [train_idx, eval_idx] = holdout_split(data, spec.eval_fraction, spec.seed);
    report.n_train = train_idx.size();
    report.n_eval = eval_idx.size();
    std::vector<LinkInstance> train_set = gather(data, train_idx);
    MaxEntModel model = train(train_set, feature_set, cfg);
    if (on_fold) on_fold(0, model, train_idx, eval_idx);
    score_fold(data, eval_idx, model, most_common_class(train_set).first, report, tally);
  } else {
    report.mode = std::string("xv") + mode_suffix;
    std::vector<std::vector<std::size_t>> folds =
        kfold_split(data, spec.folds, spec.seed);
    report.n_train = data.size() - folds[0].size();
    report.n_eval = data.size();
    for (int f = 0; f < static_cast<int>(folds.size()); ++f) {
      std::vector<std::size_t> train_idx;
      train_idx.reserve(data.size() - folds[f].size());
      for (int g = 0; g < static_cast<int>(folds.size()); ++g)
        if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
      std::vector<LinkInstance> train_set = gather(data, train_idx);
      MaxEntModel model = train(train_set, feature_set, cfg);
      if (on_fold) on_fold(f, model, train_idx, folds[f]);
      score_fold(data, folds[f], model, most_common_class(train_set).first, report,
                 tally);
    }
  }

  report.accuracy = ratio(tally.correct, tally.total);
  report.baseline = ratio(tally.baseline_correct, tally.total);
  if (tally.sig_total > 0 && tally.unsig_total > 0) {
    report.signalled = SubsetAccuracy{tally.sig_total, ratio(tally.sig_correct, tally.sig_total)};
    report.unsignalled =
        SubsetAccuracy{tally.unsig_total, ratio(tally.unsig_correct, tally.unsig_total)};
  }
  return report;
}

}  // namespace

std::string_view to_string(HintScope scope) {
  switch (scope) {
    case HintScope::None: return "none";
    case HintScope::Holdout: return "holdout";
    case HintScope::PerFold: return "per-fold";
  }
  return "";
}

std::vector<std::size_t> shuffled_order(std::span<const LinkInstance> data,
                                        std::uint64_t seed) {
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&data](std::size_t a, std::size_t b) {
    if (data[a].doc_id != data[b].doc_id) return data[a].doc_id < data[b].doc_id;
    return data[a].lid < data[b].lid;
  });
  Rng rng(seed);
  rng.shuffle(order);
  return order;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> holdout_split(
    std::span<const LinkInstance> data, double eval_fraction, std::uint64_t seed) {
  std::vector<std::size_t> order = shuffled_order(data, seed);
  std::size_t n_eval = static_cast<std::size_t>(
      std::llround(eval_fraction * static_cast<double>(order.size())));
  if (n_eval == 0 || n_eval >= order.size())
    throw TooFewInstancesError("holdout split leaves an empty side (" +
                               std::to_string(order.size()) + " instances)");
  std::vector<std::size_t> eval_idx(order.begin(), order.begin() + n_eval);
  std::vector<std::size_t> train_idx(order.begin() + n_eval, order.end());
  return {std::move(train_idx), std::move(eval_idx)};
}

std::vector<std::vector<std::size_t>> kfold_split(std::span<const LinkInstance> data,
                                                  int k, std::uint64_t seed) {
  if (k < 2) throw TooFewInstancesError("cross-validation needs at least 2 folds");
  if (data.size() < static_cast<std::size_t>(k))
    throw TooFewInstancesError("cannot make " + std::to_string(k) + " folds from " +
                               std::to_string(data.size()) + " instances");
  std::vector<std::size_t> order = shuffled_order(data, seed);
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  std::size_t base = order.size() / static_cast<std::size_t>(k);
  std::size_t rem = order.size() % static_cast<std::size_t>(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::size_t size = base + (f < rem ? 1 : 0);
    folds[f].assign(order.begin() + pos, order.begin() + pos + size);
    pos += size;
  }
  return folds;
}

EvalReport run_experiment(std::span<const LinkInstance> data, const SplitSpec& spec,
                          FeatureSet feature_set, const TrainConfig& cfg,
                          const FoldCallback& on_fold) {
  return run_on(data, spec, feature_set, cfg, on_fold, "");
}

EvalReport run_subset_experiment(std::span<const LinkInstance> data,
                                 const SplitSpec& spec, FeatureSet feature_set,
                                 const TrainConfig& cfg, Subset which) {
  std::vector<LinkInstance> subset;
  for (const LinkInstance& inst : data)
    if (inst.has_signal() == (which == Subset::Signalled)) subset.push_back(inst);
  if (subset.empty())
    throw TooFewInstancesError(std::string("no ") +
                               (which == Subset::Signalled ? "signalled" : "unsignalled") +
                               " instances in the dataset");
  EvalReport report =
      run_on(subset, spec, feature_set, cfg, {},
             which == Subset::Signalled ? ":signalled" : ":unsignalled");
  // The breakdown is meaningless inside a homogeneous subset.
  report.signalled.reset();
  report.unsignalled.reset();
  return report;
}

BoundResult signalled_accuracy_bound(double p, double p_n, double s) {
  if (s == 0.0)
    throw DivisionByZeroError("signalled proportion s must be positive");
  BoundResult result;
  result.value = (p - p_n * (1.0 - s)) / s;
  result.in_range = result.value >= 0.0 && result.value <= 1.0;
  return result;
}

std::string report_json(const EvalReport& report) {
  nlohmann::json j;
  j["feature_set"] = std::string(to_string(report.feature_set));
  j["mode"] = report.mode;
  j["seed"] = report.seed;
  j["n_train"] = report.n_train;
  j["n_eval"] = report.n_eval;
  j["baseline"] = report.baseline;
  j["accuracy"] = report.accuracy;
  nlohmann::json confusion;
  for (FoldedClass gold : all_folded_classes()) {
    nlohmann::json row;
    for (FoldedClass pred : all_folded_classes())
      row[std::string(to_string(pred))] =
          report.confusion[static_cast<int>(gold)][static_cast<int>(pred)];
    confusion[std::string(to_string(gold))] = std::move(row);
  }
  j["confusion"] = std::move(confusion);
  if (report.signalled && report.unsignalled) {
    j["subset"] = {
        {"signalled", {{"n", report.signalled->n}, {"accuracy", report.signalled->accuracy}}},
        {"unsignalled",
         {{"n", report.unsignalled->n}, {"accuracy", report.unsignalled->accuracy}}}};
  }
  j["hint_scope"] = std::string(to_string(report.hint_scope));
  return j.dump(2) + "\n";
}

std::string report_text(const EvalReport& report) {
  std::ostringstream out;
  out << std::left;
  out << std::setw(14) << "feature_set" << to_string(report.feature_set) << "\n";
  out << std::setw(14) << "mode" << report.mode << "\n";
  out << std::setw(14) << "seed" << report.seed << "\n";
  out << std::setw(14) << "n_train" << report.n_train << "\n";
  out << std::setw(14) << "n_eval" << report.n_eval << "\n";
  out << std::setw(14) << "baseline" << std::fixed << std::setprecision(4)
      << report.baseline << "\n";
  out << std::setw(14) << "accuracy" << report.accuracy << "\n";
  out << std::setw(14) << "hint_scope" << to_string(report.hint_scope) << "\n";
  if (report.signalled && report.unsignalled) {
    out << std::setw(14) << "signalled" << report.signalled->accuracy << " (n="
        << report.signalled->n << ")\n";
    out << std::setw(14) << "unsignalled" << report.unsignalled->accuracy << " (n="
        << report.unsignalled->n << ")\n";
  }
  out << "confusion (rows gold, cols predicted)\n";
  out << std::setw(14) << "";
  for (FoldedClass pred : all_folded_classes())
    out << std::setw(14) << to_string(pred);
  out << "\n";
  for (FoldedClass gold : all_folded_classes()) {
    out << std::setw(14) << to_string(gold);
    for (FoldedClass pred : all_folded_classes())
      out << std::setw(14)
          << report.confusion[static_cast<int>(gold)][static_cast<int>(pred)];
    out << "\n";
  }
  return out.str();
}

}  // namespace siglink
