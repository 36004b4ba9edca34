#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "siglink/classifier.hpp"
#include "siglink/features.hpp"
#include "siglink/relations.hpp"

namespace siglink {

enum class SplitMode { KFold, Holdout };

struct SplitSpec {
  SplitMode mode = SplitMode::KFold;
  int folds = 10;
  double eval_fraction = 1.0 / 3.0;
  std::uint64_t seed = 0;

  static SplitSpec xv(int k, std::uint64_t seed) {
    return {SplitMode::KFold, k, 1.0 / 3.0, seed};
  }
  static SplitSpec holdout(double eval_fraction, std::uint64_t seed) {
    return {SplitMode::Holdout, 10, eval_fraction, seed};
  }
};

// Instances in canonical (doc_id, lid) order, then shuffled by seed.
// Returned values are indices into `data`.
std::vector<std::size_t> shuffled_order(std::span<const LinkInstance> data,
                                        std::uint64_t seed);

// Eval side has round(eval_fraction * n) instances; both sides non-empty.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> holdout_split(
    std::span<const LinkInstance> data, double eval_fraction, std::uint64_t seed);

// k folds of equal size +-1 (earlier folds take the remainder).
std::vector<std::vector<std::size_t>> kfold_split(std::span<const LinkInstance> data,
                                                  int k, std::uint64_t seed);

enum class HintScope { None, Holdout, PerFold };

std::string_view to_string(HintScope scope);

struct SubsetAccuracy {
  std::size_t n = 0;
  double accuracy = 0.0;
};

struct EvalReport {
  FeatureSet feature_set = FeatureSet::Base;
  std::string mode;  // "xv" | "holdout", with ":signalled"/":unsignalled" for subset runs
  std::uint64_t seed = 0;
  std::size_t n_train = 0;  // holdout: train size; xv: fold-0 training size
  std::size_t n_eval = 0;   // holdout: eval size; xv: pooled held-out count (= n)
  double baseline = 0.0;    // most-common-class of the training side, scored on eval
  double accuracy = 0.0;
  // confusion[gold][predicted], all six folded classes
  std::array<std::array<std::size_t, kNumFoldedClasses>, kNumFoldedClasses> confusion{};
  std::optional<SubsetAccuracy> signalled;    // eval-side breakdown by has_signal
  std::optional<SubsetAccuracy> unsignalled;  // (model trained on everything)
  HintScope hint_scope = HintScope::None;
};

std::string report_json(const EvalReport& report);
std::string report_text(const EvalReport& report);

// Called with each trained fold model (fold index, model, train/eval indices
// into the data span). Holdout counts as a single fold 0.
using FoldCallback = std::function<void(int fold, const MaxEntModel& model,
                                        std::span<const std::size_t> train_idx,
                                        std::span<const std::size_t> eval_idx)>;

// Cross-validation pools held-out predictions over all folds; the feature
// index, hint table and baseline come from each fold's training side only.
EvalReport run_experiment(std::span<const LinkInstance> data, const SplitSpec& spec,
                          FeatureSet feature_set, const TrainConfig& cfg = {},
                          const FoldCallback& on_fold = {});

enum class Subset { Signalled, Unsignalled };

// Filters by has_signal, then runs the whole experiment inside the subset
// (its own baseline, folds and hint tables).
EvalReport run_subset_experiment(std::span<const LinkInstance> data,
                                 const SplitSpec& spec, FeatureSet feature_set,
                                 const TrainConfig& cfg, Subset which);

struct BoundResult {
  double value = 0.0;
  bool in_range = true;  // false when the bound falls outside [0, 1]
};

// Accuracy over signalled links implied by overall accuracy p (with signal
// features), p_n (without), and signalled proportion s:
//   p = p_n * (1 - s) + a * s   =>   a = (p - p_n * (1 - s)) / s
// The value is returned unclamped.
BoundResult signalled_accuracy_bound(double p, double p_n, double s);

}  // namespace siglink
