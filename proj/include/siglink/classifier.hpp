#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "siglink/features.hpp"
#include "siglink/relations.hpp"

namespace siglink {

// Bijection between "name=value" strings and dense ids. Built from training
// data only; insertion order is first occurrence over instances in canonical
// (doc_id, lid) order, so the index is deterministic.
class FeatureIndex {
 public:
  std::size_t add(std::string key);
  std::optional<std::size_t> lookup(std::string_view key) const;
  const std::string& key(std::size_t id) const { return keys_[id]; }
  std::size_t size() const { return keys_.size(); }

  bool operator==(const FeatureIndex&) const = default;

 private:
  std::vector<std::string> keys_;
  std::map<std::string, std::size_t, std::less<>> ids_;
};

struct TrainConfig {
  double l2_lambda = 0.1;
  int max_iters = 500;
  double tol = 1e-7;
  // Reserved; default training is fully deterministic and ignores it.
  std::uint64_t seed = 0;

  bool operator==(const TrainConfig&) const = default;
};

// Training problem with instances already encoded against a feature index.
// Weights are row-major: w[label * n_features + feature].
struct EncodedInstance {
  std::vector<std::size_t> features;
  std::size_t label = 0;
};

struct Problem {
  std::size_t n_labels = 0;
  std::size_t n_features = 0;
  double l2_lambda = 0.0;
  std::vector<EncodedInstance> instances;
};

// Regularized log-likelihood: sum of log p(y|x) minus lambda * |w|^2.
double objective(const Problem& problem, std::span<const double> weights);
// Same value; also writes d/dw into grad (observed - expected - 2*lambda*w).
double objective_and_gradient(const Problem& problem, std::span<const double> weights,
                              std::span<double> grad);

struct Prediction {
  FoldedClass label;
  std::vector<double> dist;  // aligned with MaxEntModel::labels
};

class MaxEntModel {
 public:
  std::vector<FoldedClass> labels;  // lexicographic
  FeatureIndex index;
  std::vector<double> weights;  // labels.size() * index.size(), row-major
  TrainConfig config;
  FeatureSet feature_set = FeatureSet::Base;
  HintTable hints;      // populated only when feature_set uses the hint
  bool degenerate = false;  // single training label; constant predictor

  Prediction predict(const FeatureVector& fv) const;
  // Extracts features per the model's feature set (and hint table), then
  // predicts. This is the correct entry point for held-out instances.
  Prediction predict_instance(const LinkInstance& inst) const;

  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static MaxEntModel load(std::istream& in);
  static MaxEntModel load(const std::filesystem::path& path);

  bool operator==(const MaxEntModel&) const;
};

MaxEntModel train(std::span<const LinkInstance> data, FeatureSet feature_set,
                  const TrainConfig& cfg = {});

// Modal folded label of the data and its empirical frequency.
// Ties broken by lexicographically smallest label name.
std::pair<FoldedClass, double> most_common_class(std::span<const LinkInstance> data);

}  // namespace siglink
