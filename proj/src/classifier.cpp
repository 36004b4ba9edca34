#include "siglink/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "siglink/errors.hpp"

namespace siglink {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(std::string_view s, std::string_view what) {
  double v{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw IoError("model file: bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

long long parse_int(std::string_view s, std::string_view what) {
  long long v{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw IoError("model file: bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string expect_line(std::istream& in, std::string_view what) {
  std::string line;
  if (!std::getline(in, line))
    throw IoError("model file: truncated before " + std::string(what));
  return line;
}

// Stable log(sum(exp(scores))).
double log_sum_exp(std::span<const double> scores) {
  double m = scores[0];
  for (double s : scores) m = std::max(m, s);
  double sum = 0.0;
  for (double s : scores) sum += std::exp(s - m);
  return m + std::log(sum);
}

void instance_scores(const Problem& problem, std::span<const double> weights,
                     const EncodedInstance& inst, std::vector<double>& scores) {
  scores.assign(problem.n_labels, 0.0);
  for (std::size_t y = 0; y < problem.n_labels; ++y) {
    const double* row = weights.data() + y * problem.n_features;
    double s = 0.0;
    for (std::size_t f : inst.features) s += row[f];
    scores[y] = s;
  }
}

}  // namespace

std::size_t FeatureIndex::add(std::string key) {
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  std::size_t id = keys_.size();
  ids_.emplace(key, id);
  keys_.push_back(std::move(key));
  return id;
}

std::optional<std::size_t> FeatureIndex::lookup(std::string_view key) const {
  auto it = ids_.find(key);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

double objective(const Problem& problem, std::span<const double> weights) {
  double value = 0.0;
  std::vector<double> scores;
  for (const EncodedInstance& inst : problem.instances) {
    instance_scores(problem, weights, inst, scores);
    value += scores[inst.label] - log_sum_exp(scores);
  }
  double penalty = 0.0;
  for (double w : weights) penalty += w * w;
  return value - problem.l2_lambda * penalty;
}

double objective_and_gradient(const Problem& problem, std::span<const double> weights,
                              std::span<double> grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  double value = 0.0;
  std::vector<double> scores;
  for (const EncodedInstance& inst : problem.instances) {
    instance_scores(problem, weights, inst, scores);
    double lse = log_sum_exp(scores);
    value += scores[inst.label] - lse;
    for (std::size_t y = 0; y < problem.n_labels; ++y) {
      double p = std::exp(scores[y] - lse);
      double coeff = (y == inst.label ? 1.0 : 0.0) - p;
      double* row = grad.data() + y * problem.n_features;
      for (std::size_t f : inst.features) row[f] += coeff;
    }
  }
  double penalty = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    penalty += weights[i] * weights[i];
    grad[i] -= 2.0 * problem.l2_lambda * weights[i];
  }
  return value - problem.l2_lambda * penalty;
}

Prediction MaxEntModel::predict(const FeatureVector& fv) const {
  std::vector<std::size_t> active;
  active.reserve(fv.items.size());
  for (const Feature& f : fv.items) {
    std::optional<std::size_t> id = index.lookup(f.name + "=" + f.value);
    if (id) active.push_back(*id);
  }
  const std::size_t k = labels.size();
  const std::size_t m = index.size();
  std::vector<double> scores(k, 0.0);
  for (std::size_t y = 0; y < k; ++y) {
    const double* row = weights.data() + y * m;
    for (std::size_t f : active) scores[y] += row[f];
  }
  double lse = log_sum_exp(scores);
  Prediction pred;
  pred.dist.resize(k);
  std::size_t best = 0;
  for (std::size_t y = 0; y < k; ++y) {
    pred.dist[y] = std::exp(scores[y] - lse);
    if (pred.dist[y] > pred.dist[best]) best = y;
  }
  pred.label = labels[best];
  return pred;
}

Prediction MaxEntModel::predict_instance(const LinkInstance& inst) const {
  const HintTable* table = feature_set == FeatureSet::BaseSignalHint ? &hints : nullptr;
  return predict(extract_features(inst, feature_set, table));
}

bool MaxEntModel::operator==(const MaxEntModel& other) const {
  return labels == other.labels && index == other.index && weights == other.weights &&
         config == other.config && feature_set == other.feature_set &&
         hints == other.hints && degenerate == other.degenerate;
}

void MaxEntModel::save(std::ostream& out) const {
  out << "siglink-maxent 1\n";
  out << "feature_set " << to_string(feature_set) << "\n";
  out << "labels " << labels.size();
  for (FoldedClass c : labels) out << ' ' << to_string(c);
  out << "\n";
  out << "l2_lambda " << format_double(config.l2_lambda) << "\n";
  out << "max_iters " << config.max_iters << "\n";
  out << "tol " << format_double(config.tol) << "\n";
  out << "seed " << config.seed << "\n";
  out << "degenerate " << (degenerate ? 1 : 0) << "\n";
  out << "hints " << hints.size() << "\n";
  for (const auto& [phrase, label] : hints.entries())
    out << phrase << '\t' << to_string(label) << "\n";
  out << "features " << index.size() << "\n";
  out << "weights " << weights.size() << "\n";
  for (std::size_t y = 0; y < labels.size(); ++y)
    for (std::size_t f = 0; f < index.size(); ++f)
      out << to_string(labels[y]) << '\t' << index.key(f) << '\t'
          << format_double(weights[y * index.size() + f]) << "\n";
  out << "end\n";
}

void MaxEntModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  save(out);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

MaxEntModel MaxEntModel::load(std::istream& in) {
  MaxEntModel model;
  if (expect_line(in, "magic") != "siglink-maxent 1")
    throw IoError("model file: unrecognized header");

  auto header_field = [&in](std::string_view key) {
    std::string line = expect_line(in, key);
    std::string prefix = std::string(key) + " ";
    if (line.rfind(prefix, 0) != 0)
      throw IoError("model file: expected '" + std::string(key) + "', got '" + line + "'");
    return line.substr(prefix.size());
  };

  std::optional<FeatureSet> fs = parse_feature_set(header_field("feature_set"));
  if (!fs) throw IoError("model file: unknown feature set");
  model.feature_set = *fs;

  {
    std::istringstream ls(header_field("labels"));
    std::size_t k = 0;
    ls >> k;
    std::string name;
    while (ls >> name) {
      std::optional<FoldedClass> c = parse_folded_class(name);
      if (!c) throw IoError("model file: unknown label '" + name + "'");
      model.labels.push_back(*c);
    }
    if (model.labels.size() != k) throw IoError("model file: label count mismatch");
  }

  model.config.l2_lambda = parse_double(header_field("l2_lambda"), "l2_lambda");
  model.config.max_iters = static_cast<int>(parse_int(header_field("max_iters"), "max_iters"));
  model.config.tol = parse_double(header_field("tol"), "tol");
  model.config.seed = static_cast<std::uint64_t>(parse_int(header_field("seed"), "seed"));
  model.degenerate = parse_int(header_field("degenerate"), "degenerate") != 0;

  std::size_t n_hints = static_cast<std::size_t>(parse_int(header_field("hints"), "hints"));
  for (std::size_t i = 0; i < n_hints; ++i) {
    std::vector<std::string> parts = split_tabs(expect_line(in, "hint entry"));
    if (parts.size() != 2) throw IoError("model file: malformed hint entry");
    std::optional<FoldedClass> c = parse_folded_class(parts[1]);
    if (!c) throw IoError("model file: unknown hint label '" + parts[1] + "'");
    model.hints.insert(parts[0], *c);
  }

  std::size_t m = static_cast<std::size_t>(parse_int(header_field("features"), "features"));
  std::size_t n_weights =
      static_cast<std::size_t>(parse_int(header_field("weights"), "weights"));
  if (n_weights != m * model.labels.size())
    throw IoError("model file: weight count mismatch");

  model.weights.assign(n_weights, 0.0);
  for (std::size_t y = 0; y < model.labels.size(); ++y) {
    for (std::size_t f = 0; f < m; ++f) {
      std::vector<std::string> parts = split_tabs(expect_line(in, "weight entry"));
      if (parts.size() != 3) throw IoError("model file: malformed weight entry");
      if (parts[0] != to_string(model.labels[y]))
        throw IoError("model file: weight entries out of order");
      if (y == 0) {
        if (model.index.add(parts[1]) != f)
          throw IoError("model file: duplicate feature key '" + parts[1] + "'");
      } else if (model.index.lookup(parts[1]) != f) {
        throw IoError("model file: feature key mismatch at '" + parts[1] + "'");
      }
      model.weights[y * m + f] = parse_double(parts[2], "weight");
    }
  }
  if (expect_line(in, "end") != "end") throw IoError("model file: missing end marker");
  return model;
}

MaxEntModel MaxEntModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return load(in);
}

MaxEntModel train(std::span<const LinkInstance> data, FeatureSet feature_set,
                  const TrainConfig& cfg) {
  if (data.empty()) throw EmptyDataError("cannot train on an empty dataset");

  // Canonical order makes the feature index and all floating-point
  // accumulation independent of caller-side shuffling.
  std::vector<const LinkInstance*> order;
  order.reserve(data.size());
  for (const LinkInstance& inst : data) order.push_back(&inst);
  std::sort(order.begin(), order.end(), [](const LinkInstance* a, const LinkInstance* b) {
    if (a->doc_id != b->doc_id) return a->doc_id < b->doc_id;
    return a->lid < b->lid;
  });

  MaxEntModel model;
  model.config = cfg;
  model.feature_set = feature_set;

  bool seen[kNumFoldedClasses] = {};
  for (const LinkInstance& inst : data) seen[static_cast<int>(inst.label)] = true;
  for (FoldedClass c : all_folded_classes())
    if (seen[static_cast<int>(c)]) model.labels.push_back(c);
  model.degenerate = model.labels.size() == 1;

  const HintTable* hint_ptr = nullptr;
  if (feature_set == FeatureSet::BaseSignalHint) {
    model.hints = compute_hint_table(data);
    hint_ptr = &model.hints;
  }

  Problem problem;
  problem.n_labels = model.labels.size();
  problem.l2_lambda = cfg.l2_lambda;
  problem.instances.reserve(order.size());
  for (const LinkInstance* inst : order) {
    FeatureVector fv = extract_features(*inst, feature_set, hint_ptr);
    EncodedInstance enc;
    enc.features.reserve(fv.items.size());
    for (const Feature& f : fv.items)
      enc.features.push_back(model.index.add(f.name + "=" + f.value));
    auto pos = std::find(model.labels.begin(), model.labels.end(), inst->label);
    enc.label = static_cast<std::size_t>(pos - model.labels.begin());
    problem.instances.push_back(std::move(enc));
  }
  problem.n_features = model.index.size();

  const std::size_t dim = problem.n_labels * problem.n_features;
  std::vector<double> w(dim, 0.0);
  std::vector<double> grad(dim, 0.0);
  std::vector<double> trial(dim, 0.0);

  double fx = objective_and_gradient(problem, w, grad);
  double step = 1.0;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    double gnorm2 = 0.0;
    for (double g : grad) gnorm2 += g * g;
    if (gnorm2 <= 1e-20) break;

    // Backtracking line search along the gradient (Armijo condition).
    double alpha = step;
    double ftrial = fx;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = w[i] + alpha * grad[i];
      ftrial = objective(problem, trial);
      if (ftrial >= fx + 1e-4 * alpha * gnorm2) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;

    w.swap(trial);
    step = std::min(alpha * 2.0, 1e4);
    double fprev = fx;
    fx = objective_and_gradient(problem, w, grad);
    if (std::abs(fx - fprev) <= cfg.tol * std::max(1.0, std::abs(fprev))) break;
  }

  model.weights = std::move(w);
  return model;
}

std::pair<FoldedClass, double> most_common_class(std::span<const LinkInstance> data) {
  if (data.empty()) throw EmptyDataError("most_common_class needs a non-empty dataset");
  int counts[kNumFoldedClasses] = {};
  for (const LinkInstance& inst : data) counts[static_cast<int>(inst.label)] += 1;
  int best = 0;
  for (int c = 1; c < kNumFoldedClasses; ++c)
    if (counts[c] > counts[best]) best = c;
  return {static_cast<FoldedClass>(best),
          static_cast<double>(counts[best]) / static_cast<double>(data.size())};
}

}  // namespace siglink
