#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "siglink/relations.hpp"
#include "siglink/timeml.hpp"

namespace siglink {

/// Every feature name this pipeline can emit, in emission order.
/// `base` is the first 14 names, `base+signal` the first 22, and
/// `base+signal+hint` all 23. Vectors are fixed-arity: a name that does not
/// apply still appears, with value NONE.
inline constexpr std::array<std::string_view, 23> kFeatureRegistry = {
    "e1.class",  "e1.tense", "e1.aspect", "e1.modality", "e1.negation",
    "e1.string", "e2.class", "e2.tense",  "e2.aspect",   "e2.modality",
    "e2.negation", "e2.string", "sameTense", "sameAspect",
    "sig.phrase", "order.e1e2", "order.sig_e1", "order.sig_e2",
    "dist.tok.e1e2", "dist.sent.e1e2", "dist.tok.sig_e1", "dist.tok.sig_e2",
    "hint",
};

enum class FeatureSet { Base, BaseSignal, BaseSignalHint };

/// Number of registry entries the selector covers.
std::size_t feature_set_arity(FeatureSet fs);
std::string_view to_string(FeatureSet fs);
std::optional<FeatureSet> parse_feature_set(std::string_view name);

struct Feature {
  std::string name;
  std::string value;

  bool operator==(const Feature&) const = default;
};

/// Categorical feature vector in registry order, one value per name.
struct FeatureVector {
  std::vector<Feature> items;

  const std::string* find(std::string_view name) const;
  bool operator==(const FeatureVector&) const = default;
};

/// One argument of a classification instance, copied out of the document so
/// instances own their data.
struct EventArg {
  std::string eiid;
  std::string eid;
  std::string event_class;
  std::string tense;
  std::string aspect;
  std::string polarity;
  std::string modality;
  std::string text_lower;  // lowercased surface text of the event span
  TokenSpan span;
  int sentence = 0;
};

struct SignalInfo {
  std::string phrase;
  TokenSpan span;
};

/// One classification example: folded label, fold-normalized arguments, and
/// (once extracted) its feature vector.
struct LinkInstance {
  std::string doc_id;
  std::string lid;
  FoldedClass label = FoldedClass::BEFORE;
  EventArg e1;
  EventArg e2;
  std::optional<SignalInfo> signal;
  FeatureVector features;  // base+signal vector, filled by build_dataset

  bool has_signal() const { return signal.has_value(); }
};

/// Modal folded label per signal phrase, computed from training data only.
class HintTable {
 public:
  HintTable() = default;

  /// Most frequent folded label for each phrase seen with a signal in
  /// `training`; ties break to the lexicographically smallest label name.
  static HintTable from_training(std::span<const LinkInstance> training);

  std::optional<FoldedClass> lookup(std::string_view phrase) const;
  std::size_t size() const { return table_.size(); }
  const std::map<std::string, FoldedClass>& entries() const { return table_; }
  void insert(std::string phrase, FoldedClass label);

  bool operator==(const HintTable&) const = default;

 private:
  std::map<std::string, FoldedClass> table_;
};

/// Turns a TLINK into a classification instance, or nullopt for links that
/// are not event-event. Applies fold(): for swapped relations e1/e2 are the
/// exchanged arguments. The feature vector is not populated.
std::optional<LinkInstance> build_instance(const Document& doc, const TLinkAnn& link);

/// The 14 base features (event attributes, strings, sameTense/sameAspect).
FeatureVector extract_base_features(const LinkInstance& inst);

/// The 8 signal features, plus `hint` when a table is supplied. Signal-
/// dependent features emit NONE for unsignalled instances.
FeatureVector extract_signal_features(const LinkInstance& inst,
                                      const HintTable* hints = nullptr);

/// Full fixed-arity vector for a feature-set selector. `hints` is consulted
/// only when the selector includes the hint feature.
FeatureVector extract_features(const LinkInstance& inst, FeatureSet fs,
                               const HintTable* hints = nullptr);

HintTable compute_hint_table(std::span<const LinkInstance> training);

/// All event-event instances of a corpus in document order, with the
/// base+signal feature vector populated.
std::vector<LinkInstance> build_dataset(std::span<const Document> docs);

}  // namespace siglink
