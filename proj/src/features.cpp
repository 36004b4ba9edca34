#include "siglink/features.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace siglink {

namespace {

constexpr std::size_t kBaseArity = 14;
constexpr std::size_t kBaseSignalArity = 22;

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string token_distance_bucket(int d) {
  if (d <= 4) return std::to_string(d);
  if (d <= 9) return "5-9";
  if (d <= 19) return "10-19";
  return "20+";
}

std::string sentence_distance_bucket(int d) {
  if (d <= 2) return std::to_string(d);
  return "3+";
}

// |first token of the later span - last token of the earlier span|, spans
// ordered by first token index.
int span_token_distance(TokenSpan a, TokenSpan b) {
  const TokenSpan& earlier = (a.first < b.first || (a.first == b.first && a.last <= b.last)) ? a : b;
  const TokenSpan& later = (&earlier == &a) ? b : a;
  return std::abs(later.first - earlier.last);
}

bool span_precedes(TokenSpan a, TokenSpan b) {
  if (a.first != b.first) return a.first < b.first;
  return a.last < b.last;
}

EventArg make_arg(const Document& doc, const ResolvedInterval& iv) {
  EventArg arg;
  arg.eiid = iv.instance->eiid;
  arg.eid = iv.instance->eid;
  arg.event_class = iv.event->event_class;
  arg.tense = iv.instance->tense;
  arg.aspect = iv.instance->aspect;
  arg.polarity = iv.instance->polarity;
  arg.modality = iv.instance->modality;
  arg.text_lower = to_lower(doc.span_text(iv.span));
  arg.span = iv.span;
  arg.sentence = doc.tokens[static_cast<std::size_t>(iv.span.first)].sentence_index;
  return arg;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::size_t feature_set_arity(FeatureSet fs) {
  switch (fs) {
    case FeatureSet::Base: return kBaseArity;
    case FeatureSet::BaseSignal: return kBaseSignalArity;
    case FeatureSet::BaseSignalHint: return kFeatureRegistry.size();
  }
  return 0;
}

std::string_view to_string(FeatureSet fs) {
  switch (fs) {
    case FeatureSet::Base: return "base";
    case FeatureSet::BaseSignal: return "base+signal";
    case FeatureSet::BaseSignalHint: return "base+signal+hint";
  }
  return "";
}

std::optional<FeatureSet> parse_feature_set(std::string_view name) {
  if (name == "base") return FeatureSet::Base;
  if (name == "base+signal") return FeatureSet::BaseSignal;
  if (name == "base+signal+hint") return FeatureSet::BaseSignalHint;
  return std::nullopt;
}

const std::string* FeatureVector::find(std::string_view name) const {
  for (const Feature& f : items)
    if (f.name == name) return &f.value;
  return nullptr;
}

HintTable HintTable::from_training(std::span<const LinkInstance> training) {
  std::map<std::string, std::map<FoldedClass, int>> counts;
  for (const LinkInstance& inst : training) {
    if (!inst.has_signal()) continue;
    counts[inst.signal->phrase][inst.label] += 1;
  }
  HintTable table;
  for (const auto& [phrase, by_label] : counts) {
    FoldedClass best = by_label.begin()->first;
    int best_count = by_label.begin()->second;
    for (const auto& [label, count] : by_label) {
      // FoldedClass enum order is lexicographic name order, so the first
      // maximum encountered is the tie-break winner.
      if (count > best_count) {
        best = label;
        best_count = count;
      }
    }
    table.table_.emplace(phrase, best);
  }
  return table;
}

std::optional<FoldedClass> HintTable::lookup(std::string_view phrase) const {
  auto it = table_.find(std::string(phrase));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void HintTable::insert(std::string phrase, FoldedClass label) {
  table_[std::move(phrase)] = label;
}

std::optional<LinkInstance> build_instance(const Document& doc, const TLinkAnn& link) {
  ResolvedLink resolved = resolve_tlink(doc, link);
  if (!resolved.is_event_event) return std::nullopt;

  Fold folded = fold(link.rel_type);
  LinkInstance inst;
  inst.doc_id = doc.doc_id;
  inst.lid = link.lid;
  inst.label = folded.label;
  const ResolvedInterval& a1 = folded.swap_args ? resolved.arg2 : resolved.arg1;
  const ResolvedInterval& a2 = folded.swap_args ? resolved.arg1 : resolved.arg2;
  inst.e1 = make_arg(doc, a1);
  inst.e2 = make_arg(doc, a2);
  if (resolved.signal) {
    inst.signal = SignalInfo{resolved.signal->phrase, resolved.signal->span};
  }
  return inst;
}

FeatureVector extract_base_features(const LinkInstance& inst) {
  FeatureVector fv;
  fv.items.reserve(kBaseArity);
  auto put = [&fv](std::string_view name, std::string value) {
    fv.items.push_back({std::string(name), std::move(value)});
  };
  put("e1.class", inst.e1.event_class);
  put("e1.tense", inst.e1.tense);
  put("e1.aspect", inst.e1.aspect);
  put("e1.modality", inst.e1.modality);
  put("e1.negation", bool_str(inst.e1.polarity == "NEG"));
  put("e1.string", inst.e1.text_lower);
  put("e2.class", inst.e2.event_class);
  put("e2.tense", inst.e2.tense);
  put("e2.aspect", inst.e2.aspect);
  put("e2.modality", inst.e2.modality);
  put("e2.negation", bool_str(inst.e2.polarity == "NEG"));
  put("e2.string", inst.e2.text_lower);
  put("sameTense", bool_str(inst.e1.tense == inst.e2.tense));
  put("sameAspect", bool_str(inst.e1.aspect == inst.e2.aspect));
  return fv;
}

FeatureVector extract_signal_features(const LinkInstance& inst, const HintTable* hints) {
  FeatureVector fv;
  auto put = [&fv](std::string_view name, std::string value) {
    fv.items.push_back({std::string(name), std::move(value)});
  };

  const bool sig = inst.has_signal();
  put("sig.phrase", sig ? inst.signal->phrase : "NONE");
  put("order.e1e2", span_precedes(inst.e1.span, inst.e2.span) ? "e1-e2" : "e2-e1");
  if (sig) {
    put("order.sig_e1",
        span_precedes(inst.signal->span, inst.e1.span) ? "sig-first" : "sig-second");
    put("order.sig_e2",
        span_precedes(inst.signal->span, inst.e2.span) ? "sig-first" : "sig-second");
  } else {
    put("order.sig_e1", "none");
    put("order.sig_e2", "none");
  }
  put("dist.tok.e1e2", token_distance_bucket(span_token_distance(inst.e1.span, inst.e2.span)));
  put("dist.sent.e1e2",
      sentence_distance_bucket(std::abs(inst.e1.sentence - inst.e2.sentence)));
  if (sig) {
    put("dist.tok.sig_e1",
        token_distance_bucket(span_token_distance(inst.signal->span, inst.e1.span)));
    put("dist.tok.sig_e2",
        token_distance_bucket(span_token_distance(inst.signal->span, inst.e2.span)));
  } else {
    put("dist.tok.sig_e1", "NONE");
    put("dist.tok.sig_e2", "NONE");
  }
  if (hints) {
    std::optional<FoldedClass> hint =
        sig ? hints->lookup(inst.signal->phrase) : std::nullopt;
    put("hint", hint ? std::string(to_string(*hint)) : "NONE");
  }
  return fv;
}

FeatureVector extract_features(const LinkInstance& inst, FeatureSet fs,
                               const HintTable* hints) {
  FeatureVector fv = extract_base_features(inst);
  if (fs == FeatureSet::Base) return fv;
  FeatureVector sig =
      extract_signal_features(inst, fs == FeatureSet::BaseSignalHint ? hints : nullptr);
  if (fs == FeatureSet::BaseSignalHint && !hints) {
    sig.items.push_back({"hint", "NONE"});
  }
  fv.items.insert(fv.items.end(), std::make_move_iterator(sig.items.begin()),
                  std::make_move_iterator(sig.items.end()));
  return fv;
}

HintTable compute_hint_table(std::span<const LinkInstance> training) {
  return HintTable::from_training(training);
}

std::vector<LinkInstance> build_dataset(std::span<const Document> docs) {
  std::vector<LinkInstance> out;
  for (const Document& doc : docs) {
    for (const TLinkAnn& link : doc.tlinks) {
      std::optional<LinkInstance> inst = build_instance(doc, link);
      if (!inst) continue;
      inst->features = extract_features(*inst, FeatureSet::BaseSignal);
      out.push_back(std::move(*inst));
    }
  }
  return out;
}

}  // namespace siglink
