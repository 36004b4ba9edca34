#include "siglink/synth.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "siglink/errors.hpp"
#include "siglink/rng.hpp"

namespace siglink {

namespace {

const std::vector<std::string> kNames = {"Alex",  "Morgan", "Sam",   "Riley", "Jordan",
                                         "Casey", "Taylor", "Quinn", "Avery", "Drew"};

const std::vector<std::string> kVerbs = {
    "danced",  "slept",    "arrived", "departed", "spoke",   "finished", "started",
    "laughed", "traveled", "worked",  "rested",   "cooked",  "painted",  "sang",
    "walked",  "jumped",   "studied", "played",   "waited",  "returned"};

const std::vector<std::string> kEventClasses = {"OCCURRENCE", "STATE", "REPORTING",
                                                "I_ACTION"};

std::string capitalized(const std::string& phrase) {
  std::string out = phrase;
  if (!out.empty())
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::vector<RelationType> fold_preimages(FoldedClass label) {
  std::vector<RelationType> out;
  for (RelationType r : all_relation_types())
    if (fold(r).label == label) out.push_back(r);
  return out;
}

struct LinkPlan {
  FoldedClass label;
  bool signalled = false;
  std::string phrase;
};

}  // namespace

const SignalLexicon& default_signal_lexicon() {
  static const SignalLexicon lexicon = {
      {"before", FoldedClass::BEFORE},
      {"prior to", FoldedClass::BEFORE},
      {"immediately before", FoldedClass::IBEFORE},
      {"just before", FoldedClass::IBEFORE},
      {"as", FoldedClass::BEGINS},
      {"once", FoldedClass::BEGINS},
      {"until", FoldedClass::ENDS},
      {"till", FoldedClass::ENDS},
      {"during", FoldedClass::INCLUDES},
      {"throughout", FoldedClass::INCLUDES},
      {"while", FoldedClass::SIMULTANEOUS},
      {"meanwhile", FoldedClass::SIMULTANEOUS},
  };
  return lexicon;
}

std::vector<SynthFile> generate(const SynthSpec& spec) {
  Rng rng(spec.seed);
  std::vector<SynthFile> files;
  files.reserve(static_cast<std::size_t>(spec.n_docs));

  for (int d = 0; d < spec.n_docs; ++d) {
    std::ostringstream text;
    std::ostringstream links;
    int next_event = 1, next_signal = 1;

    for (int l = 0; l < spec.links_per_doc; ++l) {
      LinkPlan plan;
      plan.signalled = rng.bernoulli(spec.signal_fraction);
      if (plan.signalled) {
        const auto& entry = spec.lexicon[rng.below(spec.lexicon.size())];
        plan.phrase = entry.first;
        plan.label = rng.bernoulli(spec.lexicon_noise)
                         ? static_cast<FoldedClass>(rng.pick_weighted(spec.class_distribution))
                         : entry.second;
      } else {
        plan.label = static_cast<FoldedClass>(rng.pick_weighted(spec.class_distribution));
      }

      std::string id_a = "e" + std::to_string(next_event++);
      std::string id_b = "e" + std::to_string(next_event++);
      const std::string& name_a = kNames[rng.below(kNames.size())];
      const std::string& name_b = kNames[rng.below(kNames.size())];
      const std::string& verb_a = kVerbs[rng.below(kVerbs.size())];
      const std::string& verb_b = kVerbs[rng.below(kVerbs.size())];
      const std::string& class_a = kEventClasses[rng.below(kEventClasses.size())];
      const std::string& class_b = kEventClasses[rng.below(kEventClasses.size())];

      auto event_tag = [](const std::string& id, const std::string& cls,
                          const std::string& word) {
        return "<EVENT id=\"" + id + "\" class=\"" + cls + "\">" + word + "</EVENT>";
      };

      std::string sig_id;
      if (plan.signalled) {
        sig_id = "s" + std::to_string(next_signal++);
        bool medial = rng.below(2) == 0;
        std::string tag_open = "<SIGNAL id=\"" + sig_id + "\">";
        if (medial) {
          // Alex danced before Morgan slept.
          text << name_a << " " << event_tag(id_a, class_a, verb_a) << " " << tag_open
               << plan.phrase << "</SIGNAL> " << name_b << " "
               << event_tag(id_b, class_b, verb_b) << ".\n";
        } else {
          // Alex danced. Before that, Morgan slept.
          text << name_a << " " << event_tag(id_a, class_a, verb_a) << ". " << tag_open
               << capitalized(plan.phrase) << "</SIGNAL> that, " << name_b << " "
               << event_tag(id_b, class_b, verb_b) << ".\n";
        }
      } else if (rng.below(2) == 0) {
        text << name_a << " " << event_tag(id_a, class_a, verb_a) << " and " << name_b
             << " " << event_tag(id_b, class_b, verb_b) << ".\n";
      } else {
        text << name_a << " " << event_tag(id_a, class_a, verb_a) << ". Later " << name_b
             << " " << event_tag(id_b, class_b, verb_b) << ".\n";
      }

      // Any fold pre-image and either argument orientation express the same
      // folded instance; vary both so the surface corpus is not uniform.
      std::vector<RelationType> candidates = fold_preimages(plan.label);
      RelationType rel = candidates[rng.below(candidates.size())];
      bool a_first = rng.below(2) == 0;
      const std::string& src = a_first ? id_a : id_b;
      const std::string& dst = a_first ? id_b : id_a;
      links << "<TLINK id=\"l" << (l + 1) << "\" eventID=\"" << src
            << "\" relatedToEvent=\"" << dst << "\" relType=\"" << to_string(rel)
            << "\"";
      if (plan.signalled) links << " signalID=\"" << sig_id << "\"";
      links << " />\n";
    }

    SynthFile file;
    std::string num = std::to_string(d);
    file.name = "synth-" + std::string(4 - std::min<std::size_t>(4, num.size()), '0') +
                num + ".tml";
    file.content = text.str() + links.str();
    files.push_back(std::move(file));
  }
  return files;
}

void write_corpus(const SynthSpec& spec, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  for (const SynthFile& file : generate(spec)) {
    std::ofstream out(dir / file.name);
    if (!out) throw IoError("cannot open '" + (dir / file.name).string() + "' for writing");
    out << file.content;
    if (!out) throw IoError("write failed for '" + (dir / file.name).string() + "'");
  }
}

}  // namespace siglink
