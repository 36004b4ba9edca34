#include "siglink/stats.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

namespace siglink {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> phrase_tokens(const std::string& phrase) {
  std::vector<std::string> toks;
  std::istringstream in(phrase);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::size_t count_subsequence(const std::vector<std::string>& doc_tokens,
                              const std::vector<std::string>& needle) {
  if (needle.empty() || doc_tokens.size() < needle.size()) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + needle.size() <= doc_tokens.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (doc_tokens[i + j] != needle[j]) {
        match = false;
        break;
      }
    }
    if (match) ++count;
  }
  return count;
}

std::string percent(double ratio) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  out << ratio * 100.0;
  return out.str();
}

}  // namespace

std::vector<PhraseStat> signal_phrase_stats(std::span<const Document> docs,
                                            std::size_t min_freq) {
  std::map<std::string, std::size_t> signal_freq;
  for (const Document& doc : docs)
    for (const SignalAnn& sig : doc.signals) signal_freq[sig.phrase] += 1;

  std::vector<PhraseStat> stats;
  for (const auto& [phrase, freq] : signal_freq) {
    PhraseStat row;
    row.phrase = phrase;
    row.signal_freq = freq;
    std::vector<std::string> needle = phrase_tokens(phrase);
    for (const Document& doc : docs) {
      std::vector<std::string> lowered;
      lowered.reserve(doc.tokens.size());
      for (const Token& t : doc.tokens) lowered.push_back(to_lower(t.text));
      row.corpus_freq += count_subsequence(lowered, needle);
    }
    if (row.corpus_freq < min_freq) continue;
    row.likelihood = row.corpus_freq == 0
                         ? 0.0
                         : static_cast<double>(row.signal_freq) /
                               static_cast<double>(row.corpus_freq);
    stats.push_back(std::move(row));
  }
  std::sort(stats.begin(), stats.end(), [](const PhraseStat& a, const PhraseStat& b) {
    if (a.likelihood != b.likelihood) return a.likelihood > b.likelihood;
    return a.phrase < b.phrase;
  });
  return stats;
}

std::vector<LinkCounts> tlink_counts(std::span<const CorpusGroup> groups) {
  std::vector<LinkCounts> rows;
  LinkCounts combined;
  combined.corpus = "combined";
  for (const CorpusGroup& group : groups) {
    LinkCounts row;
    row.corpus = group.label;
    for (const Document& doc : group.docs) {
      for (const TLinkAnn& link : doc.tlinks) {
        row.total_tlinks += 1;
        bool sig = link.signal_id.has_value();
        if (sig)
          row.with_signal += 1;
        else
          row.without_signal += 1;
        ResolvedLink resolved = resolve_tlink(doc, link);
        if (resolved.is_event_event) {
          row.event_event_total += 1;
          if (sig) row.event_event_with_signal += 1;
        }
      }
    }
    combined.total_tlinks += row.total_tlinks;
    combined.with_signal += row.with_signal;
    combined.without_signal += row.without_signal;
    combined.event_event_total += row.event_event_total;
    combined.event_event_with_signal += row.event_event_with_signal;
    rows.push_back(std::move(row));
  }
  rows.push_back(std::move(combined));
  return rows;
}

std::string phrase_stats_tsv(std::span<const PhraseStat> stats) {
  std::ostringstream out;
  out << "phrase\tcorpus_freq\tsignal_freq\tlikelihood_pct\n";
  for (const PhraseStat& row : stats)
    out << row.phrase << '\t' << row.corpus_freq << '\t' << row.signal_freq << '\t'
        << percent(row.likelihood) << "\n";
  return out.str();
}

std::string phrase_stats_json(std::span<const PhraseStat> stats) {
  nlohmann::json arr = nlohmann::json::array();
  for (const PhraseStat& row : stats) {
    arr.push_back({{"phrase", row.phrase},
                   {"corpus_freq", row.corpus_freq},
                   {"signal_freq", row.signal_freq},
                   {"likelihood", row.likelihood}});
  }
  return arr.dump(2) + "\n";
}

std::string link_counts_tsv(std::span<const LinkCounts> counts) {
  std::ostringstream out;
  out << "corpus\ttotal_tlinks\twith_signal\twith_signal_pct\tevent_event_total\t"
         "event_event_with_signal\n";
  for (const LinkCounts& row : counts) {
    double frac = row.total_tlinks == 0 ? 0.0
                                        : static_cast<double>(row.with_signal) /
                                              static_cast<double>(row.total_tlinks);
    out << row.corpus << '\t' << row.total_tlinks << '\t' << row.with_signal << '\t'
        << percent(frac) << '\t' << row.event_event_total << '\t'
        << row.event_event_with_signal << "\n";
  }
  return out.str();
}

std::string link_counts_json(std::span<const LinkCounts> counts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const LinkCounts& row : counts) {
    arr.push_back({{"corpus", row.corpus},
                   {"total_tlinks", row.total_tlinks},
                   {"with_signal", row.with_signal},
                   {"without_signal", row.without_signal},
                   {"event_event_total", row.event_event_total},
                   {"event_event_with_signal", row.event_event_with_signal}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace siglink
