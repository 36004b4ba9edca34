#pragma once

#include <span>
#include <string>
#include <vector>

#include "siglink/timeml.hpp"

namespace siglink {

struct PhraseStat {
  std::string phrase;
  std::size_t corpus_freq = 0;  // token-subsequence occurrences, case-insensitive
  std::size_t signal_freq = 0;  // occurrences annotated as SIGNAL
  double likelihood = 0.0;      // signal_freq / corpus_freq
};

// One row per distinct annotated signal phrase with corpus_freq >= min_freq,
// sorted by likelihood descending, then phrase.
std::vector<PhraseStat> signal_phrase_stats(std::span<const Document> docs,
                                            std::size_t min_freq);

struct LinkCounts {
  std::string corpus;
  std::size_t total_tlinks = 0;
  std::size_t with_signal = 0;
  std::size_t without_signal = 0;
  std::size_t event_event_total = 0;
  std::size_t event_event_with_signal = 0;
};

struct CorpusGroup {
  std::string label;
  std::vector<Document> docs;
};

// One row per group plus a trailing "combined" row.
std::vector<LinkCounts> tlink_counts(std::span<const CorpusGroup> groups);

// phrase \t corpus_freq \t signal_freq \t likelihood_pct
std::string phrase_stats_tsv(std::span<const PhraseStat> stats);
std::string phrase_stats_json(std::span<const PhraseStat> stats);

std::string link_counts_tsv(std::span<const LinkCounts> counts);
std::string link_counts_json(std::span<const LinkCounts> counts);

}  // namespace siglink
