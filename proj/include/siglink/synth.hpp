#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "siglink/relations.hpp"

namespace siglink {

// Phrase -> the folded class its links carry (modulo noise).
using SignalLexicon = std::vector<std::pair<std::string, FoldedClass>>;

const SignalLexicon& default_signal_lexicon();

struct SynthSpec {
  int n_docs = 10;
  int links_per_doc = 30;
  std::uint64_t seed = 0;
  // Target proportion of links that carry a SIGNAL.
  double signal_fraction = 0.5;
  // Probability that a signalled link ignores the lexicon and draws its
  // label from class_distribution instead.
  double lexicon_noise = 0.0;
  // Weights per FoldedClass (enum order) for unsignalled links and for
  // noise draws. Deliberately independent of every base feature.
  std::array<double, kNumFoldedClasses> class_distribution = {0.5, 0.1, 0.1,
                                                              0.1, 0.1, 0.1};
  SignalLexicon lexicon = default_signal_lexicon();
};

struct SynthFile {
  std::string name;
  std::string content;
};

// Pure function of the spec: same spec, same bytes.
std::vector<SynthFile> generate(const SynthSpec& spec);

// Writes the generated files under dir (created if missing).
void write_corpus(const SynthSpec& spec, const std::filesystem::path& dir);

}  // namespace siglink
