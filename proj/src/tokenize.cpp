#include <cctype>

#include "siglink/timeml.hpp"

namespace siglink {

namespace {

bool is_split_punct(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '"': case '(': case ')':
      return true;
    default:
      return false;
  }
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool starts_lowercase(const std::string& s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s[0])) != 0;
}

bool is_sentence_terminator(const std::string& s) {
  return s == "." || s == "!" || s == "?";
}

}  // namespace

std::vector<Token> tokenize(std::string_view raw_text) {
  std::vector<Token> tokens;
  auto emit = [&](std::size_t b, std::size_t e) {
    Token t;
    t.text = std::string(raw_text.substr(b, e - b));
    t.index = static_cast<int>(tokens.size());
    t.char_begin = b;
    t.char_end = e;
    tokens.push_back(std::move(t));
  };

  std::size_t i = 0;
  const std::size_t n = raw_text.size();
  while (i < n) {
    if (is_space(raw_text[i])) {
      ++i;
      continue;
    }
    if (is_split_punct(raw_text[i])) {
      emit(i, i + 1);
      ++i;
      continue;
    }
    std::size_t b = i;
    while (i < n && !is_space(raw_text[i]) && !is_split_punct(raw_text[i])) ++i;
    // Trailing clitic 's becomes its own token.
    if (i - b >= 3 && raw_text[i - 2] == '\'' &&
        (raw_text[i - 1] == 's' || raw_text[i - 1] == 'S')) {
      emit(b, i - 2);
      emit(i - 2, i);
    } else {
      emit(b, i);
    }
  }

  int sentence = 0;
  bool boundary_pending = false;
  for (Token& t : tokens) {
    if (boundary_pending) {
      if (!starts_lowercase(t.text)) ++sentence;
      boundary_pending = false;
    }
    t.sentence_index = sentence;
    if (is_sentence_terminator(t.text)) boundary_pending = true;
  }
  return tokens;
}

}  // namespace siglink
