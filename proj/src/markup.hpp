#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace siglink::markup {

struct Attr {
  std::string name;
  std::string value;
};

/// Minimal pull reader for the XML subset TimeML files use.
///
/// Handles start/end/empty tags with quoted attributes, character data with
/// the five predefined entities plus numeric references, comments, CDATA,
/// processing instructions and DOCTYPE (the latter three are skipped).
/// Unknown named entities pass through literally; real corpora contain them.
/// Tag nesting is checked; mismatches throw MalformedXmlError.
class Reader {
 public:
  enum class Kind { Text, Open, Close, Empty, Eof };

  struct Event {
    Kind kind = Kind::Eof;
    std::string name;         // Open/Close/Empty
    std::vector<Attr> attrs;  // Open/Empty
    std::string text;         // Text (entity-decoded)
  };

  explicit Reader(std::string_view input) : in_(input) {}

  /// Next markup event; Kind::Eof once input is exhausted. Throws
  /// MalformedXmlError on unparseable input or mismatched nesting.
  Event next();

  /// Number of elements currently open (depth at the point of the last event).
  std::size_t depth() const { return stack_.size(); }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
  std::vector<std::string> stack_;

  [[noreturn]] void fail(const std::string& what) const;
  Event read_tag();
  std::string read_name();
  void skip_ws();
};

/// Case-insensitive ASCII comparison for tag/attribute names.
bool name_equals(std::string_view a, std::string_view b);

/// First value among `attrs` whose name matches any of `names` (in order),
/// compared case-insensitively. Returns nullptr when none match.
const std::string* find_attr(const std::vector<Attr>& attrs,
                             std::initializer_list<std::string_view> names);

}  // namespace siglink::markup
