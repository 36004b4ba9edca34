#include "markup.hpp"

#include <cctype>

#include "siglink/errors.hpp"

namespace siglink::markup {

namespace {

bool is_name_char(char c) {
  unsigned char uc = static_cast<unsigned char>(c);
  return std::isalnum(uc) || c == '_' || c == '-' || c == '.' || c == ':';
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Decodes &amp; &lt; &gt; &quot; &apos; and numeric references. Anything else
// is kept literally.
std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(s[i++]);
      continue;
    }
    std::string_view name = s.substr(i + 1, semi - i - 1);
    if (name == "amp") {
      out.push_back('&');
    } else if (name == "lt") {
      out.push_back('<');
    } else if (name == "gt") {
      out.push_back('>');
    } else if (name == "quot") {
      out.push_back('"');
    } else if (name == "apos") {
      out.push_back('\'');
    } else if (!name.empty() && name[0] == '#') {
      long code = 0;
      bool ok = name.size() > 1;
      if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
        for (std::size_t k = 2; k < name.size(); ++k) {
          char c = ascii_lower(name[k]);
          if (c >= '0' && c <= '9') code = code * 16 + (c - '0');
          else if (c >= 'a' && c <= 'f') code = code * 16 + (c - 'a' + 10);
          else { ok = false; break; }
        }
      } else {
        for (std::size_t k = 1; k < name.size(); ++k) {
          if (name[k] >= '0' && name[k] <= '9') code = code * 10 + (name[k] - '0');
          else { ok = false; break; }
        }
      }
      if (ok && code > 0 && code < 0x110000) {
        // UTF-8 encode
        if (code < 0x80) {
          out.push_back(static_cast<char>(code));
        } else if (code < 0x800) {
          out.push_back(static_cast<char>(0xC0 | (code >> 6)));
          out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else if (code < 0x10000) {
          out.push_back(static_cast<char>(0xE0 | (code >> 12)));
          out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
          out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else {
          out.push_back(static_cast<char>(0xF0 | (code >> 18)));
          out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
          out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
          out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        }
      } else {
        out.append(s.substr(i, semi - i + 1));
      }
    } else {
      out.append(s.substr(i, semi - i + 1));
    }
    i = semi + 1;
  }
  return out;
}

}  // namespace

bool name_equals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
  }
  return true;
}

const std::string* find_attr(const std::vector<Attr>& attrs,
                             std::initializer_list<std::string_view> names) {
  for (std::string_view n : names) {
    for (const Attr& a : attrs) {
      if (name_equals(a.name, n)) return &a.value;
    }
  }
  return nullptr;
}

void Reader::fail(const std::string& what) const {
  throw MalformedXmlError("markup: " + what + " (byte " + std::to_string(pos_) + ")");
}

void Reader::skip_ws() {
  while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
}

std::string Reader::read_name() {
  std::size_t b = pos_;
  while (pos_ < in_.size() && is_name_char(in_[pos_])) ++pos_;
  if (pos_ == b) fail("expected a name");
  return std::string(in_.substr(b, pos_ - b));
}

Reader::Event Reader::next() {
  while (pos_ < in_.size()) {
    if (in_[pos_] != '<') {
      std::size_t b = pos_;
      std::size_t lt = in_.find('<', pos_);
      if (lt == std::string_view::npos) lt = in_.size();
      pos_ = lt;
      Event ev;
      ev.kind = Kind::Text;
      ev.text = decode_entities(in_.substr(b, lt - b));
      return ev;
    }
    // Prolog, comments, CDATA and DOCTYPE produce no events.
    if (in_.compare(pos_, 4, "<!--") == 0) {
      std::size_t end = in_.find("-->", pos_ + 4);
      if (end == std::string_view::npos) fail("unterminated comment");
      pos_ = end + 3;
      continue;
    }
    if (in_.compare(pos_, 9, "<![CDATA[") == 0) {
      std::size_t end = in_.find("]]>", pos_ + 9);
      if (end == std::string_view::npos) fail("unterminated CDATA section");
      Event ev;
      ev.kind = Kind::Text;
      ev.text = std::string(in_.substr(pos_ + 9, end - pos_ - 9));
      pos_ = end + 3;
      return ev;
    }
    if (in_.compare(pos_, 2, "<?") == 0) {
      std::size_t end = in_.find("?>", pos_ + 2);
      if (end == std::string_view::npos) fail("unterminated processing instruction");
      pos_ = end + 2;
      continue;
    }
    if (in_.compare(pos_, 2, "<!") == 0) {
      // DOCTYPE, possibly with an internal subset.
      std::size_t p = pos_ + 2;
      int bracket = 0;
      for (; p < in_.size(); ++p) {
        if (in_[p] == '[') ++bracket;
        else if (in_[p] == ']') --bracket;
        else if (in_[p] == '>' && bracket <= 0) break;
      }
      if (p >= in_.size()) fail("unterminated declaration");
      pos_ = p + 1;
      continue;
    }
    return read_tag();
  }
  if (!stack_.empty()) fail("unclosed element <" + stack_.back() + ">");
  return Event{};
}

Reader::Event Reader::read_tag() {
  // pos_ sits on '<'
  ++pos_;
  if (pos_ >= in_.size()) fail("dangling '<'");
  Event ev;
  if (in_[pos_] == '/') {
    ++pos_;
    ev.kind = Kind::Close;
    ev.name = read_name();
    skip_ws();
    if (pos_ >= in_.size() || in_[pos_] != '>') fail("malformed close tag </" + ev.name + ">");
    ++pos_;
    if (stack_.empty() || !name_equals(stack_.back(), ev.name)) {
      fail("mismatched close tag </" + ev.name + ">");
    }
    stack_.pop_back();
    return ev;
  }
  ev.name = read_name();
  for (;;) {
    skip_ws();
    if (pos_ >= in_.size()) fail("unterminated tag <" + ev.name + ">");
    if (in_[pos_] == '>') {
      ++pos_;
      ev.kind = Kind::Open;
      stack_.push_back(ev.name);
      return ev;
    }
    if (in_[pos_] == '/') {
      ++pos_;
      if (pos_ >= in_.size() || in_[pos_] != '>') fail("malformed empty tag <" + ev.name + ">");
      ++pos_;
      ev.kind = Kind::Empty;
      return ev;
    }
    Attr attr;
    attr.name = read_name();
    skip_ws();
    if (pos_ >= in_.size() || in_[pos_] != '=') fail("attribute '" + attr.name + "' lacks a value");
    ++pos_;
    skip_ws();
    if (pos_ >= in_.size() || (in_[pos_] != '"' && in_[pos_] != '\'')) {
      fail("attribute '" + attr.name + "' value is not quoted");
    }
    char quote = in_[pos_++];
    std::size_t vb = pos_;
    std::size_t ve = in_.find(quote, vb);
    if (ve == std::string_view::npos) fail("unterminated attribute value for '" + attr.name + "'");
    attr.value = decode_entities(in_.substr(vb, ve - vb));
    pos_ = ve + 1;
    ev.attrs.push_back(std::move(attr));
  }
}

}  // namespace siglink::markup
