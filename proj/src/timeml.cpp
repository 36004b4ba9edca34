#include "siglink/timeml.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "markup.hpp"
#include "siglink/errors.hpp"

namespace siglink {

namespace {

using markup::find_attr;
using markup::name_equals;

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Annotation captured during the markup walk, before token spans exist.
struct RawSpanAnn {
  std::string tag;  // EVENT | SIGNAL | TIMEX3
  std::vector<markup::Attr> attrs;
  std::size_t char_begin = 0;
  std::size_t char_end = 0;
};

std::string attr_or(const std::vector<markup::Attr>& attrs,
                    std::initializer_list<std::string_view> names,
                    std::string fallback) {
  const std::string* v = find_attr(attrs, names);
  return v ? *v : std::move(fallback);
}

// Maps a character range of the stripped text onto the tokens it covers.
// Returns false when no token intersects the range.
bool char_range_to_span(const std::vector<Token>& tokens, std::size_t begin,
                        std::size_t end, TokenSpan& out) {
  int first = -1, last = -1;
  for (const Token& t : tokens) {
    if (t.char_end <= begin) continue;
    if (t.char_begin >= end) break;
    if (first < 0) first = t.index;
    last = t.index;
  }
  if (first < 0) return false;
  out = {first, last};
  return true;
}

std::string normalize_phrase(const Document& doc, TokenSpan span) {
  std::string out;
  for (int i = span.first; i <= span.last; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += to_lower(doc.tokens[static_cast<std::size_t>(i)].text);
  }
  return out;
}

bool is_whitespace_only(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

const EventAnn* Document::find_event(std::string_view eid) const {
  for (const EventAnn& e : events)
    if (e.eid == eid) return &e;
  return nullptr;
}

const EventInstance* Document::find_instance(std::string_view eiid) const {
  for (const EventInstance& ei : instances)
    if (ei.eiid == eiid) return &ei;
  return nullptr;
}

const EventInstance* Document::first_instance_of(std::string_view eid) const {
  for (const EventInstance& ei : instances)
    if (ei.eid == eid) return &ei;
  return nullptr;
}

const TimexAnn* Document::find_timex(std::string_view tid) const {
  for (const TimexAnn& t : timexes)
    if (t.tid == tid) return &t;
  return nullptr;
}

const SignalAnn* Document::find_signal(std::string_view sid) const {
  for (const SignalAnn& s : signals)
    if (s.sid == sid) return &s;
  return nullptr;
}

std::string Document::span_text(TokenSpan span) const {
  std::string out;
  for (int i = span.first; i <= span.last; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += tokens[static_cast<std::size_t>(i)].text;
  }
  return out;
}

Document parse_document(std::string_view xml_text, Dialect dialect,
                        std::string doc_id, std::string source_path) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.source_path = std::move(source_path);

  markup::Reader reader(xml_text);
  std::vector<RawSpanAnn> span_anns;
  std::vector<std::vector<markup::Attr>> instance_tags;
  std::vector<std::vector<markup::Attr>> tlink_tags;

  struct OpenSpan {
    std::size_t ann_index;
  };
  // Stack entries parallel to the reader's element stack; -1 for elements we
  // do not capture (TEXT, TimeML, s, ...).
  std::vector<long> capture_stack;
  int top_level_elements = 0;
  bool top_level_text = false;

  auto classify = [](const std::string& name) -> int {
    if (name_equals(name, "EVENT") || name_equals(name, "SIGNAL") ||
        name_equals(name, "TIMEX3"))
      return 1;
    if (name_equals(name, "MAKEINSTANCE")) return 2;
    if (name_equals(name, "TLINK")) return 3;
    return 0;
  };

  for (;;) {
    markup::Reader::Event ev = reader.next();
    if (ev.kind == markup::Reader::Kind::Eof) break;
    switch (ev.kind) {
      case markup::Reader::Kind::Text:
        if (capture_stack.empty() && !is_whitespace_only(ev.text)) top_level_text = true;
        doc.text += ev.text;
        break;
      case markup::Reader::Kind::Open: {
        if (capture_stack.empty()) ++top_level_elements;
        int cls = classify(ev.name);
        if (cls == 1) {
          RawSpanAnn ann;
          ann.tag = ev.name;
          ann.attrs = std::move(ev.attrs);
          ann.char_begin = doc.text.size();
          span_anns.push_back(std::move(ann));
          capture_stack.push_back(static_cast<long>(span_anns.size()) - 1);
        } else {
          if (cls == 2) instance_tags.push_back(std::move(ev.attrs));
          if (cls == 3) tlink_tags.push_back(std::move(ev.attrs));
          capture_stack.push_back(-1);
        }
        break;
      }
      case markup::Reader::Kind::Close: {
        long idx = capture_stack.back();
        capture_stack.pop_back();
        if (idx >= 0) span_anns[static_cast<std::size_t>(idx)].char_end = doc.text.size();
        break;
      }
      case markup::Reader::Kind::Empty: {
        if (capture_stack.empty()) ++top_level_elements;
        int cls = classify(ev.name);
        if (cls == 1) {
          // A self-closed EVENT/SIGNAL/TIMEX3 covers no text.
          throw MalformedXmlError("<" + ev.name + "/> covers no text");
        }
        if (cls == 2) instance_tags.push_back(std::move(ev.attrs));
        if (cls == 3) tlink_tags.push_back(std::move(ev.attrs));
        break;
      }
      case markup::Reader::Kind::Eof:
        break;
    }
  }

  if (dialect == Dialect::TimeBank && (top_level_elements != 1 || top_level_text)) {
    throw MalformedXmlError("TimeBank documents must have a single root element");
  }

  doc.tokens = tokenize(doc.text);

  std::set<std::string> eids, eiids, tids, sids, lids;
  auto claim = [](std::set<std::string>& seen, const std::string& id,
                  std::string_view what) {
    if (id.empty()) throw MalformedXmlError(std::string(what) + " with empty id");
    if (!seen.insert(id).second)
      throw DuplicateIdError("duplicate " + std::string(what) + " id '" + id + "'");
  };

  for (const RawSpanAnn& ann : span_anns) {
    TokenSpan span;
    if (!char_range_to_span(doc.tokens, ann.char_begin, ann.char_end, span)) {
      throw MalformedXmlError("<" + ann.tag + "> covers no tokens");
    }
    if (name_equals(ann.tag, "EVENT")) {
      EventAnn e;
      e.eid = attr_or(ann.attrs, {"eid", "id"}, "");
      e.event_class = attr_or(ann.attrs, {"class"}, "NONE");
      e.span = span;
      claim(eids, e.eid, "EVENT");
      doc.events.push_back(std::move(e));
    } else if (name_equals(ann.tag, "SIGNAL")) {
      SignalAnn s;
      s.sid = attr_or(ann.attrs, {"sid", "id"}, "");
      s.span = span;
      s.phrase = normalize_phrase(doc, span);
      claim(sids, s.sid, "SIGNAL");
      doc.signals.push_back(std::move(s));
    } else {
      TimexAnn t;
      t.tid = attr_or(ann.attrs, {"tid", "id"}, "");
      t.span = span;
      t.value = attr_or(ann.attrs, {"value", "val"}, "");
      t.type = attr_or(ann.attrs, {"type"}, "");
      claim(tids, t.tid, "TIMEX3");
      doc.timexes.push_back(std::move(t));
    }
  }

  for (const auto& attrs : instance_tags) {
    EventInstance ei;
    ei.eiid = attr_or(attrs, {"eiid", "id"}, "");
    ei.eid = attr_or(attrs, {"eventID"}, "");
    ei.tense = attr_or(attrs, {"tense"}, "NONE");
    ei.aspect = attr_or(attrs, {"aspect"}, "NONE");
    ei.polarity = attr_or(attrs, {"polarity"}, "NONE");
    ei.modality = attr_or(attrs, {"modality"}, "NONE");
    claim(eiids, ei.eiid, "MAKEINSTANCE");
    if (ei.eid.empty() || !eids.count(ei.eid)) {
      throw DanglingReferenceError("MAKEINSTANCE '" + ei.eiid +
                                   "' references unknown event '" + ei.eid + "'");
    }
    doc.instances.push_back(std::move(ei));
  }

  // Events with no MAKEINSTANCE get a default instance so that the inline
  // dialect (which has none) is usable end to end.
  for (const EventAnn& e : doc.events) {
    if (doc.first_instance_of(e.eid) != nullptr) continue;
    EventInstance ei;
    ei.eid = e.eid;
    ei.eiid = "synth-" + e.eid;
    while (eiids.count(ei.eiid)) ei.eiid += "+";
    eiids.insert(ei.eiid);
    ei.synthesized = true;
    doc.instances.push_back(std::move(ei));
  }

  for (const auto& attrs : tlink_tags) {
    TLinkAnn link;
    link.lid = attr_or(attrs, {"lid", "id"}, "");
    claim(lids, link.lid, "TLINK");

    const std::string* rel = find_attr(attrs, {"relType"});
    if (!rel) throw MalformedXmlError("TLINK '" + link.lid + "' lacks relType");
    std::optional<RelationType> parsed = parse_relation_type(*rel);
    if (!parsed) {
      throw MalformedXmlError("TLINK '" + link.lid + "' has unknown relType '" + *rel + "'");
    }
    link.rel_type = *parsed;

    if (const std::string* v = find_attr(attrs, {"eventInstanceID"})) {
      link.source = {IntervalRefKind::EventInstance, *v};
    } else if (const std::string* v2 = find_attr(attrs, {"eventID"})) {
      link.source = {IntervalRefKind::Event, *v2};
    } else if (const std::string* v3 = find_attr(attrs, {"timeID"})) {
      link.source = {IntervalRefKind::Timex, *v3};
    } else {
      throw MalformedXmlError("TLINK '" + link.lid + "' lacks a source argument");
    }

    if (const std::string* v = find_attr(attrs, {"relatedToEventInstance"})) {
      link.target = {IntervalRefKind::EventInstance, *v};
    } else if (const std::string* v2 = find_attr(attrs, {"relatedToEvent"})) {
      link.target = {IntervalRefKind::Event, *v2};
    } else if (const std::string* v3 = find_attr(attrs, {"relatedToTime"})) {
      link.target = {IntervalRefKind::Timex, *v3};
    } else {
      throw MalformedXmlError("TLINK '" + link.lid + "' lacks a target argument");
    }

    auto check_ref = [&](const IntervalRef& ref) {
      bool ok = false;
      switch (ref.kind) {
        case IntervalRefKind::EventInstance: ok = eiids.count(ref.id) > 0; break;
        case IntervalRefKind::Event: ok = eids.count(ref.id) > 0; break;
        case IntervalRefKind::Timex: ok = tids.count(ref.id) > 0; break;
      }
      if (!ok) {
        throw DanglingReferenceError("TLINK '" + link.lid +
                                     "' references unknown id '" + ref.id + "'");
      }
    };
    check_ref(link.source);
    check_ref(link.target);

    if (const std::string* sid = find_attr(attrs, {"signalID"})) {
      if (!sids.count(*sid)) {
        throw DanglingReferenceError("TLINK '" + link.lid +
                                     "' references unknown signal '" + *sid + "'");
      }
      link.signal_id = *sid;
    }
    doc.tlinks.push_back(std::move(link));
  }

  return doc;
}

Corpus load_corpus(const std::vector<std::filesystem::path>& paths) {
  namespace fs = std::filesystem;

  std::vector<fs::path> files;
  auto wants = [](const fs::path& p) {
    std::string ext = to_lower(p.extension().string());
    return ext == ".tml" || ext == ".xml";
  };
  for (const fs::path& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& entry : fs::recursive_directory_iterator(p, ec)) {
        if (entry.is_regular_file() && wants(entry.path())) files.push_back(entry.path());
      }
      if (ec) throw IoError("cannot read directory '" + p.string() + "': " + ec.message());
    } else if (fs::is_regular_file(p, ec)) {
      files.push_back(p);
    } else {
      throw IoError("path does not exist: '" + p.string() + "'");
    }
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.string() < b.string(); });
  files.erase(std::unique(files.begin(), files.end()), files.end());

  Corpus corpus;
  for (const fs::path& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      corpus.issues.push_back({file.string(), "cannot open file"});
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      corpus.documents.push_back(
          parse_document(buf.str(), Dialect::Auto, file.string(), file.string()));
    } catch (const Error& e) {
      corpus.issues.push_back({file.string(), e.what()});
    }
  }
  return corpus;
}

ResolvedLink resolve_tlink(const Document& doc, const TLinkAnn& link) {
  auto resolve = [&](const IntervalRef& ref) -> ResolvedInterval {
    ResolvedInterval out;
    switch (ref.kind) {
      case IntervalRefKind::EventInstance: {
        const EventInstance* ei = doc.find_instance(ref.id);
        if (!ei) throw DanglingReferenceError("unknown event instance '" + ref.id + "'");
        const EventAnn* e = doc.find_event(ei->eid);
        if (!e) throw DanglingReferenceError("instance '" + ref.id + "' has no event");
        out.kind = ResolvedInterval::Kind::Event;
        out.instance = ei;
        out.event = e;
        out.span = e->span;
        return out;
      }
      case IntervalRefKind::Event: {
        const EventInstance* ei = doc.first_instance_of(ref.id);
        if (!ei) throw DanglingReferenceError("unknown event '" + ref.id + "'");
        const EventAnn* e = doc.find_event(ref.id);
        out.kind = ResolvedInterval::Kind::Event;
        out.instance = ei;
        out.event = e;
        out.span = e->span;
        return out;
      }
      case IntervalRefKind::Timex: {
        const TimexAnn* t = doc.find_timex(ref.id);
        if (!t) throw DanglingReferenceError("unknown timex '" + ref.id + "'");
        out.kind = ResolvedInterval::Kind::Timex;
        out.timex = t;
        out.span = t->span;
        return out;
      }
    }
    return out;
  };

  ResolvedLink out;
  out.arg1 = resolve(link.source);
  out.arg2 = resolve(link.target);
  if (link.signal_id) {
    out.signal = doc.find_signal(*link.signal_id);
    if (!out.signal) throw DanglingReferenceError("unknown signal '" + *link.signal_id + "'");
  }
  out.is_event_event = out.arg1.kind == ResolvedInterval::Kind::Event &&
                       out.arg2.kind == ResolvedInterval::Kind::Event;
  return out;
}

}  // namespace siglink
