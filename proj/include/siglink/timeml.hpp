#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "siglink/relations.hpp"

namespace siglink {

/// One whitespace-level token of a document's plain text (markup stripped).
struct Token {
  std::string text;
  int index = 0;           // 0-based document token ordinal
  int sentence_index = 0;  // 0-based sentence ordinal
  std::size_t char_begin = 0;  // byte offsets into Document::text
  std::size_t char_end = 0;
};

/// Inclusive token-index range.
struct TokenSpan {
  int first = 0;
  int last = 0;

  bool operator==(const TokenSpan&) const = default;
};

struct EventAnn {
  std::string eid;
  std::string event_class;  // e.g. OCCURRENCE, REPORTING; NONE when absent
  TokenSpan span;
};

/// A MAKEINSTANCE record (or a synthesized stand-in for events without one).
/// Missing attributes are stored as the sentinel "NONE", never "".
struct EventInstance {
  std::string eiid;
  std::string eid;
  std::string tense = "NONE";
  std::string aspect = "NONE";
  std::string polarity = "NONE";
  std::string modality = "NONE";
  bool synthesized = false;
};

struct TimexAnn {
  std::string tid;
  TokenSpan span;
  std::string value;
  std::string type;
};

struct SignalAnn {
  std::string sid;
  TokenSpan span;
  std::string phrase;  // lowercased, single-space-joined token texts
};

/// What kind of annotation a TLINK argument attribute points at.
enum class IntervalRefKind { EventInstance, Event, Timex };

struct IntervalRef {
  IntervalRefKind kind = IntervalRefKind::Event;
  std::string id;
};

struct TLinkAnn {
  std::string lid;
  IntervalRef source;
  IntervalRef target;
  RelationType rel_type = RelationType::BEFORE;
  std::optional<std::string> signal_id;
};

/// A parsed TimeML document. Immutable after construction; safe to share
/// across threads.
struct Document {
  std::string doc_id;
  std::string source_path;
  std::string text;  // plain text with markup stripped; token offsets index it
  std::vector<Token> tokens;
  std::vector<EventAnn> events;
  std::vector<EventInstance> instances;
  std::vector<TimexAnn> timexes;
  std::vector<SignalAnn> signals;
  std::vector<TLinkAnn> tlinks;

  const EventAnn* find_event(std::string_view eid) const;
  const EventInstance* find_instance(std::string_view eiid) const;
  /// First instance (document order) of the given event, or nullptr.
  const EventInstance* first_instance_of(std::string_view eid) const;
  const TimexAnn* find_timex(std::string_view tid) const;
  const SignalAnn* find_signal(std::string_view sid) const;

  /// Space-joined surface text of a token span.
  std::string span_text(TokenSpan span) const;
};

enum class Dialect { Auto, TimeBank, Inline };

/// Splits raw text into tokens with byte offsets and sentence indices.
///
/// Rules: whitespace separates tokens; each of . , ; : ! ? " ( ) becomes its
/// own token; a trailing clitic 's is split off its word; a sentence boundary
/// follows . ! ? unless the next token starts with a lowercase letter.
std::vector<Token> tokenize(std::string_view raw_text);

/// Parses a TimeML document or fragment into an immutable Document.
///
/// Accepts both the TimeBank id attributes (eid/sid/tid/lid, instance-based
/// TLINK arguments) and the simplified inline form (id=..., eventID /
/// relatedToEvent arguments); the attribute form is detected per tag. Events
/// without any MAKEINSTANCE get one synthesized instance with all attributes
/// NONE. With Dialect::TimeBank the input must be a single-rooted XML
/// document; Auto and Inline also accept fragments.
///
/// Throws MalformedXmlError, DuplicateIdError, DanglingReferenceError.
Document parse_document(std::string_view xml_text, Dialect dialect = Dialect::Auto,
                        std::string doc_id = "", std::string source_path = "");

struct CorpusIssue {
  std::string path;
  std::string message;
};

struct Corpus {
  std::vector<Document> documents;  // sorted by source path
  std::vector<CorpusIssue> issues;
};

/// Loads every .tml/.xml file under the given files or directories.
/// Files that fail to parse become issues, not fatal errors; a path that does
/// not exist throws IoError. Document order is deterministic (sorted by path).
Corpus load_corpus(const std::vector<std::filesystem::path>& paths);

/// A TLINK argument resolved to a concrete annotation with a token span.
struct ResolvedInterval {
  enum class Kind { Event, Timex } kind = Kind::Event;
  const EventInstance* instance = nullptr;  // set when kind == Event
  const EventAnn* event = nullptr;          // set when kind == Event
  const TimexAnn* timex = nullptr;          // set when kind == Timex
  TokenSpan span;
};

struct ResolvedLink {
  ResolvedInterval arg1;
  ResolvedInterval arg2;
  const SignalAnn* signal = nullptr;  // nullptr when the link cites no signal
  bool is_event_event = false;
};

/// Resolves a TLINK's interval references against its document. Event-id
/// references resolve through the event's first (possibly synthesized)
/// instance. Returned pointers are valid while `doc` is alive.
ResolvedLink resolve_tlink(const Document& doc, const TLinkAnn& link);

}  // namespace siglink
