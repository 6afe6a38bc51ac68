#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace genelink {

/// The nine raw event types of the TEES/GENIA extraction scheme.
inline constexpr std::array<std::string_view, 9> kRawEventTypes = {
    "Gene_expression", "Transcription",        "Protein_catabolism",
    "Localization",    "Binding",              "Phosphorylation",
    "Regulation",      "Positive_regulation",  "Negative_regulation"};

bool is_raw_event_type(std::string_view type);

enum class ArgKind { Gene, Event };

/// One argument slot of an event: either a gene mention or a nested event.
struct Argument {
  ArgKind kind = ArgKind::Gene;
  std::string target;

  bool operator==(const Argument&) const = default;
};

struct Event {
  std::string event_id;
  std::string event_type;  // one of kRawEventTypes
  std::vector<Argument> themes;
  std::vector<Argument> causes;

  bool operator==(const Event&) const = default;
};

/// One annotated document: the entity mentions and nested interaction
/// events extracted from it. Immutable after validation.
struct AnnotatedDocument {
  std::string doc_id;
  std::vector<std::string> diseases;
  std::vector<std::string> genes;
  std::vector<Event> events;

  bool operator==(const AnnotatedDocument&) const = default;
};

/// Machine-readable reason codes for rejected documents.
enum class ValidationCode {
  EmptyDocId,
  DuplicateDocId,
  EmptyEntityId,
  InvalidIdCharacter,
  UnknownEventType,
  EmptyEventId,
  DuplicateEventId,
  MissingTheme,
  BadArgumentKind,
  GeneNotListed,
  DanglingArgument,
  EventCycle,
};

std::string_view to_string(ValidationCode code);

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationCode code, std::string doc_id, std::string detail);

  ValidationCode code() const { return code_; }
  const std::string& doc_id() const { return doc_id_; }

 private:
  ValidationCode code_;
  std::string doc_id_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string detail);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Checks every per-document invariant; throws ValidationError on the first
/// violation. Corpus-level doc_id uniqueness is checked by parse_corpus.
void validate(const AnnotatedDocument& doc);

/// Parses and validates a single JSON document object.
AnnotatedDocument parse_document(const std::string& json_text);

/// Parses a JSON Lines corpus file: one document object per line, returned
/// in file order. Malformed lines raise ParseError with the line number;
/// invariant violations raise ValidationError.
std::vector<AnnotatedDocument> parse_corpus(const std::string& path);
std::vector<AnnotatedDocument> parse_corpus_stream(std::istream& in);

/// Serializes one document with fixed key order
/// (doc_id, diseases, genes, events), no whitespace. Byte-stable.
std::string serialize_document(const AnnotatedDocument& doc);

void write_corpus(const std::vector<AnnotatedDocument>& docs, const std::string& path);

}  // namespace genelink
