#include "genelink/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "genelink/util.hpp"
#include "json.hpp"

namespace genelink {

namespace {

using nlohmann::ordered_json;

bool valid_id(std::string_view id) {
  return !id.empty() && id.find('\t') == std::string_view::npos &&
         id.find('\n') == std::string_view::npos && id.find('\r') == std::string_view::npos;
}

ordered_json argument_to_json(const Argument& a) {
  ordered_json j;
  j["kind"] = a.kind == ArgKind::Gene ? "gene" : "event";
  j["target"] = a.target;
  return j;
}

Argument argument_from_json(const nlohmann::json& j) {
  Argument a;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "gene") {
    a.kind = ArgKind::Gene;
  } else if (kind == "event") {
    a.kind = ArgKind::Event;
  } else {
    throw ValidationError(ValidationCode::BadArgumentKind, "", "argument kind '" + kind + "'");
  }
  a.target = j.at("target").get<std::string>();
  return a;
}

}  // namespace

bool is_raw_event_type(std::string_view type) {
  return std::find(kRawEventTypes.begin(), kRawEventTypes.end(), type) != kRawEventTypes.end();
}

std::string_view to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::EmptyDocId: return "empty_doc_id";
    case ValidationCode::DuplicateDocId: return "duplicate_doc_id";
    case ValidationCode::EmptyEntityId: return "empty_entity_id";
    case ValidationCode::InvalidIdCharacter: return "invalid_id_character";
    case ValidationCode::UnknownEventType: return "unknown_event_type";
    case ValidationCode::EmptyEventId: return "empty_event_id";
    case ValidationCode::DuplicateEventId: return "duplicate_event_id";
    case ValidationCode::MissingTheme: return "missing_theme";
    case ValidationCode::BadArgumentKind: return "bad_argument_kind";
    case ValidationCode::GeneNotListed: return "gene_not_listed";
    case ValidationCode::DanglingArgument: return "dangling_argument";
    case ValidationCode::EventCycle: return "event_cycle";
  }
  return "unknown";
}

ValidationError::ValidationError(ValidationCode code, std::string doc_id, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail +
                         (doc_id.empty() ? "" : " (doc '" + doc_id + "')")),
      code_(code),
      doc_id_(std::move(doc_id)) {}

ParseError::ParseError(std::size_t line, std::string detail)
    : std::runtime_error("parse error at line " + std::to_string(line) + ": " + detail),
      line_(line) {}

void validate(const AnnotatedDocument& doc) {
  if (doc.doc_id.empty())
    throw ValidationError(ValidationCode::EmptyDocId, "", "document has empty doc_id");
  // doc_id additionally excludes ',' so provenance lists stay parseable.
  if (!valid_id(doc.doc_id) || doc.doc_id.find(',') != std::string::npos)
    throw ValidationError(ValidationCode::InvalidIdCharacter, doc.doc_id, "doc_id");

  for (const auto& d : doc.diseases) {
    if (d.empty()) throw ValidationError(ValidationCode::EmptyEntityId, doc.doc_id, "disease id");
    if (!valid_id(d))
      throw ValidationError(ValidationCode::InvalidIdCharacter, doc.doc_id, "disease '" + d + "'");
  }
  std::unordered_set<std::string> gene_set;
  for (const auto& g : doc.genes) {
    if (g.empty()) throw ValidationError(ValidationCode::EmptyEntityId, doc.doc_id, "gene id");
    if (!valid_id(g))
      throw ValidationError(ValidationCode::InvalidIdCharacter, doc.doc_id, "gene '" + g + "'");
    gene_set.insert(g);
  }

  std::unordered_map<std::string, const Event*> events_by_id;
  for (const auto& e : doc.events) {
    if (e.event_id.empty())
      throw ValidationError(ValidationCode::EmptyEventId, doc.doc_id, "event with empty id");
    if (!valid_id(e.event_id))
      throw ValidationError(ValidationCode::InvalidIdCharacter, doc.doc_id,
                            "event '" + e.event_id + "'");
    if (!events_by_id.emplace(e.event_id, &e).second)
      throw ValidationError(ValidationCode::DuplicateEventId, doc.doc_id,
                            "event '" + e.event_id + "'");
    if (!is_raw_event_type(e.event_type))
      throw ValidationError(ValidationCode::UnknownEventType, doc.doc_id,
                            "event '" + e.event_id + "' has type '" + e.event_type + "'");
    if (e.themes.empty())
      throw ValidationError(ValidationCode::MissingTheme, doc.doc_id,
                            "event '" + e.event_id + "'");
  }

  auto check_arg = [&](const Event& e, const Argument& a) {
    if (a.kind == ArgKind::Gene) {
      if (!gene_set.count(a.target))
        throw ValidationError(ValidationCode::GeneNotListed, doc.doc_id,
                              "event '" + e.event_id + "' references gene '" + a.target + "'");
    } else {
      if (!events_by_id.count(a.target))
        throw ValidationError(ValidationCode::DanglingArgument, doc.doc_id,
                              "event '" + e.event_id + "' references event '" + a.target + "'");
    }
  };
  for (const auto& e : doc.events) {
    for (const auto& a : e.themes) check_arg(e, a);
    for (const auto& a : e.causes) check_arg(e, a);
  }

  // Cycle check over event-to-event references (iterative three-color DFS).
  enum class Color { White, Gray, Black };
  std::unordered_map<std::string, Color> color;
  for (const auto& e : doc.events) color[e.event_id] = Color::White;
  for (const auto& root : doc.events) {
    if (color[root.event_id] != Color::White) continue;
    std::vector<std::pair<const Event*, std::size_t>> stack{{&root, 0}};
    color[root.event_id] = Color::Gray;
    while (!stack.empty()) {
      auto& [ev, next] = stack.back();
      std::vector<const Argument*> refs;
      for (const auto& a : ev->themes)
        if (a.kind == ArgKind::Event) refs.push_back(&a);
      for (const auto& a : ev->causes)
        if (a.kind == ArgKind::Event) refs.push_back(&a);
      if (next >= refs.size()) {
        color[ev->event_id] = Color::Black;
        stack.pop_back();
        continue;
      }
      const Event* child = events_by_id.at(refs[next]->target);
      ++next;
      if (color[child->event_id] == Color::Gray)
        throw ValidationError(ValidationCode::EventCycle, doc.doc_id,
                              "cycle through event '" + child->event_id + "'");
      if (color[child->event_id] == Color::White) {
        color[child->event_id] = Color::Gray;
        stack.emplace_back(child, 0);
      }
    }
  }
}

AnnotatedDocument parse_document(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  AnnotatedDocument doc;
  doc.doc_id = j.at("doc_id").get<std::string>();
  if (j.contains("diseases")) doc.diseases = j["diseases"].get<std::vector<std::string>>();
  if (j.contains("genes")) doc.genes = j["genes"].get<std::vector<std::string>>();
  if (j.contains("events")) {
    for (const auto& je : j["events"]) {
      Event e;
      e.event_id = je.at("event_id").get<std::string>();
      e.event_type = je.at("event_type").get<std::string>();
      if (je.contains("themes"))
        for (const auto& ja : je["themes"]) e.themes.push_back(argument_from_json(ja));
      if (je.contains("causes"))
        for (const auto& ja : je["causes"]) e.causes.push_back(argument_from_json(ja));
      doc.events.push_back(std::move(e));
    }
  }
  validate(doc);
  return doc;
}

std::vector<AnnotatedDocument> parse_corpus_stream(std::istream& in) {
  std::vector<AnnotatedDocument> docs;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    AnnotatedDocument doc;
    try {
      doc = parse_document(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    }
    if (!seen_ids.insert(doc.doc_id).second)
      throw ValidationError(ValidationCode::DuplicateDocId, doc.doc_id,
                            "line " + std::to_string(line_no));
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<AnnotatedDocument> parse_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path);
  return parse_corpus_stream(in);
}

std::string serialize_document(const AnnotatedDocument& doc) {
  ordered_json j;
  j["doc_id"] = doc.doc_id;
  j["diseases"] = doc.diseases;
  j["genes"] = doc.genes;
  j["events"] = ordered_json::array();
  for (const auto& e : doc.events) {
    ordered_json je;
    je["event_id"] = e.event_id;
    je["event_type"] = e.event_type;
    je["themes"] = ordered_json::array();
    for (const auto& a : e.themes) je["themes"].push_back(argument_to_json(a));
    je["causes"] = ordered_json::array();
    for (const auto& a : e.causes) je["causes"].push_back(argument_to_json(a));
    j["events"].push_back(std::move(je));
  }
  return j.dump();
}

void write_corpus(const std::vector<AnnotatedDocument>& docs, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write corpus file: " + path);
  for (const auto& doc : docs) out << serialize_document(doc) << '\n';
}

}  // namespace genelink
