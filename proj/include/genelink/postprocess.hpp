#pragma once

#include <string>
#include <vector>

#include "genelink/corpus.hpp"

namespace genelink {

inline constexpr std::string_view kRoleTheme = "theme";
inline constexpr std::string_view kRoleCause = "cause";

/// A gene-to-gene path through a document's event graph, serialized as an
/// alternating sequence of role labels and event types. Freshly extracted
/// paths look like [theme, Negative_regulation, cause, ...]; simplification
/// drops the roles and generalization rewrites the types in place.
struct RawPath {
  std::string subject;  // serialization starts here
  std::string object;
  std::vector<std::string> elements;

  std::string to_string() const;  // ":"-joined
  bool operator==(const RawPath&) const = default;
};

/// A counted interaction edge named by its path signature.
struct GeneTriple {
  std::string subject;
  std::string signature;
  std::string object;

  auto operator<=>(const GeneTriple&) const = default;
};

/// One token of a compressed signature: relation name plus run length.
struct SigToken {
  std::string relation;
  int run = 1;

  bool operator==(const SigToken&) const = default;
};

/// Parses "Reg3" into (Reg, 3), "Binding" into (Binding, 1), etc.
/// Throws std::invalid_argument on malformed tokens.
std::vector<SigToken> parse_signature(const std::string& signature);
std::string signature_string(const std::vector<SigToken>& tokens);

/// Expands run lengths back to one token per edge: "Reg3" -> Reg:Reg:Reg.
std::string decompress(const std::string& signature);

/// Step 3a. Breaks the document's event nest into one path per unordered
/// gene pair per shortest connecting path (interior nodes are events only).
/// Ties are all emitted, deduplicated by serialized string. The subject is
/// the endpoint mentioned first in the document's gene list, matching the
/// serialization order of the original extraction output.
std::vector<RawPath> rdfify(const AnnotatedDocument& doc);

/// Step 3b. Removes role labels; event types and direction are kept.
RawPath simplify(RawPath path);

/// Step 3c. Maps the nine raw event types onto the five coarse relations
/// {Expression, Catabolism, Localization, Binding, Reg}. Idempotent: coarse
/// names pass through. Throws std::invalid_argument on unknown types.
RawPath generalize(RawPath path);
std::string generalize_type(const std::string& event_type);

/// Step 3d. Collapses maximal runs of an identical relation into
/// relation+run-length ("Reg:Reg:Reg" -> "Reg3"); length-1 runs keep the
/// bare name.
std::string compress(const std::string& signature);

/// Concatenates two compressed signatures and re-compresses across the seam.
std::string compose_signatures(const std::string& first, const std::string& second);

/// Steps 3a-3d for one document: extraction, simplification, generalization
/// and compression, deduplicated and sorted.
std::vector<GeneTriple> extract_interactions(const AnnotatedDocument& doc);

/// Step 3e at the triple-list level: for every chain (a,s1,b),(b,s2,c) with
/// a != c, adds (a, compose(s1,s2), c). Originals are retained; the result
/// is deduplicated and sorted. Corpus-wide joining with provenance tracking
/// lives in TripleStore::join_interactions.
std::vector<GeneTriple> join_paths(const std::vector<GeneTriple>& triples);

}  // namespace genelink
