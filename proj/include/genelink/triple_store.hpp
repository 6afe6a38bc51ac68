#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "genelink/corpus.hpp"
#include "genelink/postprocess.hpp"

namespace genelink {

/// Reserved predicate naming disease-gene co-occurrence edges.
inline constexpr std::string_view kCooccPredicate = "coocc";

/// Maximum interaction path length: direct edges (1) plus one join (2).
inline constexpr int kMaxPathLength = 2;

/// One persisted edge of the triple universe.
struct TripleRecord {
  std::string subject;
  std::string predicate;
  std::string object;
  std::uint64_t count = 0;
  int length = 0;                  // 0 coocc, 1 direct interaction, 2 joined
  std::vector<std::string> docs;   // sorted provenance, |docs| == count

  bool operator==(const TripleRecord&) const = default;
};

/// Aggregate counts every feature formula draws on. Recomputable from the
/// raw records; the store keeps them consistent incrementally.
struct StoreStats {
  std::size_t n_diseases = 0;
  std::size_t n_genes = 0;
  std::uint64_t total_cooccurrence = 0;  // |T|, coocc triples only
  std::uint64_t max_disease_count = 0;   // max over d of |T_d|
  std::uint64_t max_gene_count = 0;      // max over g of |T_g|
  std::uint64_t max_pair_count = 0;      // max over (d,g) of |T_dg|
  std::uint64_t interaction_count = 0;   // counted edges, all lengths
  std::array<std::uint64_t, kMaxPathLength + 1> max_out_by_length{};  // index by l
  std::array<std::uint64_t, kMaxPathLength + 1> max_in_by_length{};
  std::uint64_t max_out_total = 0;
  std::uint64_t max_in_total = 0;
  std::map<std::string, std::uint64_t> signature_counts;

  bool operator==(const StoreStats&) const = default;
};

/// An interaction edge as seen from one gene.
struct Edge {
  std::string signature;
  std::string neighbor;
  std::uint64_t count = 0;

  bool operator==(const Edge&) const = default;
};

/// Counted triple universe: disease-gene co-occurrences plus the gene
/// interaction graph, with per-document provenance. Single writer during
/// the build phase; immutable and freely shareable afterwards.
class TripleStore {
 public:
  /// Records one co-occurrence per (disease, gene) pair of the document.
  /// A pair appearing in one document counts once however often the ids
  /// repeat. Re-adding a doc_id raises ValidationError (duplicate_doc_id).
  void add_cooccurrences(const AnnotatedDocument& doc);

  /// Inserts one counted direct edge per triple, with the document as
  /// provenance. Triples must already be deduplicated per document
  /// (extract_interactions output). Duplicate doc_id raises as above.
  void add_interactions(const std::string& doc_id, const std::vector<GeneTriple>& triples);

  /// Corpus-wide path joining: for every chain (a,s1,b),(b,s2,c) of direct
  /// edges with a != c, inserts (a, compose(s1,s2), c) at length 2 with the
  /// union of both provenance sets. Call once, after all documents.
  void join_interactions();

  // Multiset cardinalities over co-occurrence triples; 0 for unknown ids.
  std::uint64_t t_d(const std::string& disease) const;
  std::uint64_t t_g(const std::string& gene) const;
  std::uint64_t t_dg(const std::string& disease, const std::string& gene) const;
  std::uint64_t total() const;

  /// Outgoing/incoming interaction edges of path length l (1..2); sorted by
  /// (signature, neighbor). Throws std::invalid_argument for l out of range.
  std::vector<Edge> out_edges(const std::string& gene, int length) const;
  std::vector<Edge> in_edges(const std::string& gene, int length) const;
  /// All lengths combined.
  std::vector<Edge> out_edges(const std::string& gene) const;
  std::vector<Edge> in_edges(const std::string& gene) const;

  /// Number of distinct genes with an edge into `gene`.
  std::size_t in_source_count(const std::string& gene) const;

  /// Distinct diseases co-occurring with g, with |T_dg| counts.
  std::vector<std::pair<std::string, std::uint64_t>> diseases_of_gene(const std::string& gene) const;
  /// Distinct genes co-occurring with d, with |T_dg| counts.
  std::vector<std::pair<std::string, std::uint64_t>> genes_of_disease(const std::string& disease) const;

  bool has_disease(const std::string& disease) const;
  bool has_gene(const std::string& gene) const;
  std::vector<std::string> diseases() const;  // sorted
  std::vector<std::string> genes() const;     // sorted; coocc and interaction genes

  const StoreStats& stats() const;

  std::vector<TripleRecord> cooccurrence_records() const;  // sorted
  std::vector<TripleRecord> interaction_records() const;   // sorted

  /// Versioned TSV persistence; load(persist(s)) reproduces the store
  /// exactly, including provenance and stats.
  void persist(const std::string& path) const;
  static TripleStore load(const std::string& path);

  /// Merges another store built from a disjoint document set. Counts add,
  /// provenance unions. Both stores must be unjoined. Associative and
  /// commutative.
  void merge(const TripleStore& other);

  bool joined() const { return joined_; }
  bool operator==(const TripleStore& other) const;

 private:
  struct Cell {
    std::uint64_t count = 0;
    std::set<std::string> docs;

    bool operator==(const Cell&) const = default;
  };
  struct EdgeKey {
    std::string signature;
    std::string object;
    int length = 1;

    auto operator<=>(const EdgeKey&) const = default;
  };

  void bump_coocc(const std::string& d, const std::string& g, const std::string& doc_id);
  void insert_interaction(const std::string& subject, const EdgeKey& key, const Cell& cell);

  std::map<std::string, std::map<std::string, Cell>> coocc_;          // d -> g -> cell
  std::map<std::string, std::map<std::string, std::uint64_t>> coocc_by_gene_;  // g -> d -> count
  std::map<std::string, std::uint64_t> disease_totals_;               // |T_d|
  std::map<std::string, std::uint64_t> gene_totals_;                  // |T_g|
  std::map<std::string, std::map<EdgeKey, Cell>> inter_;              // subject -> edges
  std::map<std::string, std::set<std::pair<std::string, EdgeKey>>> in_index_;  // object -> (subject, key)
  std::set<std::string> genes_;
  std::set<std::string> coocc_docs_;
  std::set<std::string> inter_docs_;
  bool joined_ = false;

  mutable StoreStats stats_cache_;
  mutable bool stats_dirty_ = true;
};

}  // namespace genelink
