#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "genelink/cbf.hpp"
#include "genelink/gbf.hpp"
#include "genelink/triple_store.hpp"

namespace genelink {

/// Feature-group switches. All groups participate by default.
struct FeatureGroups {
  bool entropy = true;
  bool cooccurrence = true;
  bool grade = true;
  bool odds = true;
  bool tfidf = true;
  bool connectivity = true;
  bool signatures = true;

  /// Parses a comma-separated group list ("entropy,odds,signatures");
  /// "all" selects everything. Throws std::invalid_argument on unknown names.
  static FeatureGroups parse(const std::string& csv);
  std::string to_string() const;

  bool operator==(const FeatureGroups&) const = default;
};

struct LabeledPair {
  std::string disease;
  std::string gene;
  int label = 0;  // 1 positive, 0 negative

  bool operator==(const LabeledPair&) const = default;
};

struct SchemaEntry {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const SchemaEntry&) const = default;
};

/// Named raw (unscaled) features of a pair under the given groups.
/// Signature features carry their store-normalized values; only signatures
/// present on the gene appear.
std::map<std::string, double> raw_features(const TripleStore& store, const GbfTable& gbf,
                                           const std::string& disease, const std::string& gene,
                                           const FeatureGroups& groups);

/// Information gain of a binary split over a binary label, in bits.
double information_gain(std::size_t pos_present, std::size_t pos_absent,
                        std::size_t neg_present, std::size_t neg_absent);

/// Signatures with a positive value for at least one training pair, ranked
/// by information gain of presence against the label; ties by name.
std::vector<std::string> rank_signatures(const GbfTable& gbf,
                                         const std::vector<LabeledPair>& train);

/// Frozen feature layout: names in vector order with training-set scaling
/// bounds. Fit once on training pairs, then applied everywhere.
class FeatureSchema {
 public:
  FeatureSchema() = default;

  /// Selects the top_k best signatures by information gain and records
  /// min/max of every retained feature over the training pairs. Warnings
  /// (top_k above the available inventory) are appended when a sink is given.
  static FeatureSchema fit(const TripleStore& store, const GbfTable& gbf,
                           const std::vector<LabeledPair>& train, const FeatureGroups& groups,
                           std::size_t top_k, std::vector<std::string>* warnings = nullptr);

  const std::vector<SchemaEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t selected_signatures() const { return k_; }
  const FeatureGroups& groups() const { return groups_; }

  std::string serialize() const;
  void save(const std::string& path) const;
  static FeatureSchema parse(const std::string& text, const std::string& origin);
  static FeatureSchema load(const std::string& path);

  /// Stable digest of the serialized schema, embedded in model files.
  std::string digest() const;

  bool operator==(const FeatureSchema&) const = default;

 private:
  std::vector<SchemaEntry> entries_;
  FeatureGroups groups_;
  std::size_t k_ = 0;
};

struct FeatureVector {
  std::string disease;
  std::string gene;
  std::vector<double> values;  // dense, schema order, scaled to [0,1]
  bool known = true;           // false when either id is absent from the store

  bool operator==(const FeatureVector&) const = default;
};

/// Scaled feature vector of a pair under a fitted schema. Unknown ids give
/// the zero vector with known = false.
FeatureVector featurize(const TripleStore& store, const GbfTable& gbf,
                        const FeatureSchema& schema, const std::string& disease,
                        const std::string& gene);

/// Sparse export `label index:value ...`, 1-based indices, nonzero values
/// only; labels written as +1/-1.
void write_sparse_vectors(const std::string& path, const std::vector<FeatureVector>& vectors,
                          const std::vector<int>& labels);

/// Sidecar `index\tname` map for the sparse file.
void write_index_map(const std::string& path, const FeatureSchema& schema);

}  // namespace genelink
