#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "genelink/triple_store.hpp"

namespace genelink {

/// One normalized path-signature feature of a gene.
struct SignatureFeature {
  std::string signature;
  double value = 0.0;

  bool operator==(const SignatureFeature&) const = default;
};

/// Degree features of Eq. 4 plus the in/out ratio. io_ratio is empty when
/// the gene has no incoming edges.
struct ConnectivityVector {
  double out_1 = 0.0;
  double out_2 = 0.0;
  double out_all = 0.0;
  double in_1 = 0.0;
  double in_2 = 0.0;
  double in_all = 0.0;
  std::optional<double> io_ratio;

  bool operator==(const ConnectivityVector&) const = default;
};

/// Graph-based features, precomputed once per store. Read-only afterwards.
class GbfTable {
 public:
  explicit GbfTable(const TripleStore& store);

  /// Sorted signature inventory of the store.
  const std::vector<std::string>& signatures() const { return signatures_; }

  /// ln(|G| / #distinct sources with an edge into gene); 0 for a gene
  /// without incoming edges (never used as a weight in that case).
  double idf(const std::string& gene) const;

  /// Sum over outgoing edges with this signature of count * idf(target).
  double raw_signature_value(const std::string& gene, const std::string& signature) const;

  /// raw value min-max normalized per signature across all genes.
  double signature_value(const std::string& gene, const std::string& signature) const;

  /// Normalized features for every signature on outgoing edges of the gene,
  /// sorted by signature. Empty for a gene without outgoing edges.
  std::vector<SignatureFeature> signature_features(const std::string& gene) const;

  ConnectivityVector connectivity(const std::string& gene) const;
  std::optional<double> io_ratio(const std::string& gene) const;

 private:
  struct Degrees {
    std::array<std::uint64_t, kMaxPathLength + 1> out{};
    std::array<std::uint64_t, kMaxPathLength + 1> in{};
    std::uint64_t out_total = 0;
    std::uint64_t in_total = 0;
  };

  std::vector<std::string> signatures_;
  std::map<std::string, double> idf_;
  std::map<std::string, std::map<std::string, double>> raw_;   // gene -> signature -> value
  std::map<std::string, std::pair<double, double>> bounds_;    // signature -> (min, max)
  std::map<std::string, Degrees> degrees_;
  std::array<std::uint64_t, kMaxPathLength + 1> max_out_{};
  std::array<std::uint64_t, kMaxPathLength + 1> max_in_{};
  std::uint64_t max_out_total_ = 0;
  std::uint64_t max_in_total_ = 0;
};

}  // namespace genelink
