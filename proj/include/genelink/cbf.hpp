#pragma once

#include <string>

#include "genelink/triple_store.hpp"

namespace genelink {

/// Co-occurrence based features of one (disease, gene) pair.
struct CbfVector {
  double h_g = 0.0;      // entropy of the gene over its diseases, bits
  double h_d = 0.0;      // entropy of the disease over its genes, bits
  double occ_v1 = 0.0;   // |T_dg| / max_d' |T_d'|
  double occ_v2 = 0.0;   // |T_dg| / max_g' |T_g'|
  double occ_v3 = 0.0;   // |T_dg| / max_(d',g') |T_d'g'|
  double grade_d = 0.0;  // |T_d| / max_d' |T_d'|
  double grade_g = 0.0;  // |T_g| / max_g' |T_g'|
  double odds = 0.0;
  double tfidf = 0.0;

  bool operator==(const CbfVector&) const = default;
};

/// H(g) over p(d|g) = |T_dg|/|T_g|; 0 for a gene with no co-occurrences.
double entropy_gene(const TripleStore& store, const std::string& gene);

/// H(d) over p(g|d); 0 for a disease with no co-occurrences.
double entropy_disease(const TripleStore& store, const std::string& disease);

/// The three Occ normalizations; zeros on an empty store.
void occ(const TripleStore& store, const std::string& disease, const std::string& gene,
         double& v1, double& v2, double& v3);

/// Normalized triple frequencies of the two ids; 0 for unknown ids.
void grades(const TripleStore& store, const std::string& disease, const std::string& gene,
            double& grade_d, double& grade_g);

/// Odds with a 0.5 continuity correction on both denominator factors;
/// 0 when the pair never co-occurs.
double odds(const TripleStore& store, const std::string& disease, const std::string& gene);

/// |T_dg| * ln(|D| / #diseases co-occurring with g); 0 for an unseen gene.
double tfidf_pair(const TripleStore& store, const std::string& disease, const std::string& gene);

CbfVector compute_cbf(const TripleStore& store, const std::string& disease,
                      const std::string& gene);

}  // namespace genelink
