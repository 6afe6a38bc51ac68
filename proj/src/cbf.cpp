#include "genelink/cbf.hpp"

#include <cmath>

namespace genelink {

namespace {

double entropy_from_counts(const std::vector<std::pair<std::string, std::uint64_t>>& counts) {
  std::uint64_t total = 0;
  for (const auto& [id, c] : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (const auto& [id, c] : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  // Single-outcome distributions can land at -0.0; keep the sign clean.
  return h <= 0.0 ? 0.0 : h;
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double entropy_gene(const TripleStore& store, const std::string& gene) {
  return entropy_from_counts(store.diseases_of_gene(gene));
}

double entropy_disease(const TripleStore& store, const std::string& disease) {
  return entropy_from_counts(store.genes_of_disease(disease));
}

void occ(const TripleStore& store, const std::string& disease, const std::string& gene,
         double& v1, double& v2, double& v3) {
  const StoreStats& s = store.stats();
  std::uint64_t tdg = store.t_dg(disease, gene);
  v1 = ratio(tdg, s.max_disease_count);
  v2 = ratio(tdg, s.max_gene_count);
  v3 = ratio(tdg, s.max_pair_count);
}

void grades(const TripleStore& store, const std::string& disease, const std::string& gene,
            double& grade_d, double& grade_g) {
  const StoreStats& s = store.stats();
  grade_d = ratio(store.t_d(disease), s.max_disease_count);
  grade_g = ratio(store.t_g(gene), s.max_gene_count);
}

double odds(const TripleStore& store, const std::string& disease, const std::string& gene) {
  double tdg = static_cast<double>(store.t_dg(disease, gene));
  if (tdg == 0.0) return 0.0;
  double td = static_cast<double>(store.t_d(disease));
  double tg = static_cast<double>(store.t_g(gene));
  double t = static_cast<double>(store.total());
  return tdg * (t - tdg) / ((td - tdg + 0.5) * (tg - tdg + 0.5));
}

double tfidf_pair(const TripleStore& store, const std::string& disease,
                  const std::string& gene) {
  std::uint64_t tdg = store.t_dg(disease, gene);
  if (tdg == 0) return 0.0;
  std::size_t df = store.diseases_of_gene(gene).size();
  if (df == 0) return 0.0;
  double idf = std::log(static_cast<double>(store.stats().n_diseases) /
                        static_cast<double>(df));
  return static_cast<double>(tdg) * idf;
}

CbfVector compute_cbf(const TripleStore& store, const std::string& disease,
                      const std::string& gene) {
  CbfVector v;
  v.h_g = entropy_gene(store, gene);
  v.h_d = entropy_disease(store, disease);
  occ(store, disease, gene, v.occ_v1, v.occ_v2, v.occ_v3);
  grades(store, disease, gene, v.grade_d, v.grade_g);
  v.odds = odds(store, disease, gene);
  v.tfidf = tfidf_pair(store, disease, gene);
  return v;
}

}  // namespace genelink
