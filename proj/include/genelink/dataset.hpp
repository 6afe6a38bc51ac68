#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "genelink/featurizer.hpp"
#include "genelink/metrics.hpp"
#include "genelink/svm.hpp"
#include "genelink/triple_store.hpp"

namespace genelink {

/// Curated disease-gene associations used as supervision.
struct GoldStandard {
  std::set<std::pair<std::string, std::string>> associations;

  bool contains(const std::string& disease, const std::string& gene) const {
    return associations.count({disease, gene}) > 0;
  }

  /// Two-column TSV; lines starting with # and blank lines are skipped.
  static GoldStandard load(const std::string& path);
  void save(const std::string& path) const;

  bool operator==(const GoldStandard&) const = default;
};

struct DatasetRow {
  std::string disease;
  std::string gene;
  int label = 0;      // 1 positive, 0 negative
  std::string split;  // "train" or "test"

  bool operator==(const DatasetRow&) const = default;
};

struct DatasetBuildLog {
  std::size_t n_positive = 0;
  std::size_t n_negative = 0;
  std::vector<std::string> shortfalls;  // diseases with too few negative candidates
};

/// Positives are gold pairs covered by the store; negatives are sampled per
/// disease from co-occurring non-gold genes, count-matched. The split is
/// pair-level, stratified by label, 20% test (floored per class). Rows come
/// back sorted by (disease, gene). Throws when no positive is covered.
std::vector<DatasetRow> build_dataset(const GoldStandard& gold, const TripleStore& store,
                                      std::uint64_t seed, DatasetBuildLog* log = nullptr);

/// Plain TSV rows disease\tgene\tlabel\tsplit.
void save_dataset(const std::string& path, const std::vector<DatasetRow>& rows);
std::vector<DatasetRow> load_dataset(const std::string& path);

std::vector<DatasetRow> filter_split(const std::vector<DatasetRow>& rows,
                                     const std::string& split);

/// Positive-class metrics of the SVM on the given rows.
Metrics evaluate_model(const TripleStore& store, const GbfTable& gbf,
                       const FeatureSchema& schema, const SvmModel& model,
                       const std::vector<DatasetRow>& rows);

/// Single-feature baseline: positive when Occ v1 >= threshold.
int baseline_classify(const TripleStore& store, const std::string& disease,
                      const std::string& gene, double threshold);

/// Exhaustive F1 scan over the observed training Occ v1 values; the
/// smallest maximizing threshold wins.
double fit_baseline_threshold(const TripleStore& store, const std::vector<DatasetRow>& train);

Metrics evaluate_baseline(const TripleStore& store, double threshold,
                          const std::vector<DatasetRow>& rows);

enum class CandidatePolicy { Cooccurring, GraphExpanded };

CandidatePolicy parse_policy(const std::string& name);
std::string to_string(CandidatePolicy policy);

struct Prediction {
  std::string gene;
  double score = 0.0;  // SVM margin
  std::uint64_t corpus_freq = 0;

  bool operator==(const Prediction&) const = default;
};

/// Candidates of the disease classified positive, sorted by corpus
/// frequency, then margin, then gene id. Unknown disease gives an empty
/// list and a warning.
std::vector<Prediction> predict_for_disease(const TripleStore& store, const GbfTable& gbf,
                                            const FeatureSchema& schema, const SvmModel& model,
                                            const std::string& disease, CandidatePolicy policy,
                                            std::vector<std::string>* warnings = nullptr);

}  // namespace genelink
