#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genelink/dataset.hpp"
#include "genelink/featurizer.hpp"
#include "genelink/svm.hpp"
#include "genelink/synth.hpp"
#include "genelink/triple_store.hpp"

namespace genelink {

/// Stage parameters shared by the commands; every field has the built-in
/// default, the config file and CLI flags override.
struct PipelineOptions {
  std::uint64_t seed = 42;
  int threads = 1;
  std::size_t top_k = 50;
  std::string groups = "all";
  std::size_t folds = 5;
  double tol = 1e-3;
  std::string policy = "cooccurring";
};

/// One key=value input record for the run manifest.
struct ManifestEntry {
  std::string key;
  std::string value;
};

/// Writes `run_manifest` into out_dir: the command name, configuration and
/// input digests, sorted by key. No timestamps, so reruns are byte-stable.
void write_run_manifest(const std::string& out_dir, const std::string& command,
                        std::vector<ManifestEntry> config,
                        const std::vector<std::string>& input_paths);

struct IngestReport {
  std::size_t n_docs = 0;
  StoreStats stats;
};

/// corpus JSON lines -> co-occurrence counting, event post-processing with
/// corpus-wide joining, store persisted to out_dir/store.tsv.
IngestReport run_ingest(const std::string& corpus_path, const std::string& out_dir,
                        const PipelineOptions& options);

struct TrainReport {
  Metrics model_test;
  Metrics baseline_test;
  double baseline_threshold = 0.0;
  GridSearchReport grid;
  DatasetBuildLog dataset_log;
  std::vector<std::string> warnings;
};

/// store + gold -> dataset, schema, grid-searched model, metrics, sparse
/// feature exports; everything written under out_dir.
TrainReport run_train(const std::string& store_path, const std::string& gold_path,
                      const std::string& out_dir, const PipelineOptions& options);

struct PredictReport {
  std::vector<Prediction> predictions;
  std::vector<std::string> warnings;
};

/// Ranked positive candidates of one disease -> out_dir/predictions.tsv.
PredictReport run_predict(const std::string& store_path, const std::string& model_path,
                          const std::string& schema_path, const std::string& disease,
                          const std::string& out_dir, const PipelineOptions& options);

/// Synthetic corpus + gold + truth report written under out_dir.
SynthResult run_synth(const SynthConfig& config, const std::string& out_dir);

struct EvalReport {
  Metrics model_metrics;
  Metrics baseline_metrics;
  double baseline_threshold = 0.0;
  std::string split;
};

/// Re-evaluates persisted artifacts on one split of a dataset file.
EvalReport run_eval(const std::string& store_path, const std::string& model_path,
                    const std::string& schema_path, const std::string& dataset_path,
                    const std::string& split, const std::string& out_dir,
                    const PipelineOptions& options);

}  // namespace genelink
