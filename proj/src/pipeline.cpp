#include "genelink/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "genelink/postprocess.hpp"
#include "genelink/util.hpp"

namespace genelink {

namespace {

std::string join_dir(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

void write_metrics(const std::string& path, const Metrics& model, const Metrics& baseline) {
  std::ostringstream out;
  auto row = [&out](const char* name, const Metrics& m) {
    out << name << '\t' << format_double(m.precision) << '\t' << format_double(m.recall)
        << '\t' << format_double(m.f1) << '\t' << (m.degenerate ? 1 : 0) << '\n';
  };
  row("model", model);
  row("baseline", baseline);
  write_file(path, out.str());
}

void write_summary(const std::string& path, const Metrics& model, const Metrics& baseline,
                   double threshold, const std::string& split) {
  std::ostringstream out;
  out << "evaluation split: " << split << '\n';
  auto block = [&out](const char* name, const Metrics& m) {
    out << name << ": precision " << format_double(m.precision) << ", recall "
        << format_double(m.recall) << ", f1 " << format_double(m.f1);
    if (m.degenerate) out << " (degenerate denominator)";
    out << '\n';
  };
  block("model", model);
  block("baseline", baseline);
  out << "baseline threshold: " << format_double(threshold) << '\n';
  write_file(path, out.str());
}

void write_grid_report(const std::string& path, const GridSearchReport& report) {
  std::ostringstream out;
  out << "#seed\t" << report.seed << '\n';
  out << "#folds_requested\t" << report.folds_requested << '\n';
  out << "#folds_used\t" << report.folds_used << '\n';
  const GridCell& chosen = report.cells[report.chosen];
  out << "#chosen\t" << format_double(chosen.C) << '\t' << format_double(chosen.gamma)
      << '\n';
  for (const auto& cell : report.cells)
    out << format_double(cell.C) << '\t' << format_double(cell.gamma) << '\t'
        << format_double(cell.mean_f1) << '\t' << (cell.converged ? 1 : 0) << '\n';
  write_file(path, out.str());
}

void write_predictions(const std::string& path, const std::vector<Prediction>& predictions) {
  std::ostringstream out;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    out << (i + 1) << '\t' << predictions[i].gene << '\t'
        << format_double(predictions[i].score) << '\t' << predictions[i].corpus_freq << '\n';
  write_file(path, out.str());
}

std::vector<ManifestEntry> options_manifest(const PipelineOptions& options) {
  return {
      {"folds", std::to_string(options.folds)},
      {"groups", options.groups},
      {"policy", options.policy},
      {"seed", std::to_string(options.seed)},
      {"threads", std::to_string(options.threads)},
      {"tol", format_double(options.tol)},
      {"top_k", std::to_string(options.top_k)},
  };
}

}  // namespace

void write_run_manifest(const std::string& out_dir, const std::string& command,
                        std::vector<ManifestEntry> config,
                        const std::vector<std::string>& input_paths) {
  std::sort(config.begin(), config.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.key < b.key; });
  std::ostringstream out;
  out << "command\t" << command << '\n';
  for (const auto& e : config) out << "config." << e.key << '\t' << e.value << '\n';
  std::vector<std::string> inputs = input_paths;
  std::sort(inputs.begin(), inputs.end());
  for (const auto& p : inputs)
    out << "input." << std::filesystem::path(p).filename().string() << '\t'
        << hash_hex(hash_file(p)) << '\n';
  write_file(join_dir(out_dir, "run_manifest"), out.str());
}

IngestReport run_ingest(const std::string& corpus_path, const std::string& out_dir,
                        const PipelineOptions& options) {
  ensure_dir(out_dir);
  std::vector<AnnotatedDocument> docs = parse_corpus(corpus_path);

  std::vector<std::vector<GeneTriple>> triples(docs.size());
  parallel_for(docs.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) triples[i] = extract_interactions(docs[i]);
  });

  TripleStore store;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    store.add_cooccurrences(docs[i]);
    store.add_interactions(docs[i].doc_id, triples[i]);
  }
  store.join_interactions();
  store.persist(join_dir(out_dir, "store.tsv"));
  write_run_manifest(out_dir, "ingest", options_manifest(options), {corpus_path});

  IngestReport report;
  report.n_docs = docs.size();
  report.stats = store.stats();
  return report;
}

TrainReport run_train(const std::string& store_path, const std::string& gold_path,
                      const std::string& out_dir, const PipelineOptions& options) {
  ensure_dir(out_dir);
  TripleStore store = TripleStore::load(store_path);
  GoldStandard gold = GoldStandard::load(gold_path);

  TrainReport report;
  std::vector<DatasetRow> rows = build_dataset(gold, store, options.seed, &report.dataset_log);
  save_dataset(join_dir(out_dir, "dataset.tsv"), rows);
  std::vector<DatasetRow> train_rows = filter_split(rows, "train");
  std::vector<DatasetRow> test_rows = filter_split(rows, "test");

  GbfTable gbf(store);
  std::vector<LabeledPair> train_pairs;
  train_pairs.reserve(train_rows.size());
  for (const auto& r : train_rows) train_pairs.push_back({r.disease, r.gene, r.label});
  FeatureGroups groups = FeatureGroups::parse(options.groups);
  FeatureSchema schema =
      FeatureSchema::fit(store, gbf, train_pairs, groups, options.top_k, &report.warnings);
  schema.save(join_dir(out_dir, "schema.tsv"));
  write_index_map(join_dir(out_dir, "feature_index.tsv"), schema);

  auto featurize_rows = [&](const std::vector<DatasetRow>& subset) {
    std::vector<FeatureVector> vectors(subset.size());
    parallel_for(subset.size(), options.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        vectors[i] = featurize(store, gbf, schema, subset[i].disease, subset[i].gene);
    });
    return vectors;
  };
  std::vector<FeatureVector> train_vectors = featurize_rows(train_rows);
  std::vector<FeatureVector> test_vectors = featurize_rows(test_rows);
  auto labels_of = [](const std::vector<DatasetRow>& subset) {
    std::vector<int> labels;
    labels.reserve(subset.size());
    for (const auto& r : subset) labels.push_back(r.label == 1 ? 1 : -1);
    return labels;
  };
  std::vector<int> train_labels = labels_of(train_rows);
  std::vector<int> test_labels = labels_of(test_rows);
  write_sparse_vectors(join_dir(out_dir, "features_train.sparse"), train_vectors,
                       train_labels);
  write_sparse_vectors(join_dir(out_dir, "features_test.sparse"), test_vectors, test_labels);

  std::vector<std::vector<double>> train_x;
  train_x.reserve(train_vectors.size());
  for (const auto& v : train_vectors) train_x.push_back(v.values);
  GridSearchResult searched =
      grid_search(train_x, train_labels, default_c_grid(), default_gamma_grid(),
                  options.folds, options.seed, options.tol,
                  static_cast<std::size_t>(options.threads));
  report.grid = searched.report;
  searched.model.schema_digest = schema.digest();
  searched.model.save(join_dir(out_dir, "model.txt"));
  write_grid_report(join_dir(out_dir, "grid_report.tsv"), report.grid);

  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  for (std::size_t i = 0; i < test_vectors.size(); ++i) {
    int pred = searched.model.predict(test_vectors[i].values);
    if (pred > 0 && test_labels[i] > 0) ++tp;
    if (pred > 0 && test_labels[i] < 0) ++fp;
    if (pred < 0 && test_labels[i] > 0) ++fn;
  }
  report.model_test = confusion_metrics(tp, fp, fn);
  report.baseline_threshold = fit_baseline_threshold(store, train_rows);
  report.baseline_test = evaluate_baseline(store, report.baseline_threshold, test_rows);

  write_metrics(join_dir(out_dir, "metrics.tsv"), report.model_test, report.baseline_test);
  write_summary(join_dir(out_dir, "summary.txt"), report.model_test, report.baseline_test,
                report.baseline_threshold, "test");

  std::vector<ManifestEntry> config = options_manifest(options);
  config.push_back({"schema_digest", schema.digest()});
  write_run_manifest(out_dir, "train", std::move(config), {store_path, gold_path});
  return report;
}

PredictReport run_predict(const std::string& store_path, const std::string& model_path,
                          const std::string& schema_path, const std::string& disease,
                          const std::string& out_dir, const PipelineOptions& options) {
  ensure_dir(out_dir);
  TripleStore store = TripleStore::load(store_path);
  SvmModel model = SvmModel::load(model_path);
  FeatureSchema schema = FeatureSchema::load(schema_path);
  if (model.schema_digest != schema.digest())
    throw IoError("model " + model_path + " was trained against a different schema");

  GbfTable gbf(store);
  PredictReport report;
  report.predictions =
      predict_for_disease(store, gbf, schema, model, disease, parse_policy(options.policy),
                          &report.warnings);
  write_predictions(join_dir(out_dir, "predictions.tsv"), report.predictions);

  std::vector<ManifestEntry> config = options_manifest(options);
  config.push_back({"disease", disease});
  write_run_manifest(out_dir, "predict", std::move(config),
                     {store_path, model_path, schema_path});
  return report;
}

SynthResult run_synth(const SynthConfig& config, const std::string& out_dir) {
  ensure_dir(out_dir);
  SynthResult result = generate_corpus(config);
  write_corpus(result.docs, join_dir(out_dir, "corpus.jsonl"));
  result.gold.save(join_dir(out_dir, "gold.tsv"));
  write_truth_report(join_dir(out_dir, "truth.tsv"), result.truth);
  write_run_manifest(out_dir, "synth",
                     {{"n_diseases", std::to_string(config.n_diseases)},
                      {"n_genes", std::to_string(config.n_genes)},
                      {"n_docs", std::to_string(config.n_docs)},
                      {"assoc_density", format_double(config.assoc_density)},
                      {"signal_strength", format_double(config.signal_strength)},
                      {"interaction_density", format_double(config.interaction_density)},
                      {"noise_rate", format_double(config.noise_rate)},
                      {"seed", std::to_string(config.seed)}},
                     {});
  return result;
}

EvalReport run_eval(const std::string& store_path, const std::string& model_path,
                    const std::string& schema_path, const std::string& dataset_path,
                    const std::string& split, const std::string& out_dir,
                    const PipelineOptions& options) {
  if (split != "train" && split != "test")
    throw std::invalid_argument("split must be train or test");
  ensure_dir(out_dir);
  TripleStore store = TripleStore::load(store_path);
  SvmModel model = SvmModel::load(model_path);
  FeatureSchema schema = FeatureSchema::load(schema_path);
  if (model.schema_digest != schema.digest())
    throw IoError("model " + model_path + " was trained against a different schema");
  std::vector<DatasetRow> rows = load_dataset(dataset_path);

  GbfTable gbf(store);
  EvalReport report;
  report.split = split;
  std::vector<DatasetRow> eval_rows = filter_split(rows, split);
  report.model_metrics = evaluate_model(store, gbf, schema, model, eval_rows);
  report.baseline_threshold = fit_baseline_threshold(store, filter_split(rows, "train"));
  report.baseline_metrics = evaluate_baseline(store, report.baseline_threshold, eval_rows);

  write_metrics(join_dir(out_dir, "metrics.tsv"), report.model_metrics,
                report.baseline_metrics);
  write_summary(join_dir(out_dir, "summary.txt"), report.model_metrics,
                report.baseline_metrics, report.baseline_threshold, split);

  std::vector<ManifestEntry> config = options_manifest(options);
  config.push_back({"split", split});
  write_run_manifest(out_dir, "eval", std::move(config),
                     {store_path, model_path, schema_path, dataset_path});
  return report;
}

}  // namespace genelink
