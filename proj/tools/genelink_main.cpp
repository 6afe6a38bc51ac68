#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "genelink/pipeline.hpp"
#include "genelink/util.hpp"

namespace {

using namespace genelink;

void add_common(CLI::App* cmd, PipelineOptions& options) {
  cmd->add_option("--seed", options.seed, "seed for every random choice of the command");
  cmd->add_option("--threads", options.threads, "worker thread cap")
      ->check(CLI::PositiveNumber);
  cmd->set_config("--config", "", "flat key=value config file; flags override it");
}

void print_stats(const IngestReport& report) {
  const StoreStats& s = report.stats;
  std::cout << "documents\t" << report.n_docs << '\n';
  std::cout << "diseases\t" << s.n_diseases << '\n';
  std::cout << "genes\t" << s.n_genes << '\n';
  std::cout << "cooccurrence_triples\t" << s.total_cooccurrence << '\n';
  std::cout << "interaction_triples\t" << s.interaction_count << '\n';
  std::cout << "signatures\t" << s.signature_counts.size() << '\n';
}

void print_metrics(const char* name, const Metrics& m) {
  std::cout << name << "\tprecision " << format_double(m.precision) << "\trecall "
            << format_double(m.recall) << "\tf1 " << format_double(m.f1) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disease-gene association prediction from annotated document corpora"};
  app.require_subcommand(1);

  std::string corpus_path;
  std::string store_path;
  std::string gold_path;
  std::string model_path;
  std::string schema_path;
  std::string dataset_path;
  std::string out_dir;
  std::string disease;
  std::string split = "test";
  PipelineOptions ingest_opts;
  PipelineOptions train_opts;
  PipelineOptions predict_opts;
  PipelineOptions eval_opts;
  SynthConfig synth_cfg;

  CLI::App* ingest = app.add_subcommand("ingest", "build and persist the triple store");
  ingest->add_option("--corpus", corpus_path, "JSON lines corpus")
      ->required()
      ->check(CLI::ExistingFile);
  ingest->add_option("--out", out_dir, "output directory")->required();
  add_common(ingest, ingest_opts);

  CLI::App* train = app.add_subcommand("train", "fit schema, grid-search the SVM, evaluate");
  train->add_option("--store", store_path, "persisted store")
      ->required()
      ->check(CLI::ExistingFile);
  train->add_option("--gold", gold_path, "gold association TSV")
      ->required()
      ->check(CLI::ExistingFile);
  train->add_option("--out", out_dir, "output directory")->required();
  train->add_option("--k", train_opts.top_k, "signature features to keep");
  train->add_option("--groups", train_opts.groups, "comma-separated feature groups");
  train->add_option("--folds", train_opts.folds, "cross-validation folds");
  train->add_option("--tol", train_opts.tol, "SMO KKT tolerance");
  add_common(train, train_opts);

  CLI::App* predict = app.add_subcommand("predict", "rank candidate genes for one disease");
  predict->add_option("--store", store_path, "persisted store")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--model", model_path, "trained model")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--schema", schema_path, "fitted schema")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--disease", disease, "disease id")->required();
  predict->add_option("--policy", predict_opts.policy,
                      "candidate policy: cooccurring or graph-expanded");
  predict->add_option("--out", out_dir, "output directory")->required();
  add_common(predict, predict_opts);

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus with planted gold");
  synth->add_option("--diseases", synth_cfg.n_diseases, "disease count");
  synth->add_option("--genes", synth_cfg.n_genes, "gene count");
  synth->add_option("--docs", synth_cfg.n_docs, "document count");
  synth->add_option("--assoc-density", synth_cfg.assoc_density, "planted pair density");
  synth->add_option("--signal", synth_cfg.signal_strength, "co-occurrence boost");
  synth->add_option("--interaction-density", synth_cfg.interaction_density,
                    "event probability per gene pair");
  synth->add_option("--noise", synth_cfg.noise_rate, "background co-occurrence rate");
  synth->add_option("--seed", synth_cfg.seed, "generator seed");
  synth->add_option("--out", out_dir, "output directory")->required();
  synth->set_config("--config", "", "flat key=value config file; flags override it");

  CLI::App* eval = app.add_subcommand("eval", "re-evaluate persisted artifacts on a dataset");
  eval->add_option("--store", store_path, "persisted store")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--model", model_path, "trained model")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--schema", schema_path, "fitted schema")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--dataset", dataset_path, "dataset TSV")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--split", split, "train or test");
  eval->add_option("--out", out_dir, "output directory")->required();
  add_common(eval, eval_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ingest->parsed()) {
      print_stats(run_ingest(corpus_path, out_dir, ingest_opts));
    } else if (train->parsed()) {
      TrainReport report = run_train(store_path, gold_path, out_dir, train_opts);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      for (const auto& s : report.dataset_log.shortfalls)
        std::cerr << "negative shortfall: " << s << '\n';
      const GridCell& chosen = report.grid.cells[report.grid.chosen];
      std::cout << "chosen\tC " << format_double(chosen.C) << "\tgamma "
                << format_double(chosen.gamma) << "\tcv_f1 "
                << format_double(chosen.mean_f1) << '\n';
      print_metrics("model", report.model_test);
      print_metrics("baseline", report.baseline_test);
    } else if (predict->parsed()) {
      PredictReport report =
          run_predict(store_path, model_path, schema_path, disease, out_dir, predict_opts);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << "predictions\t" << report.predictions.size() << '\n';
    } else if (synth->parsed()) {
      SynthResult result = run_synth(synth_cfg, out_dir);
      std::cout << "documents\t" << result.docs.size() << '\n';
      std::cout << "gold_pairs\t" << result.gold.associations.size() << '\n';
    } else if (eval->parsed()) {
      EvalReport report = run_eval(store_path, model_path, schema_path, dataset_path, split,
                                   out_dir, eval_opts);
      print_metrics("model", report.model_metrics);
      print_metrics("baseline", report.baseline_metrics);
    }
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
