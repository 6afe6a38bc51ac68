#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "genelink/corpus.hpp"
#include "genelink/pipeline.hpp"
#include "genelink/postprocess.hpp"

namespace py = pybind11;

namespace {

using namespace genelink;

py::dict metrics_dict(const Metrics& m) {
  py::dict d;
  d["precision"] = m.precision;
  d["recall"] = m.recall;
  d["f1"] = m.f1;
  d["degenerate"] = m.degenerate;
  return d;
}

}  // namespace

PYBIND11_MODULE(_genelink, m) {
  m.doc() = "disease-gene association prediction pipeline";

  m.def(
      "ingest",
      [](const std::string& corpus, const std::string& out_dir, int threads) {
        PipelineOptions options;
        options.threads = threads;
        IngestReport r = run_ingest(corpus, out_dir, options);
        py::dict d;
        d["n_docs"] = r.n_docs;
        d["n_diseases"] = r.stats.n_diseases;
        d["n_genes"] = r.stats.n_genes;
        d["cooccurrence_triples"] = r.stats.total_cooccurrence;
        d["interaction_triples"] = r.stats.interaction_count;
        d["signatures"] = r.stats.signature_counts.size();
        return d;
      },
      py::arg("corpus"), py::arg("out_dir"), py::arg("threads") = 1);

  m.def(
      "train",
      [](const std::string& store, const std::string& gold, const std::string& out_dir,
         std::uint64_t seed, std::size_t k, const std::string& groups, std::size_t folds,
         int threads) {
        PipelineOptions options;
        options.seed = seed;
        options.top_k = k;
        options.groups = groups;
        options.folds = folds;
        options.threads = threads;
        TrainReport r = run_train(store, gold, out_dir, options);
        py::dict d;
        d["model"] = metrics_dict(r.model_test);
        d["baseline"] = metrics_dict(r.baseline_test);
        d["baseline_threshold"] = r.baseline_threshold;
        d["chosen_C"] = r.grid.cells[r.grid.chosen].C;
        d["chosen_gamma"] = r.grid.cells[r.grid.chosen].gamma;
        d["cv_f1"] = r.grid.cells[r.grid.chosen].mean_f1;
        d["warnings"] = r.warnings;
        return d;
      },
      py::arg("store"), py::arg("gold"), py::arg("out_dir"), py::arg("seed") = 42,
      py::arg("k") = 50, py::arg("groups") = "all", py::arg("folds") = 5,
      py::arg("threads") = 1);

  m.def(
      "predict",
      [](const std::string& store, const std::string& model, const std::string& schema,
         const std::string& disease, const std::string& out_dir, const std::string& policy) {
        PipelineOptions options;
        options.policy = policy;
        PredictReport r = run_predict(store, model, schema, disease, out_dir, options);
        py::list out;
        for (const auto& p : r.predictions)
          out.append(py::make_tuple(p.gene, p.score, p.corpus_freq));
        return out;
      },
      py::arg("store"), py::arg("model"), py::arg("schema"), py::arg("disease"),
      py::arg("out_dir"), py::arg("policy") = "cooccurring");

  m.def(
      "synth",
      [](const std::string& out_dir, std::size_t diseases, std::size_t genes,
         std::size_t docs, double assoc_density, double signal, double interaction_density,
         double noise, std::uint64_t seed) {
        SynthConfig config;
        config.n_diseases = diseases;
        config.n_genes = genes;
        config.n_docs = docs;
        config.assoc_density = assoc_density;
        config.signal_strength = signal;
        config.interaction_density = interaction_density;
        config.noise_rate = noise;
        config.seed = seed;
        SynthResult r = run_synth(config, out_dir);
        py::dict d;
        d["n_docs"] = r.docs.size();
        d["n_gold"] = r.gold.associations.size();
        return d;
      },
      py::arg("out_dir"), py::arg("diseases") = 40, py::arg("genes") = 120,
      py::arg("docs") = 300, py::arg("assoc_density") = 0.05, py::arg("signal") = 0.6,
      py::arg("interaction_density") = 0.02, py::arg("noise") = 0.05, py::arg("seed") = 42);

  m.def(
      "evaluate",
      [](const std::string& store, const std::string& model, const std::string& schema,
         const std::string& dataset, const std::string& split, const std::string& out_dir) {
        EvalReport r = run_eval(store, model, schema, dataset, split, out_dir, {});
        py::dict d;
        d["model"] = metrics_dict(r.model_metrics);
        d["baseline"] = metrics_dict(r.baseline_metrics);
        d["baseline_threshold"] = r.baseline_threshold;
        return d;
      },
      py::arg("store"), py::arg("model"), py::arg("schema"), py::arg("dataset"),
      py::arg("split") = "test", py::arg("out_dir") = ".");

  m.def(
      "extract_interactions",
      [](const std::string& doc_json) {
        AnnotatedDocument doc = parse_document(doc_json);
        py::list out;
        for (const auto& t : extract_interactions(doc))
          out.append(py::make_tuple(t.subject, t.signature, t.object));
        return out;
      },
      py::arg("doc_json"), "gene interaction triples of one JSON document");

  m.def("compress_signature", &compress, py::arg("signature"));
  m.def("compose_signatures", &compose_signatures, py::arg("first"), py::arg("second"));
}
