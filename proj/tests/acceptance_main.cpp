// End-to-end acceptance checks. Each criterion prints exactly one
// [PASS]/[FAIL] line on stdout; details of a failure go to stderr. The
// process exits with the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "genelink/cbf.hpp"
#include "genelink/dataset.hpp"
#include "genelink/featurizer.hpp"
#include "genelink/gbf.hpp"
#include "genelink/pipeline.hpp"
#include "genelink/postprocess.hpp"
#include "genelink/svm.hpp"
#include "genelink/synth.hpp"
#include "genelink/triple_store.hpp"
#include "genelink/util.hpp"
#include "oracles.hpp"
#include "reference_qp.hpp"
#include "test_data.hpp"

using namespace genelink;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> errors;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && errors.size() < 8) errors.push_back(what);
    if (!ok && errors.size() == 8) errors.push_back("(further failures suppressed)");
  }
  bool passed() const { return errors.empty(); }
};

bool near(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol + tol * std::max(std::abs(a), std::abs(b));
}

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int hw_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// --------------------------------------------------------------------------
// 1. The golden nested-regulation document reduces to its published triples.

void criterion_golden(Tally& t) {
  auto dir = scratch_dir("genelink_accept_golden");
  write_file((dir / "corpus.jsonl").string(), testdata::golden_json() + "\n");
  std::vector<AnnotatedDocument> docs = parse_corpus((dir / "corpus.jsonl").string());
  t.expect(docs.size() == 1, "golden corpus holds one document");

  std::vector<GeneTriple> triples = extract_interactions(docs.at(0));
  std::vector<GeneTriple> expected = {{"ActD", "Reg", "caspase3"},
                                      {"HSP27", "Reg3", "ActD"},
                                      {"HSP27", "Reg3", "caspase3"}};
  t.expect(triples == expected, "post-processing yields exactly the three published triples");
  std::filesystem::remove_all(dir);
}

// --------------------------------------------------------------------------
// 2. On the default synthetic corpus the trained model beats the
//    co-occurrence baseline: F1 +10 points, recall up, precision within 5.

void criterion_model_vs_baseline(Tally& t) {
  auto dir = scratch_dir("genelink_accept_model");
  PipelineOptions options;
  options.threads = hw_threads();

  run_synth(SynthConfig{}, (dir / "synth").string());
  run_ingest((dir / "synth" / "corpus.jsonl").string(), (dir / "ingest").string(), options);
  TrainReport report = run_train((dir / "ingest" / "store.tsv").string(),
                                 (dir / "synth" / "gold.tsv").string(),
                                 (dir / "train").string(), options);

  const Metrics& model = report.model_test;
  const Metrics& base = report.baseline_test;
  t.expect(model.f1 >= base.f1 + 0.10, "test F1 " + fmt(model.f1) + " vs baseline " +
                                           fmt(base.f1) + " is short of the 10 point margin");
  t.expect(model.recall > base.recall, "test recall " + fmt(model.recall) +
                                           " does not improve on baseline " + fmt(base.recall));
  t.expect(model.precision >= base.precision - 0.05,
           "test precision " + fmt(model.precision) + " drops more than 5 points below " +
               fmt(base.precision));
  std::filesystem::remove_all(dir);
}

// --------------------------------------------------------------------------
// 3. Every feature formula matches an independent recount oracle.

void criterion_formula_oracles(Tally& t) {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 110; ++round) {
    testdata::RandomStore r = testdata::random_store(rng);
    const TripleStore& store = r.store;
    oracle::CooccCounts counts = oracle::CooccCounts::from_docs(r.docs);
    oracle::GraphOracle graph;
    for (std::size_t i = 0; i < r.docs.size(); ++i)
      graph.add_doc(r.docs[i].doc_id, r.triples[i]);
    graph.join();

    std::vector<std::string> diseases = store.diseases();
    std::vector<std::string> genes = store.genes();
    diseases.push_back("Dabsent");
    genes.push_back("Gabsent");
    for (const auto& d : diseases)
      for (const auto& g : genes) {
        CbfVector v = compute_cbf(store, d, g);
        t.expect(near(v.h_d, oracle::entropy_disease(counts, d)), "h_d recount");
        t.expect(near(v.h_g, oracle::entropy_gene(counts, g)), "h_g recount");
        t.expect(near(v.occ_v1, oracle::occ_v1(counts, d, g)), "occ_v1 recount");
        t.expect(near(v.occ_v2, oracle::occ_v2(counts, d, g)), "occ_v2 recount");
        t.expect(near(v.occ_v3, oracle::occ_v3(counts, d, g)), "occ_v3 recount");
        t.expect(near(v.grade_d, oracle::grade_d(counts, d)), "grade_d recount");
        t.expect(near(v.grade_g, oracle::grade_g(counts, g)), "grade_g recount");
        t.expect(near(v.odds, oracle::odds(counts, d, g)), "odds recount");
        t.expect(near(v.tfidf, oracle::tfidf(counts, d, g)), "tfidf recount");
      }

    GbfTable gbf(store);
    std::vector<std::string> store_genes = store.genes();
    for (const auto& g : store_genes) {
      t.expect(near(gbf.idf(g), graph.idf(g, store_genes.size())), "idf recount");
      for (const auto& sig : gbf.signatures()) {
        t.expect(near(gbf.raw_signature_value(g, sig),
                      graph.raw_signature_value(g, sig, store_genes.size())),
                 "raw signature value recount");
        t.expect(near(gbf.signature_value(g, sig),
                      graph.normalized_signature_value(g, sig, store_genes)),
                 "normalized signature value recount");
      }
      ConnectivityVector conn = gbf.connectivity(g);
      auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
      };
      t.expect(near(conn.out_1, ratio(graph.out_degree(g, 1), graph.max_out(store_genes, 1))),
               "out_1 recount");
      t.expect(near(conn.out_2, ratio(graph.out_degree(g, 2), graph.max_out(store_genes, 2))),
               "out_2 recount");
      t.expect(near(conn.out_all, ratio(graph.out_degree(g, 0), graph.max_out(store_genes, 0))),
               "out_all recount");
      t.expect(near(conn.in_1, ratio(graph.in_degree(g, 1), graph.max_in(store_genes, 1))),
               "in_1 recount");
      t.expect(near(conn.in_2, ratio(graph.in_degree(g, 2), graph.max_in(store_genes, 2))),
               "in_2 recount");
      t.expect(near(conn.in_all, ratio(graph.in_degree(g, 0), graph.max_in(store_genes, 0))),
               "in_all recount");
      std::uint64_t in_total = graph.in_degree(g, 0);
      t.expect(conn.io_ratio.has_value() == (in_total > 0), "io_ratio presence");
      if (conn.io_ratio && in_total > 0)
        t.expect(near(*conn.io_ratio, static_cast<double>(graph.out_degree(g, 0)) /
                                          static_cast<double>(in_total)),
                 "io_ratio recount");
    }
  }
}

// --------------------------------------------------------------------------
// 4. SMO agrees with a projected-gradient reference QP solver and satisfies
//    the KKT conditions; the XOR layout trains to accuracy 1.

void criterion_smo(Tally& t) {
  const std::vector<std::vector<double>> xor_x = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  const std::vector<int> xor_y = {-1, -1, 1, 1};
  SvmParams xor_params;
  xor_params.C = 10.0;
  xor_params.gamma = 1.0;
  xor_params.tol = 1e-8;
  SvmModel xor_model = train_svm(xor_x, xor_y, xor_params);
  for (std::size_t i = 0; i < xor_x.size(); ++i)
    t.expect(xor_model.predict(xor_x[i]) == xor_y[i], "XOR point classified correctly");

  std::mt19937_64 rng(171717);
  const double c_values[] = {0.5, 2.0, 10.0};
  const double gamma_values[] = {0.3, 1.0};
  for (int round = 0; round < 50; ++round) {
    std::size_t n = 6 + rand_below(rng, 20);
    std::size_t dim = 2 + rand_below(rng, 3);
    std::vector<std::vector<double>> x(n, std::vector<double>(dim));
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = i % 2 == 0 ? 1 : -1;
      for (std::size_t k = 0; k < dim; ++k) x[i][k] = rand_unit(rng) * 4.0 - 2.0;
      if (y[i] > 0) x[i][0] += 0.5;
    }

    SvmParams params;
    params.C = c_values[round % 3];
    params.gamma = gamma_values[round % 2];
    params.tol = 1e-9;
    TrainInfo info;
    SvmModel model = train_svm(x, y, params, &info);
    oracle::QpSolution ref = oracle::solve_svm_dual(x, y, params.C, params.gamma);
    t.expect(ref.converged, "reference solver converged");
    t.expect(std::abs(info.objective - ref.objective) <=
                 1e-6 * std::max(1.0, std::abs(ref.objective)),
             "objective " + fmt(info.objective) + " vs reference " + fmt(ref.objective));

    for (std::size_t i = 0; i < n; ++i) {
      double alpha = 0.0;
      for (std::size_t s = 0; s < model.sv.size(); ++s)
        if (model.sv[s] == x[i]) alpha = std::abs(model.coef[s]);
      double margin = y[i] * model.decision(x[i]);
      const double kkt = 1e-3;
      if (alpha <= 1e-9) {
        t.expect(margin >= 1.0 - kkt, "zero-alpha point violates KKT: margin " + fmt(margin));
      } else if (alpha >= params.C - 1e-9) {
        t.expect(margin <= 1.0 + kkt, "bounded point violates KKT: margin " + fmt(margin));
      } else {
        t.expect(std::abs(margin - 1.0) <= kkt,
                 "free point violates KKT: margin " + fmt(margin));
      }
    }
  }
}

// --------------------------------------------------------------------------
// 5. Information gain and signature ranking equal exhaustive recomputation.

void criterion_info_gain(Tally& t) {
  std::mt19937_64 rng(5555);
  for (int round = 0; round < 60000; ++round) {
    std::size_t n_pos = rand_below(rng, 251);
    std::size_t n_neg = rand_below(rng, 251);
    std::size_t pos_present = n_pos == 0 ? 0 : rand_below(rng, n_pos + 1);
    std::size_t neg_present = n_neg == 0 ? 0 : rand_below(rng, n_neg + 1);
    double got = information_gain(pos_present, n_pos - pos_present, neg_present,
                                  n_neg - neg_present);
    double want = oracle::info_gain(pos_present, n_pos - pos_present, neg_present,
                                    n_neg - neg_present);
    t.expect(near(got, want) && got >= 0.0, "information gain recount");
  }

  for (int round = 0; round < 30; ++round) {
    TripleStore store;
    std::uint64_t n_docs = 4 + rand_below(rng, 9);
    for (std::uint64_t i = 0; i < n_docs; ++i) {
      AnnotatedDocument doc;
      doc.doc_id = testdata::ident("doc", i);
      doc.diseases = {testdata::ident("D", rand_below(rng, 4))};
      doc.genes = {testdata::ident("G", rand_below(rng, 12))};
      store.add_cooccurrences(doc);
      store.add_interactions(doc.doc_id, testdata::random_triples(rng, 12, 20));
    }
    store.join_interactions();
    GbfTable gbf(store);

    std::vector<std::string> genes = store.genes();
    std::vector<LabeledPair> train;
    std::size_t n_pairs = 20 + rand_below(rng, 481);
    for (std::size_t i = 0; i < n_pairs; ++i)
      train.push_back({testdata::ident("D", rand_below(rng, 4)),
                       genes[rand_below(rng, genes.size())],
                       rand_below(rng, 2) == 0 ? 0 : 1});

    std::map<std::string, std::pair<std::size_t, std::size_t>> presence;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    for (const auto& pair : train) {
      (pair.label == 1 ? n_pos : n_neg) += 1;
      for (const auto& sf : gbf.signature_features(pair.gene))
        if (sf.value > 0.0) {
          auto& slot = presence[sf.signature];
          (pair.label == 1 ? slot.first : slot.second) += 1;
        }
    }
    for (const auto& [sig, c] : presence) {
      double got = information_gain(c.first, n_pos - c.first, c.second, n_neg - c.second);
      double want = oracle::info_gain(c.first, n_pos - c.first, c.second, n_neg - c.second);
      t.expect(near(got, want), "information gain of presence counts");
    }
    std::vector<std::string> want = oracle::rank_by_info_gain(
        presence, n_pos, n_neg, [](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
          return information_gain(a, b, c, d);
        });
    t.expect(rank_signatures(gbf, train) == want, "signature ranking matches exhaustive order");
  }
}

// --------------------------------------------------------------------------
// 6. Identical seeds give byte-identical artifacts end to end.

void criterion_determinism(Tally& t) {
  SynthConfig cfg;
  cfg.n_diseases = 10;
  cfg.n_genes = 40;
  cfg.n_docs = 100;
  cfg.assoc_density = 0.05;

  std::vector<std::filesystem::path> roots;
  std::string disease;
  for (const char* run : {"a", "b"}) {
    auto dir = scratch_dir(std::string("genelink_accept_determinism_") + run);
    roots.push_back(dir);
    PipelineOptions options;
    SynthResult synth = run_synth(cfg, (dir / "synth").string());
    disease = synth.gold.associations.begin()->first;
    run_ingest((dir / "synth" / "corpus.jsonl").string(), (dir / "ingest").string(), options);
    run_train((dir / "ingest" / "store.tsv").string(), (dir / "synth" / "gold.tsv").string(),
              (dir / "train").string(), options);
    run_predict((dir / "ingest" / "store.tsv").string(), (dir / "train" / "model.txt").string(),
                (dir / "train" / "schema.tsv").string(), disease, (dir / "predict").string(),
                options);
  }

  const char* files[] = {"synth/corpus.jsonl", "synth/gold.tsv",      "synth/truth.tsv",
                         "ingest/store.tsv",   "ingest/run_manifest", "train/dataset.tsv",
                         "train/schema.tsv",   "train/model.txt",     "train/grid_report.tsv",
                         "train/metrics.tsv",  "train/run_manifest",  "predict/predictions.tsv",
                         "predict/run_manifest"};
  for (const char* name : files)
    t.expect(read_file((roots[0] / name).string()) == read_file((roots[1] / name).string()),
             std::string("reruns differ in ") + name);
  for (const auto& dir : roots) std::filesystem::remove_all(dir);
}

// --------------------------------------------------------------------------
// 7. Randomized property suites, at least 1000 counted cases.

void criterion_properties(Tally& t) {
  std::mt19937_64 rng(990099);

  // Post-processing idempotence over rdfify output and random signatures.
  for (int round = 0; round < 60; ++round) {
    auto docs = testdata::random_docs(rng);
    for (const auto& doc : docs)
      for (const RawPath& p : rdfify(doc)) {
        RawPath s = simplify(p);
        t.expect(simplify(s) == s, "simplify is idempotent");
        RawPath g = generalize(s);
        t.expect(generalize(g) == g, "generalize is idempotent");
        std::string c = compress(g.to_string());
        t.expect(compress(c) == c, "compress is idempotent");
      }
    for (int i = 0; i < 10; ++i) {
      std::string sig = testdata::random_signature(rng);
      t.expect(compress(compress(decompress(sig))) == compress(decompress(sig)),
               "compress is idempotent on expanded signatures");
    }
  }

  for (int round = 0; round < 40; ++round) {
    testdata::RandomStore r = testdata::random_store(rng, false);

    // Store construction is order-independent.
    std::vector<std::size_t> order(r.docs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    det_shuffle(order, rng);
    TripleStore shuffled;
    for (std::size_t i : order) {
      shuffled.add_cooccurrences(r.docs[i]);
      shuffled.add_interactions(r.docs[i].doc_id, r.triples[i]);
    }
    t.expect(shuffled == r.store, "document order changes the store");

    TripleStore store = r.store;
    store.join_interactions();

    // Handshake: out and in edge counts agree per path length.
    for (int length = 1; length <= 2; ++length) {
      std::uint64_t out_total = 0;
      std::uint64_t in_total = 0;
      for (const auto& g : store.genes()) {
        for (const Edge& e : store.out_edges(g, length)) out_total += e.count;
        for (const Edge& e : store.in_edges(g, length)) in_total += e.count;
      }
      t.expect(out_total == in_total, "handshake identity violated");
    }

    // p(d|g) sums to one for every co-occurring gene.
    for (const auto& g : store.genes()) {
      if (store.t_g(g) == 0) continue;
      double sum = 0.0;
      for (const auto& [d, c] : store.diseases_of_gene(g))
        sum += static_cast<double>(c) / static_cast<double>(store.t_g(g));
      t.expect(near(sum, 1.0), "p(d|g) does not normalize");
    }

    // occ and grade stay in the unit interval.
    for (const auto& d : store.diseases())
      for (const auto& g : store.genes()) {
        CbfVector v = compute_cbf(store, d, g);
        for (double value : {v.occ_v1, v.occ_v2, v.occ_v3, v.grade_d, v.grade_g})
          t.expect(value >= 0.0 && value <= 1.0, "occ/grade out of range");
      }

    // Features scale into [0,1] everywhere, including unknown ids.
    GbfTable gbf(store);
    std::vector<LabeledPair> train;
    for (const auto& d : store.diseases())
      for (const auto& g : store.genes())
        train.push_back({d, g, rand_below(rng, 2) == 0 ? 0 : 1});
    if (!train.empty()) {
      FeatureSchema schema = FeatureSchema::fit(store, gbf, train, FeatureGroups{}, 10);
      std::vector<std::string> probe_genes = store.genes();
      probe_genes.push_back("Gabsent");
      std::vector<std::string> probe_diseases = store.diseases();
      probe_diseases.push_back("Dabsent");
      for (const auto& d : probe_diseases)
        for (const auto& g : probe_genes) {
          FeatureVector v = featurize(store, gbf, schema, d, g);
          for (double value : v.values)
            t.expect(value >= 0.0 && value <= 1.0, "scaled feature out of range");
        }
    }
  }

  // Negative sampling never recycles a gold positive.
  for (int round = 0; round < 50; ++round) {
    testdata::RandomStore r = testdata::random_store(rng);
    GoldStandard gold;
    for (const auto& d : r.store.diseases())
      for (const auto& [g, c] : r.store.genes_of_disease(d))
        if (rand_below(rng, 3) == 0) gold.associations.insert({d, g});
    if (gold.associations.empty()) continue;
    bool covered = false;
    for (const auto& [d, g] : gold.associations)
      if (r.store.t_dg(d, g) > 0) covered = true;
    if (!covered) continue;
    for (const DatasetRow& row : build_dataset(gold, r.store, 7 + round))
      t.expect(row.label == 1 || !gold.contains(row.disease, row.gene),
               "gold positive sampled as negative");
  }

  t.expect(t.checks >= 1000, "property suite ran " + std::to_string(t.checks) + " cases");
}

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;  // 0 disables the budget
  std::function<void(Tally&)> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "golden event nest reduces to the published triples", 1.0, criterion_golden},
      {2, "model beats the co-occurrence baseline on the default synthetic corpus", 120.0,
       criterion_model_vs_baseline},
      {3, "feature formulas match independent recount oracles", 30.0,
       criterion_formula_oracles},
      {4, "SMO matches the reference QP solver and satisfies KKT", 60.0, criterion_smo},
      {5, "information-gain selection equals exhaustive ranking", 10.0, criterion_info_gain},
      {6, "identical seeds give byte-identical artifacts", 0.0, criterion_determinism},
      {7, "randomized property suites hold", 0.0, criterion_properties},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Tally tally;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(tally);
    } catch (const std::exception& e) {
      tally.expect(false, std::string("unexpected exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration_cast<std::chrono::duration<double>>(
            std::chrono::steady_clock::now() - start)
            .count();
    if (c.budget_seconds > 0.0 && elapsed > c.budget_seconds)
      tally.expect(false, "runtime " + fmt(elapsed) + "s exceeds the " +
                              fmt(c.budget_seconds) + "s budget");

    std::ostringstream line;
    line << (tally.passed() ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": "
         << c.title << " (" << tally.checks << " checks, " << fmt(elapsed) << "s)";
    std::cout << line.str() << '\n' << std::flush;
    if (!tally.passed()) {
      ++failures;
      for (const auto& e : tally.errors)
        std::cerr << "  criterion " << c.number << ": " << e << '\n';
    }
  }
  return failures;
}
