#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "genelink/dataset.hpp"
#include "oracles.hpp"
#include "test_data.hpp"

using namespace genelink;

namespace {

// One disease co-occurring with n genes, one document per gene so corpus
// frequencies are controllable.
TripleStore star_store(const std::string& disease, int n_genes) {
  TripleStore store;
  for (int g = 0; g < n_genes; ++g) {
    AnnotatedDocument doc;
    doc.doc_id = disease + "_doc" + std::to_string(g);
    doc.diseases = {disease};
    doc.genes = {testdata::ident("G", g)};
    store.add_cooccurrences(doc);
  }
  return store;
}

SvmModel constant_model(double bias) {
  SvmModel m;
  m.C = 1.0;
  m.gamma = 1.0;
  m.b = bias;
  return m;
}

std::string temp_file(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("confusion metrics hand values") {
  auto m = confusion_metrics(3, 1, 2);
  CHECK(m.precision == 0.75);
  CHECK(m.recall == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(m.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_FALSE(m.degenerate);

  m = confusion_metrics(0, 0, 4);
  CHECK(m.precision == 0.0);
  CHECK(m.recall == 0.0);
  CHECK(m.f1 == 0.0);
  CHECK(m.degenerate);

  m = confusion_metrics(0, 3, 0);
  CHECK(m.degenerate);
  CHECK(m.f1 == 0.0);

  m = confusion_metrics(5, 0, 0);
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 1.0);
  CHECK(m.f1 == 1.0);
  CHECK_FALSE(m.degenerate);
}

TEST_CASE("gold standard file round-trip") {
  auto path = temp_file("genelink_gold_test.tsv");
  GoldStandard gold;
  gold.associations = {{"D1", "G1"}, {"D1", "G2"}, {"D2", "G9"}};
  gold.save(path);
  CHECK(GoldStandard::load(path) == gold);
  CHECK(gold.contains("D1", "G2"));
  CHECK_FALSE(gold.contains("D2", "G1"));

  write_file(path, "# comment\n\nD1\tG1\n");
  auto loaded = GoldStandard::load(path);
  CHECK(loaded.associations == decltype(loaded.associations){{"D1", "G1"}});

  write_file(path, "D1\n");
  CHECK_THROWS_AS(GoldStandard::load(path), IoError);
  write_file(path, "D1\t\n");
  CHECK_THROWS_AS(GoldStandard::load(path), IoError);
  std::filesystem::remove(path);
}

TEST_CASE("negatives are count-matched co-occurring non-gold genes") {
  auto store = star_store("D1", 8);
  GoldStandard gold;
  gold.associations = {{"D1", "G0"}, {"D1", "G1"}};

  DatasetBuildLog log;
  auto rows = build_dataset(gold, store, 11, &log);
  CHECK(log.n_positive == 2);
  CHECK(log.n_negative == 2);
  CHECK(log.shortfalls.empty());
  REQUIRE(rows.size() == 4);
  CHECK(std::is_sorted(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.disease, a.gene) < std::tie(b.disease, b.gene);
  }));

  for (const auto& r : rows) {
    CHECK(r.disease == "D1");
    CHECK(store.t_dg(r.disease, r.gene) > 0);
    if (r.label == 1) {
      CHECK(gold.contains(r.disease, r.gene));
    } else {
      CHECK_FALSE(gold.contains(r.disease, r.gene));
    }
    CHECK((r.split == "train" || r.split == "test"));
  }
}

TEST_CASE("negative shortfall is logged and capped") {
  auto store = star_store("D1", 4);
  GoldStandard gold;
  gold.associations = {{"D1", "G0"}, {"D1", "G1"}, {"D1", "G2"}};

  DatasetBuildLog log;
  auto rows = build_dataset(gold, store, 3, &log);
  CHECK(log.n_positive == 3);
  CHECK(log.n_negative == 1);  // only G3 is a candidate
  REQUIRE(log.shortfalls.size() == 1);
  CHECK(log.shortfalls[0].find("D1") == 0);
  REQUIRE(rows.size() == 4);
  int negatives = 0;
  for (const auto& r : rows)
    if (r.label == 0) {
      ++negatives;
      CHECK(r.gene == "G3");
    }
  CHECK(negatives == 1);
}

TEST_CASE("gold pairs outside the store are skipped") {
  auto store = star_store("D1", 4);
  GoldStandard gold;
  gold.associations = {{"D1", "G0"}, {"D1", "ghost"}, {"D9", "G1"}};
  DatasetBuildLog log;
  auto rows = build_dataset(gold, store, 5, &log);
  CHECK(log.n_positive == 1);
  for (const auto& r : rows)
    if (r.label == 1) CHECK(r.gene == "G0");

  GoldStandard uncovered;
  uncovered.associations = {{"D9", "G9"}};
  CHECK_THROWS_AS(build_dataset(uncovered, store, 5), std::runtime_error);
}

TEST_CASE("split holds out twenty percent of each class, floored") {
  auto store = star_store("D1", 12);
  GoldStandard gold;
  for (int g = 0; g < 6; ++g) gold.associations.insert({"D1", testdata::ident("G", g)});

  auto rows = build_dataset(gold, store, 17);
  REQUIRE(rows.size() == 12);
  int pos_test = 0, neg_test = 0, pos_train = 0, neg_train = 0;
  for (const auto& r : rows) {
    if (r.label == 1)
      (r.split == "test" ? pos_test : pos_train) += 1;
    else
      (r.split == "test" ? neg_test : neg_train) += 1;
  }
  CHECK(pos_test == 1);  // 6 / 5 floored
  CHECK(neg_test == 1);
  CHECK(pos_train == 5);
  CHECK(neg_train == 5);
}

TEST_CASE("dataset build is reproducible per seed") {
  auto store = star_store("D1", 10);
  GoldStandard gold;
  gold.associations = {{"D1", "G0"}, {"D1", "G1"}, {"D1", "G2"}};
  auto a = build_dataset(gold, store, 21);
  auto b = build_dataset(gold, store, 21);
  CHECK(a == b);
}

TEST_CASE("dataset file round-trip and validation") {
  auto path = temp_file("genelink_dataset_test.tsv");
  std::vector<DatasetRow> rows = {{"D1", "G1", 1, "train"}, {"D1", "G2", 0, "test"}};
  save_dataset(path, rows);
  CHECK(read_file(path) == "D1\tG1\t1\ttrain\nD1\tG2\t0\ttest\n");
  CHECK(load_dataset(path) == rows);

  write_file(path, "D1\tG1\t2\ttrain\n");
  CHECK_THROWS_AS(load_dataset(path), IoError);
  write_file(path, "D1\tG1\t1\tdev\n");
  CHECK_THROWS_AS(load_dataset(path), IoError);
  write_file(path, "D1\tG1\t1\n");
  CHECK_THROWS_AS(load_dataset(path), IoError);
  std::filesystem::remove(path);

  CHECK(filter_split(rows, "train") == std::vector<DatasetRow>{rows[0]});
  CHECK(filter_split(rows, "test") == std::vector<DatasetRow>{rows[1]});
}

TEST_CASE("model evaluation counts the confusion cells") {
  auto store = star_store("D1", 4);
  GbfTable gbf(store);
  FeatureSchema schema;  // empty schema: every vector is empty

  std::vector<DatasetRow> rows = {{"D1", "G0", 1, "test"},
                                  {"D1", "G1", 1, "test"},
                                  {"D1", "G2", 0, "test"},
                                  {"D1", "G3", 0, "test"}};

  auto all_pos = evaluate_model(store, gbf, schema, constant_model(1.0), rows);
  CHECK(all_pos.precision == 0.5);
  CHECK(all_pos.recall == 1.0);
  CHECK(all_pos.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  auto all_neg = evaluate_model(store, gbf, schema, constant_model(-1.0), rows);
  CHECK(all_neg.degenerate);
  CHECK(all_neg.f1 == 0.0);
}

TEST_CASE("baseline classification thresholds occ v1") {
  auto store = star_store("D1", 3);
  CHECK(baseline_classify(store, "D1", "G0", 0.0) == 1);
  CHECK(baseline_classify(store, "D1", "unseen", 0.0) == 1);  // 0 >= 0
  CHECK(baseline_classify(store, "D1", "unseen", 1e-9) == -1);
  CHECK(baseline_classify(store, "D9", "G0", 0.5) == -1);
}

TEST_CASE("baseline threshold picks the smallest f1 maximizer") {
  // D1 co-occurs once with G0..G2 and three times with G3 (via extra docs).
  TripleStore store;
  for (int g = 0; g < 4; ++g) {
    AnnotatedDocument doc;
    doc.doc_id = testdata::ident("doc", g);
    doc.diseases = {"D1"};
    doc.genes = {testdata::ident("G", g)};
    store.add_cooccurrences(doc);
  }
  for (int extra = 0; extra < 2; ++extra) {
    AnnotatedDocument doc;
    doc.doc_id = testdata::ident("extra", extra);
    doc.diseases = {"D1"};
    doc.genes = {"G3"};
    store.add_cooccurrences(doc);
  }

  // G3 is the positive: its occ v1 (3/6) separates perfectly, and the scan
  // must return exactly that value, not a larger one.
  std::vector<DatasetRow> train = {{"D1", "G0", 0, "train"},
                                   {"D1", "G1", 0, "train"},
                                   {"D1", "G2", 0, "train"},
                                   {"D1", "G3", 1, "train"}};
  double t = fit_baseline_threshold(store, train);
  CHECK(t == 0.5);
  CHECK(evaluate_baseline(store, t, train).f1 == 1.0);

  // With an impossible labeling the scan still returns the best threshold.
  std::vector<DatasetRow> flipped = {{"D1", "G0", 1, "train"}, {"D1", "G3", 0, "train"}};
  double t2 = fit_baseline_threshold(store, flipped);
  double v_g0 = 1.0 / 6.0;
  CHECK(t2 == doctest::Approx(v_g0).epsilon(1e-12));
}

TEST_CASE("baseline threshold matches an exhaustive scan on random stores") {
  std::mt19937_64 rng(139);
  for (int iter = 0; iter < 40; ++iter) {
    auto rs = testdata::random_store(rng, false);
    auto diseases = rs.store.diseases();
    if (diseases.empty()) continue;
    std::vector<DatasetRow> train;
    std::size_t i = 0;
    for (const auto& g : rs.store.genes())
      train.push_back({diseases[0], g, static_cast<int>(i++ % 2), "train"});

    double got = fit_baseline_threshold(rs.store, train);

    // Independent scan over the same candidate set.
    double best_t = 0.0;
    double best_f1 = -1.0;
    std::set<double> cands;
    oracle::CooccCounts cc = oracle::CooccCounts::from_docs(rs.docs);
    for (const auto& r : train) cands.insert(oracle::occ_v1(cc, r.disease, r.gene));
    for (double t : cands) {
      std::uint64_t tp = 0, fp = 0, fn = 0;
      for (const auto& r : train) {
        bool positive = oracle::occ_v1(cc, r.disease, r.gene) >= t;
        if (positive && r.label == 1) ++tp;
        if (positive && r.label == 0) ++fp;
        if (!positive && r.label == 1) ++fn;
      }
      double f1 = confusion_metrics(tp, fp, fn).f1;
      if (f1 > best_f1) {
        best_f1 = f1;
        best_t = t;
      }
    }
    CHECK(got == best_t);
    CHECK(evaluate_baseline(rs.store, got, train).f1 == best_f1);
  }
}

TEST_CASE("candidate policy names") {
  CHECK(parse_policy("cooccurring") == CandidatePolicy::Cooccurring);
  CHECK(parse_policy("graph-expanded") == CandidatePolicy::GraphExpanded);
  CHECK(to_string(CandidatePolicy::Cooccurring) == "cooccurring");
  CHECK(to_string(CandidatePolicy::GraphExpanded) == "graph-expanded");
  CHECK_THROWS_AS(parse_policy("everything"), std::invalid_argument);
}

TEST_CASE("predictions rank by corpus frequency, margin, then gene") {
  // G1 appears in two documents, G0 and G2 in one each.
  TripleStore store;
  for (int g = 0; g < 3; ++g) {
    AnnotatedDocument doc;
    doc.doc_id = testdata::ident("doc", g);
    doc.diseases = {"D1"};
    doc.genes = {testdata::ident("G", g)};
    store.add_cooccurrences(doc);
  }
  AnnotatedDocument extra;
  extra.doc_id = "extra";
  extra.diseases = {"D2"};
  extra.genes = {"G1"};
  store.add_cooccurrences(extra);

  GbfTable gbf(store);
  FeatureSchema schema;
  auto preds = predict_for_disease(store, gbf, schema, constant_model(1.0), "D1",
                                   CandidatePolicy::Cooccurring);
  REQUIRE(preds.size() == 3);
  CHECK(preds[0].gene == "G1");
  CHECK(preds[0].corpus_freq == 2);
  CHECK(preds[1].gene == "G0");  // tie with G2 broken by name
  CHECK(preds[2].gene == "G2");
  for (const auto& p : preds) CHECK(p.score == 1.0);

  // A classifier that rejects everything returns nothing.
  CHECK(predict_for_disease(store, gbf, schema, constant_model(-1.0), "D1",
                            CandidatePolicy::Cooccurring)
            .empty());
}

TEST_CASE("unknown disease yields a warning and no predictions") {
  TripleStore store;
  GbfTable gbf(store);
  FeatureSchema schema;
  std::vector<std::string> warnings;
  auto preds = predict_for_disease(store, gbf, schema, constant_model(1.0), "D9",
                                   CandidatePolicy::Cooccurring, &warnings);
  CHECK(preds.empty());
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("D9") != std::string::npos);
  // And a null sink is fine.
  CHECK(predict_for_disease(store, gbf, schema, constant_model(1.0), "D9",
                            CandidatePolicy::Cooccurring)
            .empty());
}

TEST_CASE("graph expansion adds interaction neighbors within two hops") {
  TripleStore store;
  AnnotatedDocument doc;
  doc.doc_id = "cooc";
  doc.diseases = {"D1"};
  doc.genes = {"A"};
  store.add_cooccurrences(doc);
  // Chain A -> B -> C -> E plus an incoming edge D -> A.
  store.add_interactions("i1", {{"A", "Reg", "B"},
                                {"B", "Reg", "C"},
                                {"C", "Reg", "E"},
                                {"D", "Binding", "A"}});

  GbfTable gbf(store);
  FeatureSchema schema;
  auto near = predict_for_disease(store, gbf, schema, constant_model(1.0), "D1",
                                  CandidatePolicy::Cooccurring);
  REQUIRE(near.size() == 1);
  CHECK(near[0].gene == "A");

  auto wide = predict_for_disease(store, gbf, schema, constant_model(1.0), "D1",
                                  CandidatePolicy::GraphExpanded);
  std::set<std::string> got;
  for (const auto& p : wide) got.insert(p.gene);
  // Two hops reach B and C forward and D backward, but not E.
  CHECK(got == std::set<std::string>{"A", "B", "C", "D"});
}
