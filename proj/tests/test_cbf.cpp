#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "genelink/cbf.hpp"
#include "oracles.hpp"
#include "test_data.hpp"

using namespace genelink;

namespace {

// One disease co-occurring once with each of n genes.
TripleStore uniform_store(int n_genes) {
  TripleStore store;
  AnnotatedDocument doc;
  doc.doc_id = "d";
  doc.diseases = {"D1"};
  for (int g = 0; g < n_genes; ++g) doc.genes.push_back(testdata::ident("G", g));
  store.add_cooccurrences(doc);
  return store;
}

TripleStore from_docs(const std::vector<AnnotatedDocument>& docs) {
  TripleStore store;
  for (const auto& doc : docs) store.add_cooccurrences(doc);
  return store;
}

}  // namespace

TEST_CASE("entropy of a uniform four-way split is two bits") {
  auto store = uniform_store(4);
  CHECK(entropy_disease(store, "D1") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(entropy_gene(store, "G0") == 0.0);  // each gene sees one disease
}

TEST_CASE("entropy is zero for a single partner and for unknown ids") {
  auto store = uniform_store(1);
  CHECK(entropy_disease(store, "D1") == 0.0);
  CHECK(entropy_gene(store, "G0") == 0.0);
  CHECK(entropy_disease(store, "nope") == 0.0);
  CHECK(entropy_gene(store, "nope") == 0.0);
}

TEST_CASE("skewed split entropy") {
  // Counts 3 and 1: H = 2 - 0.75*log2(3) bits.
  TripleStore store;
  for (int i = 0; i < 3; ++i) {
    AnnotatedDocument doc;
    doc.doc_id = testdata::ident("a", i);
    doc.diseases = {"D1"};
    doc.genes = {"G1"};
    store.add_cooccurrences(doc);
  }
  AnnotatedDocument doc;
  doc.doc_id = "b";
  doc.diseases = {"D1"};
  doc.genes = {"G2"};
  store.add_cooccurrences(doc);
  double want = 2.0 - 0.75 * std::log2(3.0);
  CHECK(entropy_disease(store, "D1") == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("odds hand values") {
  // Singleton store: |T|=1, |T_dg|=1 -> numerator 1*(1-1)=0.
  auto store = uniform_store(1);
  CHECK(odds(store, "D1", "G0") == 0.0);
  CHECK(odds(store, "D1", "missing") == 0.0);

  // |T|=10, |T_dg|=1, |T_d|=|T_g|=2: 1*9 / (1.5*1.5) = 4.0.
  TripleStore ten;
  {
    AnnotatedDocument doc;
    doc.doc_id = "pair";
    doc.diseases = {"D0"};
    doc.genes = {"G0"};
    ten.add_cooccurrences(doc);
    AnnotatedDocument x1;
    x1.doc_id = "x1";
    x1.diseases = {"D0"};
    x1.genes = {"Gx"};
    ten.add_cooccurrences(x1);
    AnnotatedDocument x2;
    x2.doc_id = "x2";
    x2.diseases = {"Dx"};
    x2.genes = {"G0"};
    ten.add_cooccurrences(x2);
    for (int i = 1; i <= 7; ++i) {
      AnnotatedDocument filler;
      filler.doc_id = testdata::ident("f", i);
      filler.diseases = {testdata::ident("D", i)};
      filler.genes = {testdata::ident("G", i)};
      ten.add_cooccurrences(filler);
    }
  }
  REQUIRE(ten.total() == 10);
  CHECK(odds(ten, "D0", "G0") == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("odds grows with pair support against a fixed background") {
  // Same background mass, rising |T_dg|: the score must strictly increase.
  double prev = -1.0;
  for (int k = 1; k <= 4; ++k) {
    TripleStore store;
    for (int i = 0; i < k; ++i) {
      AnnotatedDocument doc;
      doc.doc_id = testdata::ident("p", i);
      doc.diseases = {"D0"};
      doc.genes = {"G0"};
      store.add_cooccurrences(doc);
    }
    for (int i = 0; i < 12; ++i) {
      AnnotatedDocument doc;
      doc.doc_id = testdata::ident("f", i);
      doc.diseases = {testdata::ident("D", 1 + i)};
      doc.genes = {testdata::ident("G", 1 + i)};
      store.add_cooccurrences(doc);
    }
    double v = odds(store, "D0", "G0");
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("tfidf is zero when the gene touches every disease") {
  TripleStore store;
  AnnotatedDocument doc;
  doc.doc_id = "d";
  doc.diseases = {"D1", "D2", "D3"};
  doc.genes = {"G1"};
  store.add_cooccurrences(doc);
  CHECK(tfidf_pair(store, "D1", "G1") == 0.0);  // ln(3/3)
  CHECK(tfidf_pair(store, "D1", "unseen") == 0.0);
}

TEST_CASE("tfidf hand value") {
  // Three diseases, G1 touches one of them twice: 2 * ln(3/1).
  std::vector<AnnotatedDocument> docs(4);
  docs[0].doc_id = "a";
  docs[0].diseases = {"D1"};
  docs[0].genes = {"G1"};
  docs[1].doc_id = "b";
  docs[1].diseases = {"D1"};
  docs[1].genes = {"G1"};
  docs[2].doc_id = "c";
  docs[2].diseases = {"D2"};
  docs[2].genes = {"G2"};
  docs[3].doc_id = "d";
  docs[3].diseases = {"D3"};
  docs[3].genes = {"G2"};
  auto store = from_docs(docs);
  CHECK(tfidf_pair(store, "D1", "G1") ==
        doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("occ and grades on the golden store") {
  TripleStore store;
  store.add_cooccurrences(testdata::golden_doc());
  double v1, v2, v3, gd, gg;
  occ(store, "MESH:D011658", "HSP27", v1, v2, v3);
  grades(store, "MESH:D011658", "HSP27", gd, gg);
  CHECK(v1 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(v2 == 1.0);
  CHECK(v3 == 1.0);
  CHECK(gd == 1.0);
  CHECK(gg == 1.0);

  occ(store, "MESH:D011658", "missing", v1, v2, v3);
  grades(store, "missing", "missing", gd, gg);
  CHECK(v1 == 0.0);
  CHECK(v2 == 0.0);
  CHECK(v3 == 0.0);
  CHECK(gd == 0.0);
  CHECK(gg == 0.0);
}

TEST_CASE("empty store yields all-zero features") {
  TripleStore store;
  auto v = compute_cbf(store, "D1", "G1");
  CHECK(v == CbfVector{});
}

TEST_CASE("every formula matches the oracle on random stores") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 120; ++iter) {
    auto docs = testdata::random_docs(rng);
    auto store = from_docs(docs);
    auto cc = oracle::CooccCounts::from_docs(docs);

    auto diseases = store.diseases();
    auto genes = store.genes();
    diseases.push_back("missingD");
    genes.push_back("missingG");
    for (const auto& d : diseases) {
      CHECK(entropy_disease(store, d) ==
            doctest::Approx(oracle::entropy_disease(cc, d)).epsilon(1e-12));
      for (const auto& g : genes) {
        auto v = compute_cbf(store, d, g);
        CHECK(v.h_d == doctest::Approx(oracle::entropy_disease(cc, d)).epsilon(1e-12));
        CHECK(v.h_g == doctest::Approx(oracle::entropy_gene(cc, g)).epsilon(1e-12));
        CHECK(v.occ_v1 == doctest::Approx(oracle::occ_v1(cc, d, g)).epsilon(1e-12));
        CHECK(v.occ_v2 == doctest::Approx(oracle::occ_v2(cc, d, g)).epsilon(1e-12));
        CHECK(v.occ_v3 == doctest::Approx(oracle::occ_v3(cc, d, g)).epsilon(1e-12));
        CHECK(v.grade_d == doctest::Approx(oracle::grade_d(cc, d)).epsilon(1e-12));
        CHECK(v.grade_g == doctest::Approx(oracle::grade_g(cc, g)).epsilon(1e-12));
        CHECK(v.odds == doctest::Approx(oracle::odds(cc, d, g)).epsilon(1e-12));
        CHECK(v.tfidf == doctest::Approx(oracle::tfidf(cc, d, g)).epsilon(1e-12));

        CHECK(v.occ_v1 >= 0.0);
        CHECK(v.occ_v1 <= 1.0);
        CHECK(v.occ_v2 <= 1.0);
        CHECK(v.occ_v3 <= 1.0);
        CHECK(v.grade_d <= 1.0);
        CHECK(v.grade_g <= 1.0);
        CHECK(v.odds >= 0.0);
        CHECK(v.tfidf >= 0.0);
      }
    }
  }
}
