#include "genelink/dataset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "genelink/cbf.hpp"
#include "genelink/util.hpp"

namespace genelink {

GoldStandard GoldStandard::load(const std::string& path) {
  GoldStandard gold;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw IoError("gold file " + path + ": malformed row at line " + std::to_string(line_no));
    gold.associations.insert({fields[0], fields[1]});
  }
  return gold;
}

void GoldStandard::save(const std::string& path) const {
  std::ostringstream out;
  for (const auto& [d, g] : associations) out << d << '\t' << g << '\n';
  write_file(path, out.str());
}

std::vector<DatasetRow> build_dataset(const GoldStandard& gold, const TripleStore& store,
                                      std::uint64_t seed, DatasetBuildLog* log) {
  std::mt19937_64 rng(seed);

  std::map<std::string, std::vector<std::string>> positives;  // disease -> genes
  for (const auto& [d, g] : gold.associations)
    if (store.has_disease(d) && store.has_gene(g)) positives[d].push_back(g);
  if (positives.empty())
    throw std::runtime_error("no gold association is covered by the store");

  std::vector<DatasetRow> rows;
  DatasetBuildLog local_log;
  for (const auto& [d, pos_genes] : positives) {
    for (const auto& g : pos_genes) rows.push_back({d, g, 1, ""});
    local_log.n_positive += pos_genes.size();

    std::vector<std::string> candidates;
    for (const auto& [g, count] : store.genes_of_disease(d))
      if (!gold.contains(d, g)) candidates.push_back(g);
    std::size_t wanted = pos_genes.size();
    if (candidates.size() < wanted) {
      local_log.shortfalls.push_back(d + ": wanted " + std::to_string(wanted) +
                                     " negatives, found " +
                                     std::to_string(candidates.size()));
      wanted = candidates.size();
    }
    det_shuffle(candidates, rng);
    for (std::size_t i = 0; i < wanted; ++i) rows.push_back({d, candidates[i], 0, ""});
    local_log.n_negative += wanted;
  }

  // Pair-level stratified split: 20% of each class held out, floored.
  std::vector<std::size_t> pos_idx;
  std::vector<std::size_t> neg_idx;
  for (std::size_t i = 0; i < rows.size(); ++i)
    (rows[i].label == 1 ? pos_idx : neg_idx).push_back(i);
  det_shuffle(pos_idx, rng);
  det_shuffle(neg_idx, rng);
  for (auto* idx : {&pos_idx, &neg_idx}) {
    std::size_t n_test = idx->size() / 5;
    for (std::size_t i = 0; i < idx->size(); ++i)
      rows[(*idx)[i]].split = i < n_test ? "test" : "train";
  }

  std::sort(rows.begin(), rows.end(), [](const DatasetRow& a, const DatasetRow& b) {
    return std::tie(a.disease, a.gene) < std::tie(b.disease, b.gene);
  });
  if (log != nullptr) *log = std::move(local_log);
  return rows;
}

void save_dataset(const std::string& path, const std::vector<DatasetRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows)
    out << r.disease << '\t' << r.gene << '\t' << r.label << '\t' << r.split << '\n';
  write_file(path, out.str());
}

std::vector<DatasetRow> load_dataset(const std::string& path) {
  std::vector<DatasetRow> rows;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 4 || (fields[2] != "0" && fields[2] != "1") ||
        (fields[3] != "train" && fields[3] != "test"))
      throw IoError("dataset " + path + ": malformed row at line " + std::to_string(line_no));
    rows.push_back({fields[0], fields[1], fields[2] == "1" ? 1 : 0, fields[3]});
  }
  return rows;
}

std::vector<DatasetRow> filter_split(const std::vector<DatasetRow>& rows,
                                     const std::string& split) {
  std::vector<DatasetRow> out;
  for (const auto& r : rows)
    if (r.split == split) out.push_back(r);
  return out;
}

Metrics evaluate_model(const TripleStore& store, const GbfTable& gbf,
                       const FeatureSchema& schema, const SvmModel& model,
                       const std::vector<DatasetRow>& rows) {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  for (const auto& r : rows) {
    FeatureVector v = featurize(store, gbf, schema, r.disease, r.gene);
    int pred = model.predict(v.values);
    if (pred > 0 && r.label == 1) ++tp;
    if (pred > 0 && r.label == 0) ++fp;
    if (pred < 0 && r.label == 1) ++fn;
  }
  return confusion_metrics(tp, fp, fn);
}

namespace {

double occ_v1_of(const TripleStore& store, const std::string& disease,
                 const std::string& gene) {
  double v1;
  double v2;
  double v3;
  occ(store, disease, gene, v1, v2, v3);
  return v1;
}

}  // namespace

int baseline_classify(const TripleStore& store, const std::string& disease,
                      const std::string& gene, double threshold) {
  return occ_v1_of(store, disease, gene) >= threshold ? 1 : -1;
}

double fit_baseline_threshold(const TripleStore& store,
                              const std::vector<DatasetRow>& train) {
  std::vector<std::pair<double, int>> scored;
  scored.reserve(train.size());
  std::set<double> candidates;
  for (const auto& r : train) {
    double v = occ_v1_of(store, r.disease, r.gene);
    scored.emplace_back(v, r.label);
    candidates.insert(v);
  }
  double best_t = 0.0;
  double best_f1 = -1.0;
  for (double t : candidates) {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    for (const auto& [v, label] : scored) {
      bool positive = v >= t;
      if (positive && label == 1) ++tp;
      if (positive && label == 0) ++fp;
      if (!positive && label == 1) ++fn;
    }
    double f1 = confusion_metrics(tp, fp, fn).f1;
    if (f1 > best_f1) {
      best_f1 = f1;
      best_t = t;
    }
  }
  return best_t;
}

Metrics evaluate_baseline(const TripleStore& store, double threshold,
                          const std::vector<DatasetRow>& rows) {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  for (const auto& r : rows) {
    int pred = baseline_classify(store, r.disease, r.gene, threshold);
    if (pred > 0 && r.label == 1) ++tp;
    if (pred > 0 && r.label == 0) ++fp;
    if (pred < 0 && r.label == 1) ++fn;
  }
  return confusion_metrics(tp, fp, fn);
}

CandidatePolicy parse_policy(const std::string& name) {
  if (name == "cooccurring") return CandidatePolicy::Cooccurring;
  if (name == "graph-expanded") return CandidatePolicy::GraphExpanded;
  throw std::invalid_argument("unknown candidate policy: " + name);
}

std::string to_string(CandidatePolicy policy) {
  return policy == CandidatePolicy::Cooccurring ? "cooccurring" : "graph-expanded";
}

std::vector<Prediction> predict_for_disease(const TripleStore& store, const GbfTable& gbf,
                                            const FeatureSchema& schema, const SvmModel& model,
                                            const std::string& disease, CandidatePolicy policy,
                                            std::vector<std::string>* warnings) {
  std::vector<Prediction> out;
  if (!store.has_disease(disease)) {
    if (warnings != nullptr) warnings->push_back("unknown disease: " + disease);
    return out;
  }

  std::set<std::string> candidates;
  for (const auto& [g, count] : store.genes_of_disease(disease)) candidates.insert(g);
  if (policy == CandidatePolicy::GraphExpanded) {
    // Two hops over direct interaction edges, either direction.
    std::set<std::string> frontier = candidates;
    for (int hop = 0; hop < 2; ++hop) {
      std::set<std::string> next;
      for (const auto& g : frontier) {
        for (const auto& e : store.out_edges(g, 1)) next.insert(e.neighbor);
        for (const auto& e : store.in_edges(g, 1)) next.insert(e.neighbor);
      }
      frontier.clear();
      for (const auto& g : next)
        if (candidates.insert(g).second) frontier.insert(g);
    }
  }

  for (const auto& g : candidates) {
    FeatureVector v = featurize(store, gbf, schema, disease, g);
    double margin = model.decision(v.values);
    if (margin >= 0.0) out.push_back({g, margin, store.t_g(g)});
  }
  std::sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) {
    if (a.corpus_freq != b.corpus_freq) return a.corpus_freq > b.corpus_freq;
    if (a.score != b.score) return a.score > b.score;
    return a.gene < b.gene;
  });
  return out;
}

}  // namespace genelink
