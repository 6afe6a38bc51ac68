#include "genelink/featurizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "genelink/util.hpp"

namespace genelink {

namespace {
constexpr std::string_view kSchemaHeader = "#genelink-schema\tv1";
constexpr std::string_view kSigPrefix = "sig.";
}

FeatureGroups FeatureGroups::parse(const std::string& csv) {
  FeatureGroups g{false, false, false, false, false, false, false};
  for (const auto& name : split(csv, ',')) {
    if (name == "all") {
      g = FeatureGroups{};
    } else if (name == "entropy") {
      g.entropy = true;
    } else if (name == "cooccurrence") {
      g.cooccurrence = true;
    } else if (name == "grade") {
      g.grade = true;
    } else if (name == "odds") {
      g.odds = true;
    } else if (name == "tfidf") {
      g.tfidf = true;
    } else if (name == "connectivity") {
      g.connectivity = true;
    } else if (name == "signatures") {
      g.signatures = true;
    } else if (!name.empty()) {
      throw std::invalid_argument("unknown feature group: " + name);
    }
  }
  return g;
}

std::string FeatureGroups::to_string() const {
  std::vector<std::string> parts;
  if (entropy) parts.push_back("entropy");
  if (cooccurrence) parts.push_back("cooccurrence");
  if (grade) parts.push_back("grade");
  if (odds) parts.push_back("odds");
  if (tfidf) parts.push_back("tfidf");
  if (connectivity) parts.push_back("connectivity");
  if (signatures) parts.push_back("signatures");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

std::map<std::string, double> raw_features(const TripleStore& store, const GbfTable& gbf,
                                           const std::string& disease, const std::string& gene,
                                           const FeatureGroups& groups) {
  std::map<std::string, double> out;
  CbfVector c = compute_cbf(store, disease, gene);
  if (groups.entropy) {
    out["cbf.h_g"] = c.h_g;
    out["cbf.h_d"] = c.h_d;
  }
  if (groups.cooccurrence) {
    out["cbf.occ_v1"] = c.occ_v1;
    out["cbf.occ_v2"] = c.occ_v2;
    out["cbf.occ_v3"] = c.occ_v3;
  }
  if (groups.grade) {
    out["cbf.grade_d"] = c.grade_d;
    out["cbf.grade_g"] = c.grade_g;
  }
  if (groups.odds) out["cbf.odds"] = c.odds;
  if (groups.tfidf) out["cbf.tfidf"] = c.tfidf;
  if (groups.connectivity) {
    ConnectivityVector v = gbf.connectivity(gene);
    out["conn.out_1"] = v.out_1;
    out["conn.out_2"] = v.out_2;
    out["conn.out_all"] = v.out_all;
    out["conn.in_1"] = v.in_1;
    out["conn.in_2"] = v.in_2;
    out["conn.in_all"] = v.in_all;
    out["conn.io_ratio"] = v.io_ratio.value_or(0.0);
    out["conn.io_defined"] = v.io_ratio.has_value() ? 1.0 : 0.0;
  }
  if (groups.signatures) {
    for (const auto& f : gbf.signature_features(gene))
      out[std::string(kSigPrefix) + f.signature] = f.value;
  }
  return out;
}

namespace {

double plogp(double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); }

double label_entropy(std::size_t pos, std::size_t neg) {
  std::size_t n = pos + neg;
  if (n == 0) return 0.0;
  double p = static_cast<double>(pos) / static_cast<double>(n);
  return plogp(p) + plogp(1.0 - p);
}

}  // namespace

double information_gain(std::size_t pos_present, std::size_t pos_absent,
                        std::size_t neg_present, std::size_t neg_absent) {
  std::size_t present = pos_present + neg_present;
  std::size_t absent = pos_absent + neg_absent;
  std::size_t n = present + absent;
  if (n == 0) return 0.0;
  double h = label_entropy(pos_present + pos_absent, neg_present + neg_absent);
  double h_present = label_entropy(pos_present, neg_present);
  double h_absent = label_entropy(pos_absent, neg_absent);
  double cond = (static_cast<double>(present) / n) * h_present +
                (static_cast<double>(absent) / n) * h_absent;
  double ig = h - cond;
  return ig <= 0.0 ? 0.0 : ig;
}

std::vector<std::string> rank_signatures(const GbfTable& gbf,
                                         const std::vector<LabeledPair>& train) {
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  for (const auto& p : train) (p.label ? n_pos : n_neg) += 1;

  // presence counts per signature, over training pairs
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // sig -> (pos, neg)
  for (const auto& p : train) {
    for (const auto& f : gbf.signature_features(p.gene)) {
      if (f.value <= 0.0) continue;
      auto& c = counts[f.signature];
      (p.label ? c.first : c.second) += 1;
    }
  }

  std::vector<std::pair<double, std::string>> ranked;
  ranked.reserve(counts.size());
  for (const auto& [sig, c] : counts) {
    double ig = information_gain(c.first, n_pos - c.first, c.second, n_neg - c.second);
    ranked.emplace_back(ig, sig);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (const auto& [ig, sig] : ranked) out.push_back(sig);
  return out;
}

FeatureSchema FeatureSchema::fit(const TripleStore& store, const GbfTable& gbf,
                                 const std::vector<LabeledPair>& train,
                                 const FeatureGroups& groups, std::size_t top_k,
                                 std::vector<std::string>* warnings) {
  FeatureSchema schema;
  schema.groups_ = groups;

  std::vector<std::string> names;
  FeatureGroups base = groups;
  base.signatures = false;
  // Fixed layout probe: CBF and connectivity names under the active groups.
  for (const auto& [name, value] : raw_features(store, gbf, "", "", base)) names.push_back(name);

  if (groups.signatures) {
    std::vector<std::string> ranked = rank_signatures(gbf, train);
    if (top_k > ranked.size() && warnings != nullptr)
      warnings->push_back("requested " + std::to_string(top_k) + " signatures but only " +
                          std::to_string(ranked.size()) + " available; keeping all");
    schema.k_ = std::min(top_k, ranked.size());
    for (std::size_t i = 0; i < schema.k_; ++i)
      names.push_back(std::string(kSigPrefix) + ranked[i]);
  }

  std::map<std::string, std::pair<double, double>> bounds;
  for (const auto& p : train) {
    auto raw = raw_features(store, gbf, p.disease, p.gene, groups);
    for (const auto& name : names) {
      auto it = raw.find(name);
      double v = it == raw.end() ? 0.0 : it->second;
      auto bit = bounds.find(name);
      if (bit == bounds.end())
        bounds[name] = {v, v};
      else {
        bit->second.first = std::min(bit->second.first, v);
        bit->second.second = std::max(bit->second.second, v);
      }
    }
  }

  for (const auto& name : names) {
    auto it = bounds.find(name);
    if (it == bounds.end())
      schema.entries_.push_back({name, 0.0, 0.0});
    else
      schema.entries_.push_back({name, it->second.first, it->second.second});
  }
  return schema;
}

std::string FeatureSchema::serialize() const {
  std::ostringstream out;
  out << kSchemaHeader << '\n';
  out << "#groups\t" << groups_.to_string() << '\n';
  out << "#k\t" << k_ << '\n';
  for (const auto& e : entries_)
    out << e.name << '\t' << format_double(e.lo) << '\t' << format_double(e.hi) << '\n';
  return out.str();
}

void FeatureSchema::save(const std::string& path) const { write_file(path, serialize()); }

FeatureSchema FeatureSchema::parse(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSchemaHeader)
    throw IoError("schema " + origin + ": bad or missing version header");
  FeatureSchema schema;
  bool have_groups = false;
  bool have_k = false;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields[0] == "#groups" && fields.size() == 2) {
      schema.groups_ = FeatureGroups::parse(fields[1]);
      have_groups = true;
      continue;
    }
    if (fields[0] == "#k" && fields.size() == 2) {
      schema.k_ = std::stoull(fields[1]);
      have_k = true;
      continue;
    }
    if (fields.size() != 3)
      throw IoError("schema " + origin + ": malformed row at line " + std::to_string(line_no));
    schema.entries_.push_back({fields[0], std::stod(fields[1]), std::stod(fields[2])});
  }
  if (!have_groups || !have_k)
    throw IoError("schema " + origin + ": missing #groups or #k line");
  return schema;
}

FeatureSchema FeatureSchema::load(const std::string& path) {
  return parse(read_file(path), path);
}

std::string FeatureSchema::digest() const { return hash_hex(fnv1a64(serialize())); }

FeatureVector featurize(const TripleStore& store, const GbfTable& gbf,
                        const FeatureSchema& schema, const std::string& disease,
                        const std::string& gene) {
  FeatureVector out;
  out.disease = disease;
  out.gene = gene;
  out.values.assign(schema.size(), 0.0);
  if (!store.has_disease(disease) || !store.has_gene(gene)) {
    out.known = false;
    return out;
  }
  auto raw = raw_features(store, gbf, disease, gene, schema.groups());
  const auto& entries = schema.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const SchemaEntry& e = entries[i];
    if (e.hi <= e.lo) continue;  // degenerate bounds scale to 0
    auto it = raw.find(e.name);
    double v = it == raw.end() ? 0.0 : it->second;
    double scaled = (v - e.lo) / (e.hi - e.lo);
    out.values[i] = std::clamp(scaled, 0.0, 1.0);
  }
  return out;
}

void write_sparse_vectors(const std::string& path, const std::vector<FeatureVector>& vectors,
                          const std::vector<int>& labels) {
  if (vectors.size() != labels.size())
    throw std::invalid_argument("vector/label count mismatch");
  std::ostringstream out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out << (labels[i] > 0 ? "+1" : "-1");
    const auto& values = vectors[i].values;
    for (std::size_t j = 0; j < values.size(); ++j)
      if (values[j] != 0.0) out << ' ' << (j + 1) << ':' << format_double(values[j]);
    out << '\n';
  }
  write_file(path, out.str());
}

void write_index_map(const std::string& path, const FeatureSchema& schema) {
  std::ostringstream out;
  const auto& entries = schema.entries();
  for (std::size_t i = 0; i < entries.size(); ++i)
    out << (i + 1) << '\t' << entries[i].name << '\n';
  write_file(path, out.str());
}

}  // namespace genelink
