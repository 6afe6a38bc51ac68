#include "genelink/triple_store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "genelink/util.hpp"

namespace genelink {

namespace {
constexpr std::string_view kStoreHeader = "#genelink-store\tv1";
}

void TripleStore::bump_coocc(const std::string& d, const std::string& g,
                             const std::string& doc_id) {
  Cell& cell = coocc_[d][g];
  cell.count += 1;
  cell.docs.insert(doc_id);
  coocc_by_gene_[g][d] += 1;
  disease_totals_[d] += 1;
  gene_totals_[g] += 1;
  genes_.insert(g);
}

void TripleStore::add_cooccurrences(const AnnotatedDocument& doc) {
  if (!coocc_docs_.insert(doc.doc_id).second)
    throw ValidationError(ValidationCode::DuplicateDocId, doc.doc_id,
                          "document already counted for co-occurrence");
  std::set<std::string> diseases(doc.diseases.begin(), doc.diseases.end());
  std::set<std::string> genes(doc.genes.begin(), doc.genes.end());
  for (const auto& d : diseases)
    for (const auto& g : genes) bump_coocc(d, g, doc.doc_id);
  stats_dirty_ = true;
}

void TripleStore::insert_interaction(const std::string& subject, const EdgeKey& key,
                                     const Cell& cell) {
  Cell& dst = inter_[subject][key];
  dst.count += cell.count;
  dst.docs.insert(cell.docs.begin(), cell.docs.end());
  in_index_[key.object].insert({subject, key});
  genes_.insert(subject);
  genes_.insert(key.object);
  stats_dirty_ = true;
}

void TripleStore::add_interactions(const std::string& doc_id,
                                   const std::vector<GeneTriple>& triples) {
  if (!inter_docs_.insert(doc_id).second)
    throw ValidationError(ValidationCode::DuplicateDocId, doc_id,
                          "document already counted for interactions");
  for (const auto& t : triples) {
    Cell cell;
    cell.count = 1;
    cell.docs.insert(doc_id);
    insert_interaction(t.subject, {t.signature, t.object, 1}, cell);
  }
}

void TripleStore::join_interactions() {
  if (joined_) throw std::logic_error("join_interactions already applied");
  joined_ = true;

  // Collect joined edges first so freshly inserted length-2 edges never
  // participate in further joins.
  std::map<std::pair<std::string, EdgeKey>, Cell> joined;
  for (const auto& [middle, incoming] : in_index_) {
    auto out_it = inter_.find(middle);
    if (out_it == inter_.end()) continue;
    for (const auto& [source, in_key] : incoming) {
      if (in_key.length != 1) continue;
      const Cell& in_cell = inter_.at(source).at(in_key);
      for (const auto& [out_key, out_cell] : out_it->second) {
        if (out_key.length != 1) continue;
        if (out_key.object == source) continue;  // no self-loops
        EdgeKey key{compose_signatures(in_key.signature, out_key.signature), out_key.object, 2};
        Cell& cell = joined[{source, key}];
        cell.docs.insert(in_cell.docs.begin(), in_cell.docs.end());
        cell.docs.insert(out_cell.docs.begin(), out_cell.docs.end());
      }
    }
  }
  for (auto& [sk, cell] : joined) {
    cell.count = cell.docs.size();
    insert_interaction(sk.first, sk.second, cell);
  }
  stats_dirty_ = true;
}

std::uint64_t TripleStore::t_d(const std::string& disease) const {
  auto it = disease_totals_.find(disease);
  return it == disease_totals_.end() ? 0 : it->second;
}

std::uint64_t TripleStore::t_g(const std::string& gene) const {
  auto it = gene_totals_.find(gene);
  return it == gene_totals_.end() ? 0 : it->second;
}

std::uint64_t TripleStore::t_dg(const std::string& disease, const std::string& gene) const {
  auto it = coocc_.find(disease);
  if (it == coocc_.end()) return 0;
  auto jt = it->second.find(gene);
  return jt == it->second.end() ? 0 : jt->second.count;
}

std::uint64_t TripleStore::total() const {
  std::uint64_t sum = 0;
  for (const auto& [d, total] : disease_totals_) sum += total;
  return sum;
}

namespace {
void check_length(int length) {
  if (length < 1 || length > kMaxPathLength)
    throw std::invalid_argument("path length out of range: " + std::to_string(length));
}
}  // namespace

std::vector<Edge> TripleStore::out_edges(const std::string& gene, int length) const {
  check_length(length);
  std::vector<Edge> out;
  auto it = inter_.find(gene);
  if (it == inter_.end()) return out;
  for (const auto& [key, cell] : it->second)
    if (key.length == length) out.push_back({key.signature, key.object, cell.count});
  return out;
}

std::vector<Edge> TripleStore::out_edges(const std::string& gene) const {
  std::vector<Edge> out;
  auto it = inter_.find(gene);
  if (it == inter_.end()) return out;
  for (const auto& [key, cell] : it->second)
    out.push_back({key.signature, key.object, cell.count});
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.signature, a.neighbor) < std::tie(b.signature, b.neighbor);
  });
  return out;
}

std::vector<Edge> TripleStore::in_edges(const std::string& gene, int length) const {
  check_length(length);
  std::vector<Edge> out;
  auto it = in_index_.find(gene);
  if (it == in_index_.end()) return out;
  for (const auto& [subject, key] : it->second)
    if (key.length == length)
      out.push_back({key.signature, subject, inter_.at(subject).at(key).count});
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.signature, a.neighbor) < std::tie(b.signature, b.neighbor);
  });
  return out;
}

std::vector<Edge> TripleStore::in_edges(const std::string& gene) const {
  std::vector<Edge> out;
  auto it = in_index_.find(gene);
  if (it == in_index_.end()) return out;
  for (const auto& [subject, key] : it->second)
    out.push_back({key.signature, subject, inter_.at(subject).at(key).count});
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.signature, a.neighbor) < std::tie(b.signature, b.neighbor);
  });
  return out;
}

std::size_t TripleStore::in_source_count(const std::string& gene) const {
  auto it = in_index_.find(gene);
  if (it == in_index_.end()) return 0;
  std::set<std::string> sources;
  for (const auto& [subject, key] : it->second) sources.insert(subject);
  return sources.size();
}

std::vector<std::pair<std::string, std::uint64_t>> TripleStore::diseases_of_gene(
    const std::string& gene) const {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  auto it = coocc_by_gene_.find(gene);
  if (it == coocc_by_gene_.end()) return out;
  out.assign(it->second.begin(), it->second.end());
  return out;
}

std::vector<std::pair<std::string, std::uint64_t>> TripleStore::genes_of_disease(
    const std::string& disease) const {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  auto it = coocc_.find(disease);
  if (it == coocc_.end()) return out;
  for (const auto& [g, cell] : it->second) out.emplace_back(g, cell.count);
  return out;
}

bool TripleStore::has_disease(const std::string& disease) const {
  return coocc_.count(disease) > 0;
}

bool TripleStore::has_gene(const std::string& gene) const { return genes_.count(gene) > 0; }

std::vector<std::string> TripleStore::diseases() const {
  std::vector<std::string> out;
  out.reserve(coocc_.size());
  for (const auto& [d, row] : coocc_) out.push_back(d);
  return out;
}

std::vector<std::string> TripleStore::genes() const {
  return {genes_.begin(), genes_.end()};
}

const StoreStats& TripleStore::stats() const {
  if (!stats_dirty_) return stats_cache_;
  StoreStats s;
  s.n_diseases = coocc_.size();
  s.n_genes = genes_.size();
  for (const auto& [d, total] : disease_totals_) {
    s.total_cooccurrence += total;
    s.max_disease_count = std::max(s.max_disease_count, total);
  }
  for (const auto& [g, total] : gene_totals_)
    s.max_gene_count = std::max(s.max_gene_count, total);
  for (const auto& [d, row] : coocc_)
    for (const auto& [g, cell] : row)
      s.max_pair_count = std::max(s.max_pair_count, cell.count);

  std::map<std::string, std::array<std::uint64_t, kMaxPathLength + 1>> out_deg, in_deg;
  for (const auto& [subject, edges] : inter_) {
    for (const auto& [key, cell] : edges) {
      s.interaction_count += cell.count;
      s.signature_counts[key.signature] += cell.count;
      out_deg[subject][key.length] += cell.count;
      in_deg[key.object][key.length] += cell.count;
    }
  }
  for (const auto& [g, by_len] : out_deg) {
    std::uint64_t total = 0;
    for (int l = 1; l <= kMaxPathLength; ++l) {
      s.max_out_by_length[l] = std::max(s.max_out_by_length[l], by_len[l]);
      total += by_len[l];
    }
    s.max_out_total = std::max(s.max_out_total, total);
  }
  for (const auto& [g, by_len] : in_deg) {
    std::uint64_t total = 0;
    for (int l = 1; l <= kMaxPathLength; ++l) {
      s.max_in_by_length[l] = std::max(s.max_in_by_length[l], by_len[l]);
      total += by_len[l];
    }
    s.max_in_total = std::max(s.max_in_total, total);
  }
  stats_cache_ = std::move(s);
  stats_dirty_ = false;
  return stats_cache_;
}

std::vector<TripleRecord> TripleStore::cooccurrence_records() const {
  std::vector<TripleRecord> out;
  for (const auto& [d, row] : coocc_)
    for (const auto& [g, cell] : row)
      out.push_back({d, std::string(kCooccPredicate), g, cell.count, 0,
                     {cell.docs.begin(), cell.docs.end()}});
  return out;
}

std::vector<TripleRecord> TripleStore::interaction_records() const {
  std::vector<TripleRecord> out;
  for (const auto& [subject, edges] : inter_)
    for (const auto& [key, cell] : edges)
      out.push_back({subject, key.signature, key.object, cell.count, key.length,
                     {cell.docs.begin(), cell.docs.end()}});
  return out;
}

void TripleStore::persist(const std::string& path) const {
  std::ostringstream out;
  out << kStoreHeader << '\n';
  auto emit = [&out](const TripleRecord& r) {
    out << r.subject << '\t' << r.predicate << '\t' << r.object << '\t' << r.count << '\t'
        << r.length << '\t';
    for (std::size_t i = 0; i < r.docs.size(); ++i) {
      if (i) out << ',';
      out << r.docs[i];
    }
    out << '\n';
  };
  for (const auto& r : cooccurrence_records()) emit(r);
  for (const auto& r : interaction_records()) emit(r);
  write_file(path, out.str());
}

TripleStore TripleStore::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open store file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kStoreHeader)
    throw IoError("store file " + path + ": bad or missing version header");

  TripleStore store;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 6)
      throw IoError("store file " + path + ": malformed row at line " + std::to_string(line_no));
    TripleRecord r;
    r.subject = fields[0];
    r.predicate = fields[1];
    r.object = fields[2];
    r.count = std::stoull(fields[3]);
    r.length = std::stoi(fields[4]);
    if (!fields[5].empty()) r.docs = split(fields[5], ',');
    if (r.count != r.docs.size())
      throw IoError("store file " + path + ": count/provenance mismatch at line " +
                    std::to_string(line_no));
    Cell cell;
    cell.count = r.count;
    cell.docs.insert(r.docs.begin(), r.docs.end());
    if (r.predicate == kCooccPredicate) {
      if (r.length != 0)
        throw IoError("store file " + path + ": coocc row with nonzero length at line " +
                      std::to_string(line_no));
      Cell& dst = store.coocc_[r.subject][r.object];
      dst = cell;
      store.coocc_by_gene_[r.object][r.subject] = cell.count;
      store.disease_totals_[r.subject] += cell.count;
      store.gene_totals_[r.object] += cell.count;
      store.genes_.insert(r.object);
      store.coocc_docs_.insert(cell.docs.begin(), cell.docs.end());
    } else {
      if (r.length < 1 || r.length > kMaxPathLength)
        throw IoError("store file " + path + ": interaction length out of range at line " +
                      std::to_string(line_no));
      store.insert_interaction(r.subject, {r.predicate, r.object, r.length}, cell);
      if (r.length == 1) store.inter_docs_.insert(cell.docs.begin(), cell.docs.end());
      if (r.length > 1) store.joined_ = true;
    }
  }
  store.stats_dirty_ = true;
  return store;
}

void TripleStore::merge(const TripleStore& other) {
  if (joined_ || other.joined_)
    throw std::logic_error("merge requires unjoined stores; join after merging");
  for (const auto& id : other.coocc_docs_)
    if (coocc_docs_.count(id))
      throw ValidationError(ValidationCode::DuplicateDocId, id, "document in both merge shards");
  for (const auto& id : other.inter_docs_)
    if (inter_docs_.count(id))
      throw ValidationError(ValidationCode::DuplicateDocId, id, "document in both merge shards");

  for (const auto& [d, row] : other.coocc_) {
    for (const auto& [g, cell] : row) {
      Cell& dst = coocc_[d][g];
      dst.count += cell.count;
      dst.docs.insert(cell.docs.begin(), cell.docs.end());
      coocc_by_gene_[g][d] += cell.count;
      disease_totals_[d] += cell.count;
      gene_totals_[g] += cell.count;
      genes_.insert(g);
    }
  }
  for (const auto& [subject, edges] : other.inter_)
    for (const auto& [key, cell] : edges) insert_interaction(subject, key, cell);
  coocc_docs_.insert(other.coocc_docs_.begin(), other.coocc_docs_.end());
  inter_docs_.insert(other.inter_docs_.begin(), other.inter_docs_.end());
  genes_.insert(other.genes_.begin(), other.genes_.end());
  stats_dirty_ = true;
}

bool TripleStore::operator==(const TripleStore& other) const {
  return coocc_ == other.coocc_ && inter_ == other.inter_ && joined_ == other.joined_;
}

}  // namespace genelink
