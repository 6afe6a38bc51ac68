#include "genelink/gbf.hpp"

#include <algorithm>
#include <cmath>

namespace genelink {

GbfTable::GbfTable(const TripleStore& store) {
  const StoreStats& stats = store.stats();
  for (const auto& [sig, count] : stats.signature_counts) signatures_.push_back(sig);
  max_out_ = stats.max_out_by_length;
  max_in_ = stats.max_in_by_length;
  max_out_total_ = stats.max_out_total;
  max_in_total_ = stats.max_in_total;

  std::vector<std::string> genes = store.genes();
  double n_genes = static_cast<double>(genes.size());

  for (const auto& g : genes) {
    std::size_t sources = store.in_source_count(g);
    if (sources > 0) idf_[g] = std::log(n_genes / static_cast<double>(sources));
  }

  for (const auto& g : genes) {
    Degrees deg;
    for (int l = 1; l <= kMaxPathLength; ++l) {
      for (const auto& e : store.out_edges(g, l)) {
        deg.out[l] += e.count;
        raw_[g][e.signature] += static_cast<double>(e.count) * idf_.at(e.neighbor);
      }
      for (const auto& e : store.in_edges(g, l)) deg.in[l] += e.count;
      deg.out_total += deg.out[l];
      deg.in_total += deg.in[l];
    }
    if (deg.out_total > 0 || deg.in_total > 0) degrees_[g] = deg;
  }

  // Per-signature bounds over all genes; genes without the signature
  // contribute an implicit 0.
  for (const auto& sig : signatures_) {
    double lo = 0.0;
    double hi = 0.0;
    bool first = true;
    for (const auto& g : genes) {
      double v = 0.0;
      if (auto git = raw_.find(g); git != raw_.end())
        if (auto vit = git->second.find(sig); vit != git->second.end()) v = vit->second;
      if (first || v < lo) lo = v;
      if (first || v > hi) hi = v;
      first = false;
    }
    bounds_[sig] = {lo, hi};
  }
}

double GbfTable::idf(const std::string& gene) const {
  auto it = idf_.find(gene);
  return it == idf_.end() ? 0.0 : it->second;
}

double GbfTable::raw_signature_value(const std::string& gene,
                                     const std::string& signature) const {
  auto git = raw_.find(gene);
  if (git == raw_.end()) return 0.0;
  auto vit = git->second.find(signature);
  return vit == git->second.end() ? 0.0 : vit->second;
}

double GbfTable::signature_value(const std::string& gene, const std::string& signature) const {
  auto bit = bounds_.find(signature);
  if (bit == bounds_.end()) return 0.0;
  auto [lo, hi] = bit->second;
  if (hi <= lo) return 0.0;
  return (raw_signature_value(gene, signature) - lo) / (hi - lo);
}

std::vector<SignatureFeature> GbfTable::signature_features(const std::string& gene) const {
  std::vector<SignatureFeature> out;
  auto git = raw_.find(gene);
  if (git == raw_.end()) return out;
  for (const auto& [sig, raw] : git->second)
    out.push_back({sig, signature_value(gene, sig)});
  return out;
}

ConnectivityVector GbfTable::connectivity(const std::string& gene) const {
  ConnectivityVector v;
  auto it = degrees_.find(gene);
  if (it == degrees_.end()) return v;
  const Degrees& deg = it->second;
  auto ratio = [](std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  v.out_1 = ratio(deg.out[1], max_out_[1]);
  v.out_2 = ratio(deg.out[2], max_out_[2]);
  v.out_all = ratio(deg.out_total, max_out_total_);
  v.in_1 = ratio(deg.in[1], max_in_[1]);
  v.in_2 = ratio(deg.in[2], max_in_[2]);
  v.in_all = ratio(deg.in_total, max_in_total_);
  if (deg.in_total > 0)
    v.io_ratio = static_cast<double>(deg.out_total) / static_cast<double>(deg.in_total);
  return v;
}

std::optional<double> GbfTable::io_ratio(const std::string& gene) const {
  return connectivity(gene).io_ratio;
}

}  // namespace genelink
