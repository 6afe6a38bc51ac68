#include "genelink/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "genelink/util.hpp"

namespace genelink {

namespace {

std::string padded(const char* prefix, std::size_t value, int width) {
  std::string digits = std::to_string(value);
  std::string out(prefix);
  for (int i = static_cast<int>(digits.size()); i < width; ++i) out += '0';
  return out + digits;
}

const char* kRegFamily[] = {"Regulation", "Positive_regulation", "Negative_regulation"};
const char* kChainHeads[] = {"Phosphorylation", "Gene_expression", "Transcription",
                             "Localization", "Protein_catabolism"};

}  // namespace

SynthResult generate_corpus(const SynthConfig& cfg) {
  if (cfg.n_diseases < 1 || cfg.n_genes < 1)
    throw std::invalid_argument("need at least one disease and one gene");
  if (cfg.n_docs < 1) throw std::invalid_argument("need at least one document");
  for (double p : {cfg.assoc_density, cfg.signal_strength, cfg.interaction_density,
                   cfg.noise_rate})
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("probabilities must lie in [0,1]");

  std::size_t hub_count = cfg.n_genes / 10;
  std::size_t eligible = cfg.n_genes - hub_count;
  std::size_t n_gold = static_cast<std::size_t>(
      std::llround(cfg.assoc_density * static_cast<double>(cfg.n_diseases) *
                   static_cast<double>(cfg.n_genes)));
  n_gold = std::min(n_gold, cfg.n_diseases * eligible);
  if (n_gold == 0) throw std::invalid_argument("config yields an empty gold set");

  std::mt19937_64 rng(cfg.seed);

  // Plant the hidden association set over non-hub genes.
  std::vector<std::pair<std::size_t, std::size_t>> all_pairs;
  all_pairs.reserve(cfg.n_diseases * eligible);
  for (std::size_t d = 0; d < cfg.n_diseases; ++d)
    for (std::size_t g = 0; g < eligible; ++g) all_pairs.emplace_back(d, g);
  det_shuffle(all_pairs, rng);
  all_pairs.resize(n_gold);
  std::sort(all_pairs.begin(), all_pairs.end());

  // Two kinds of host genes, split by index parity. Strong hosts co-occur
  // heavily with their diseases and also chatter in unrelated documents.
  // Specific hosts are weakly evidenced, below the clean count threshold,
  // but nearly all their mentions stay on topic.
  auto weak_host = [](std::size_t g) { return g % 2 == 1; };
  std::map<std::pair<std::size_t, std::size_t>, double> strength;
  std::vector<std::set<std::size_t>> gene_gold(cfg.n_genes);     // gene -> gold diseases
  std::vector<std::vector<std::size_t>> disease_gold(cfg.n_diseases);
  for (std::size_t i = 0; i < all_pairs.size(); ++i) {
    strength[all_pairs[i]] = weak_host(all_pairs[i].second) ? 0.32 : 1.0;
    gene_gold[all_pairs[i].second].insert(all_pairs[i].first);
    disease_gold[all_pairs[i].first].push_back(all_pairs[i].second);
  }

  // Mildly skewed disease activity; even tail diseases keep enough documents
  // for their planted pairs to accumulate counts.
  std::vector<double> cum(cfg.n_diseases);
  double acc = 0.0;
  for (std::size_t d = 0; d < cfg.n_diseases; ++d) {
    acc += 1.0 / std::sqrt(static_cast<double>(1 + d));
    cum[d] = acc;
  }

  SynthResult result;
  std::vector<bool> disease_seen(cfg.n_diseases, false);
  std::vector<bool> gene_seen(cfg.n_genes, false);
  std::uint64_t n_events = 0;
  std::uint64_t coocc_total = 0;
  std::set<std::size_t> cooccurring_diseases;
  std::set<std::size_t> store_genes;
  std::vector<std::uint64_t> docs_with_disease(cfg.n_diseases, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> pair_docs;

  // One interaction edge between two mentioned genes, drawn from five event
  // shapes: direct regulation, binding, or a two-level cascade.
  auto add_interaction = [&](AnnotatedDocument& doc, std::size_t ga, std::size_t gb,
                             std::size_t& event_no) {
    bool flip = rand_below(rng, 2) == 1;
    std::string from = padded("G", (flip ? gb : ga) + 1, 3);
    std::string to = padded("G", (flip ? ga : gb) + 1, 3);
    std::uint64_t shape = rand_below(rng, 5);
    std::string outer = kRegFamily[rand_below(rng, 3)];
    std::string id_a = padded("E", event_no++, 1);
    if (shape <= 1) {
      Event e;
      e.event_id = id_a;
      e.event_type = outer;
      e.themes.push_back({ArgKind::Gene, to});
      e.causes.push_back({ArgKind::Gene, from});
      doc.events.push_back(std::move(e));
    } else if (shape == 2) {
      Event e;
      e.event_id = id_a;
      e.event_type = "Binding";
      e.themes.push_back({ArgKind::Gene, from});
      e.themes.push_back({ArgKind::Gene, to});
      doc.events.push_back(std::move(e));
    } else {
      std::string id_b = padded("E", event_no++, 1);
      Event inner;
      inner.event_id = id_b;
      inner.event_type =
          shape == 3 ? kChainHeads[rand_below(rng, 5)] : kRegFamily[rand_below(rng, 3)];
      inner.themes.push_back({ArgKind::Gene, from});
      Event outer_event;
      outer_event.event_id = id_a;
      outer_event.event_type = outer;
      outer_event.themes.push_back({ArgKind::Gene, to});
      outer_event.causes.push_back({ArgKind::Event, id_b});
      doc.events.push_back(std::move(inner));
      doc.events.push_back(std::move(outer_event));
    }
    store_genes.insert(ga);
    store_genes.insert(gb);
    n_events += 1;
  };

  for (std::size_t t = 0; t < cfg.n_docs; ++t) {
    AnnotatedDocument doc;
    doc.doc_id = padded("doc", t + 1, 5);

    std::set<std::size_t> diseases;
    double u = rand_unit(rng) * acc;
    diseases.insert(static_cast<std::size_t>(
        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin()));
    if (rand_unit(rng) < 0.10) diseases.insert(rand_below(rng, cfg.n_diseases));

    std::vector<std::size_t> genes;
    for (std::size_t g = 0; g < cfg.n_genes; ++g) {
      double p;
      if (g >= eligible) {
        p = cfg.noise_rate + cfg.signal_strength * 0.2;
      } else if (gene_gold[g].empty()) {
        p = cfg.noise_rate;
      } else {
        // Planted genes stay topical: full rate with their own diseases,
        // background chatter damped in proportion to the signal, and
        // specific hosts damped almost to zero.
        double damp = 1.0 - cfg.signal_strength;
        p = cfg.noise_rate * (weak_host(g) ? damp * damp * damp : damp);
        for (std::size_t d : diseases) {
          auto it = strength.find({d, g});
          if (it != strength.end())
            p = std::max(p, cfg.noise_rate + cfg.signal_strength * it->second);
        }
      }
      if (rand_unit(rng) < p) genes.push_back(g);
    }
    det_shuffle(genes, rng);  // mention order

    for (std::size_t d : diseases) {
      doc.diseases.push_back(padded("D", d + 1, 3));
      disease_seen[d] = true;
      docs_with_disease[d] += 1;
    }
    for (std::size_t g : genes) {
      doc.genes.push_back(padded("G", g + 1, 3));
      gene_seen[g] = true;
    }
    coocc_total += diseases.size() * genes.size();
    if (!genes.empty())
      for (std::size_t d : diseases) cooccurring_diseases.insert(d);
    if (!diseases.empty())
      for (std::size_t g : genes) store_genes.insert(g);
    for (std::size_t d : diseases)
      for (std::size_t g : genes) pair_docs[{d, g}] += 1;

    // Interaction events, preferring genes that share a planted disease.
    std::size_t event_no = 1;
    for (std::size_t a = 0; a + 1 < genes.size(); ++a) {
      for (std::size_t b = a + 1; b < genes.size(); ++b) {
        bool shared = false;
        for (std::size_t d : gene_gold[genes[a]])
          if (gene_gold[genes[b]].count(d)) {
            shared = true;
            break;
          }
        double p_edge = std::min(1.0, cfg.interaction_density * (shared ? 25.0 : 1.0));
        if (rand_unit(rng) >= p_edge) continue;
        add_interaction(doc, genes[a], genes[b], event_no);
      }
    }
    result.docs.push_back(std::move(doc));
  }

  // Pathway documents: gene-only mentions of a disease module with events
  // linking its members. They thicken the interaction neighbourhood of
  // planted genes while leaving disease co-occurrence counts untouched.
  std::size_t path_no = 1;
  for (std::size_t d = 0; d < cfg.n_diseases; ++d) {
    const std::vector<std::size_t>& module_genes = disease_gold[d];
    if (module_genes.size() < 2) continue;
    std::size_t n_path = 1 + module_genes.size() / 3;
    for (std::size_t t = 0; t < n_path; ++t) {
      std::vector<std::size_t> pick = module_genes;
      det_shuffle(pick, rng);
      pick.resize(std::min<std::size_t>(2 + rand_below(rng, 3), pick.size()));
      AnnotatedDocument doc;
      doc.doc_id = padded("path", path_no++, 3);
      for (std::size_t g : pick) {
        doc.genes.push_back(padded("G", g + 1, 3));
        gene_seen[g] = true;
      }
      std::size_t event_no = 1;
      for (std::size_t i = 0; i + 1 < pick.size(); ++i)
        add_interaction(doc, pick[i], pick[i + 1], event_no);
      result.docs.push_back(std::move(doc));
    }
  }

  // Coverage: every planted pair must co-occur in at least one document.
  std::size_t cov_no = 1;
  for (const auto& [d, g] : all_pairs) {
    if (pair_docs[{d, g}] > 0) continue;
    AnnotatedDocument doc;
    doc.doc_id = padded("cov", cov_no++, 3);
    doc.diseases.push_back(padded("D", d + 1, 3));
    doc.genes.push_back(padded("G", g + 1, 3));
    disease_seen[d] = true;
    gene_seen[g] = true;
    coocc_total += 1;
    cooccurring_diseases.insert(d);
    store_genes.insert(g);
    docs_with_disease[d] += 1;
    pair_docs[{d, g}] += 1;
    result.docs.push_back(std::move(doc));
  }

  for (const auto& [d, g] : all_pairs)
    result.gold.associations.insert({padded("D", d + 1, 3), padded("G", g + 1, 3)});

  // Conditional co-occurrence rates of planted vs non-planted pairs.
  std::uint64_t true_num = 0;
  std::uint64_t true_den = 0;
  std::uint64_t false_num = 0;
  std::uint64_t false_den = 0;
  for (std::size_t d = 0; d < cfg.n_diseases; ++d) {
    true_den += docs_with_disease[d] * disease_gold[d].size();
    false_den += docs_with_disease[d] * (eligible - disease_gold[d].size());
  }
  for (const auto& [pair, count] : pair_docs) {
    if (pair.second >= eligible) continue;  // hubs excluded from the contrast
    if (strength.count(pair))
      true_num += count;
    else
      false_num += count;
  }
  auto rate = [](std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };

  auto& truth = result.truth;
  truth.emplace_back("seed", std::to_string(cfg.seed));
  truth.emplace_back("n_diseases", std::to_string(cfg.n_diseases));
  truth.emplace_back("n_genes", std::to_string(cfg.n_genes));
  truth.emplace_back("n_docs", std::to_string(result.docs.size()));
  truth.emplace_back("n_hub_genes", std::to_string(hub_count));
  truth.emplace_back("assoc_density", format_double(cfg.assoc_density));
  truth.emplace_back("signal_strength", format_double(cfg.signal_strength));
  truth.emplace_back("interaction_density", format_double(cfg.interaction_density));
  truth.emplace_back("noise_rate", format_double(cfg.noise_rate));
  truth.emplace_back("n_gold", std::to_string(n_gold));
  truth.emplace_back("n_events", std::to_string(n_events));
  truth.emplace_back("total_cooccurrence", std::to_string(coocc_total));
  truth.emplace_back("n_diseases_cooccurring", std::to_string(cooccurring_diseases.size()));
  truth.emplace_back("n_store_genes", std::to_string(store_genes.size()));
  truth.emplace_back("true_pair_rate", format_double(rate(true_num, true_den)));
  truth.emplace_back("false_pair_rate", format_double(rate(false_num, false_den)));
  return result;
}

void write_truth_report(const std::string& path,
                        const std::vector<std::pair<std::string, std::string>>& truth) {
  std::ostringstream out;
  for (const auto& [key, value] : truth) out << key << '\t' << value << '\n';
  write_file(path, out.str());
}

}  // namespace genelink
