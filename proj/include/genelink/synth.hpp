#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "genelink/corpus.hpp"
#include "genelink/dataset.hpp"

namespace genelink {

struct SynthConfig {
  std::size_t n_diseases = 40;
  std::size_t n_genes = 120;
  std::size_t n_docs = 300;
  double assoc_density = 0.05;
  double signal_strength = 0.6;
  double interaction_density = 0.02;
  double noise_rate = 0.05;
  std::uint64_t seed = 42;
};

struct SynthResult {
  std::vector<AnnotatedDocument> docs;
  GoldStandard gold;
  std::vector<std::pair<std::string, std::string>> truth;  // ordered report rows
};

/// Plants a gold association set and emits a corpus around it: disease
/// activity is skewed, planted pairs co-occur above the noise floor, and
/// gene interaction events prefer genes sharing a planted disease. Every
/// planted disease and gene appears in at least one document. Byte-stable
/// per seed. Throws std::invalid_argument on a bad config or an empty gold
/// set.
SynthResult generate_corpus(const SynthConfig& config);

void write_truth_report(const std::string& path,
                        const std::vector<std::pair<std::string, std::string>>& truth);

}  // namespace genelink
