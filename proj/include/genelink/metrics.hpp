#pragma once

#include <cstdint>

namespace genelink {

/// Positive-class precision/recall/F1. Zero denominators give 0 and set
/// the degenerate flag.
struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool degenerate = false;

  bool operator==(const Metrics&) const = default;
};

inline Metrics confusion_metrics(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  Metrics m;
  if (tp + fp == 0 || tp + fn == 0) m.degenerate = true;
  m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  m.f1 = m.precision + m.recall == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

}  // namespace genelink
