#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "genelink/metrics.hpp"

namespace genelink {

/// SMO failed to reach the KKT tolerance within the iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(double C, double gamma, std::size_t iterations);

  double C;
  double gamma;
  std::size_t iterations;
};

struct SvmParams {
  double C = 1.0;
  double gamma = 1.0;
  double tol = 1e-3;
  std::size_t max_iter = 10'000'000;
};

/// RBF-kernel SVM in dual form. coef[i] = alpha_i * y_i, all alpha_i > 0.
class SvmModel {
 public:
  double C = 0.0;
  double gamma = 0.0;
  double b = 0.0;
  std::string schema_digest;
  std::vector<double> coef;
  std::vector<std::vector<double>> sv;

  /// Sum over support vectors of coef_i * K(sv_i, x) + b.
  double decision(const std::vector<double>& x) const;
  /// +1 when decision >= 0, else -1.
  int predict(const std::vector<double>& x) const;

  std::string serialize() const;
  void save(const std::string& path) const;
  static SvmModel parse(const std::string& text, const std::string& origin);
  static SvmModel load(const std::string& path);

  bool operator==(const SvmModel&) const = default;
};

/// Diagnostics of one SMO solve.
struct TrainInfo {
  std::size_t iterations = 0;
  double objective = 0.0;  // dual objective at the solution
  std::size_t n_support = 0;
  std::size_t n_bounded = 0;  // support vectors at alpha == C
};

/// Solves the soft-margin dual by SMO with maximal-violating-pair selection.
/// Labels must be +1/-1 with both classes present; features must be finite.
/// Throws ConvergenceError when the cap is hit, std::invalid_argument on
/// malformed input.
SvmModel train_svm(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                   const SvmParams& params, TrainInfo* info = nullptr);

struct GridCell {
  double C = 0.0;
  double gamma = 0.0;
  double mean_f1 = 0.0;
  bool converged = true;

  bool operator==(const GridCell&) const = default;
};

struct GridSearchReport {
  std::vector<GridCell> cells;
  std::size_t chosen = 0;  // index into cells
  std::uint64_t seed = 0;
  std::size_t folds_requested = 0;
  std::size_t folds_used = 0;

  bool operator==(const GridSearchReport&) const = default;
};

struct GridSearchResult {
  SvmModel model;
  GridSearchReport report;
};

/// The de-facto RBF grid: C = 2^-5..2^15, gamma = 2^-15..2^3, odd exponents.
std::vector<double> default_c_grid();
std::vector<double> default_gamma_grid();

/// Deterministic stratified fold assignment; entry i is the fold of row i.
/// The effective fold count shrinks to min(folds, #pos, #neg); below 2
/// throws std::invalid_argument.
std::vector<std::size_t> stratified_folds(const std::vector<int>& y, std::size_t folds,
                                          std::uint64_t seed, std::size_t* folds_used);

/// Mean positive-class F1 over stratified CV folds for every (C, gamma)
/// cell, then a full retrain of the best cell. Ties prefer smaller C, then
/// smaller gamma. Cells that fail to converge are excluded; if every cell
/// fails, rethrows the last ConvergenceError.
GridSearchResult grid_search(const std::vector<std::vector<double>>& x,
                             const std::vector<int>& y, const std::vector<double>& c_grid,
                             const std::vector<double>& gamma_grid, std::size_t folds,
                             std::uint64_t seed, double tol = 1e-3, std::size_t threads = 1);

}  // namespace genelink
