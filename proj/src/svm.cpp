#include "genelink/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <sstream>
#include <unordered_map>

#include "genelink/util.hpp"

namespace genelink {

namespace {
constexpr std::string_view kModelHeader = "#genelink-model\tv1";
constexpr std::size_t kFullGramLimit = 10000;
}

ConvergenceError::ConvergenceError(double C_, double gamma_, std::size_t iterations_)
    : std::runtime_error("SMO did not converge at C=" + format_double(C_) +
                         " gamma=" + format_double(gamma_) + " after " +
                         std::to_string(iterations_) + " iterations"),
      C(C_),
      gamma(gamma_),
      iterations(iterations_) {}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double rbf(const std::vector<double>& a, const std::vector<double>& b, double gamma) {
  return std::exp(-gamma * sq_dist(a, b));
}

/// Kernel rows, computed on demand. Every row is kept while the problem is
/// small; past the limit an LRU set bounded to roughly 256 MB is kept.
class KernelCache {
 public:
  KernelCache(const std::vector<std::vector<double>>& x, double gamma)
      : x_(x), gamma_(gamma), n_(x.size()) {
    if (n_ <= kFullGramLimit) {
      rows_.resize(n_);
    } else {
      capacity_ = std::max<std::size_t>(2, (256ull << 20) / (sizeof(double) * n_));
    }
  }

  const std::vector<double>& row(std::size_t i) {
    if (!rows_.empty()) {
      if (rows_[i].empty()) rows_[i] = compute(i);
      return rows_[i];
    }
    auto it = lru_index_.find(i);
    if (it != lru_index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return lru_.front().second;
    }
    if (lru_.size() >= capacity_) {
      lru_index_.erase(lru_.back().first);
      lru_.pop_back();
    }
    lru_.emplace_front(i, compute(i));
    lru_index_[i] = lru_.begin();
    return lru_.front().second;
  }

 private:
  std::vector<double> compute(std::size_t i) const {
    std::vector<double> row(n_);
    for (std::size_t j = 0; j < n_; ++j) row[j] = rbf(x_[i], x_[j], gamma_);
    return row;
  }

  const std::vector<std::vector<double>>& x_;
  double gamma_;
  std::size_t n_;
  std::vector<std::vector<double>> rows_;
  std::size_t capacity_ = 0;
  std::list<std::pair<std::size_t, std::vector<double>>> lru_;
  std::unordered_map<std::size_t, std::list<std::pair<std::size_t, std::vector<double>>>::iterator>
      lru_index_;
};

}  // namespace

SvmModel train_svm(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                   const SvmParams& params, TrainInfo* info) {
  std::size_t n = x.size();
  if (n == 0 || y.size() != n) throw std::invalid_argument("empty data or label size mismatch");
  if (!(params.C > 0.0) || !(params.gamma > 0.0) || !(params.tol > 0.0))
    throw std::invalid_argument("C, gamma and tol must be positive");
  bool has_pos = false;
  bool has_neg = false;
  std::size_t dim = x[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] != 1 && y[i] != -1) throw std::invalid_argument("labels must be +1/-1");
    (y[i] > 0 ? has_pos : has_neg) = true;
    if (x[i].size() != dim) throw std::invalid_argument("inconsistent feature dimensions");
    for (double v : x[i])
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
  }
  if (!has_pos || !has_neg) throw std::invalid_argument("both classes required for training");

  const double C = params.C;
  KernelCache cache(x, params.gamma);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of the dual at alpha = 0

  std::size_t iter = 0;
  double m_final = 0.0;
  double big_m_final = 0.0;
  for (;; ++iter) {
    // Maximal violating pair, lowest index on ties.
    double m = -std::numeric_limits<double>::infinity();
    double big_m = std::numeric_limits<double>::infinity();
    std::ptrdiff_t i = -1;
    std::ptrdiff_t j = -1;
    for (std::size_t t = 0; t < n; ++t) {
      double v = -y[t] * grad[t];
      bool in_up = y[t] > 0 ? alpha[t] < C : alpha[t] > 0.0;
      bool in_low = y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < C;
      if (in_up && v > m) {
        m = v;
        i = static_cast<std::ptrdiff_t>(t);
      }
      if (in_low && v < big_m) {
        big_m = v;
        j = static_cast<std::ptrdiff_t>(t);
      }
    }
    m_final = m;
    big_m_final = big_m;
    if (i < 0 || j < 0 || m - big_m <= params.tol) break;
    if (iter >= params.max_iter) throw ConvergenceError(C, params.gamma, iter);

    std::size_t ui = static_cast<std::size_t>(i);
    std::size_t uj = static_cast<std::size_t>(j);
    const std::vector<double>& ki = cache.row(ui);
    const std::vector<double>& kj = cache.row(uj);

    double lo;
    double hi;
    if (y[ui] != y[uj]) {
      lo = std::max(0.0, alpha[uj] - alpha[ui]);
      hi = std::min(C, C + alpha[uj] - alpha[ui]);
    } else {
      lo = std::max(0.0, alpha[ui] + alpha[uj] - C);
      hi = std::min(C, alpha[ui] + alpha[uj]);
    }
    double eta = std::max(ki[ui] + kj[uj] - 2.0 * ki[uj], 1e-12);
    // E_i - E_j without bias; b cancels in the difference.
    double delta_e = y[ui] * grad[ui] - y[uj] * grad[uj];
    double aj = alpha[uj] + y[uj] * delta_e / eta;
    aj = std::clamp(aj, lo, hi);
    double daj = aj - alpha[uj];
    double dai = -static_cast<double>(y[ui] * y[uj]) * daj;
    double ai = alpha[ui] + dai;

    // Snap to the box to keep the up/low sets crisp.
    if (ai < 1e-12) ai = 0.0;
    if (ai > C - 1e-12) ai = C;
    if (aj < 1e-12) aj = 0.0;
    if (aj > C - 1e-12) aj = C;
    dai = ai - alpha[ui];
    daj = aj - alpha[uj];
    alpha[ui] = ai;
    alpha[uj] = aj;

    for (std::size_t t = 0; t < n; ++t)
      grad[t] += y[t] * (y[ui] * ki[t] * dai + y[uj] * kj[t] * daj);
  }

  // Bias from free support vectors; fall back to the violation midpoint.
  double b = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0 && alpha[t] < C) {
      b += -y[t] * grad[t];
      ++n_free;
    }
  }
  if (n_free > 0)
    b /= static_cast<double>(n_free);
  else
    b = (m_final + big_m_final) / 2.0;

  SvmModel model;
  model.C = C;
  model.gamma = params.gamma;
  model.b = b;
  std::size_t n_bounded = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] <= 0.0) continue;
    model.coef.push_back(alpha[t] * y[t]);
    model.sv.push_back(x[t]);
    if (alpha[t] >= C) ++n_bounded;
  }
  if (info != nullptr) {
    info->iterations = iter;
    double obj = 0.0;
    for (std::size_t t = 0; t < n; ++t) obj += alpha[t] * (grad[t] - 1.0);
    info->objective = obj / 2.0;
    info->n_support = model.coef.size();
    info->n_bounded = n_bounded;
  }
  return model;
}

double SvmModel::decision(const std::vector<double>& x) const {
  if (!sv.empty() && x.size() != sv[0].size())
    throw std::invalid_argument("feature dimension does not match model");
  double s = b;
  for (std::size_t i = 0; i < sv.size(); ++i) s += coef[i] * rbf(sv[i], x, gamma);
  return s;
}

int SvmModel::predict(const std::vector<double>& x) const {
  return decision(x) >= 0.0 ? 1 : -1;
}

std::string SvmModel::serialize() const {
  std::ostringstream out;
  out << kModelHeader << '\n';
  out << "#C\t" << format_double(C) << '\n';
  out << "#gamma\t" << format_double(gamma) << '\n';
  out << "#b\t" << format_double(b) << '\n';
  out << "#schema\t" << schema_digest << '\n';
  out << "#dim\t" << (sv.empty() ? 0 : sv[0].size()) << '\n';
  out << "#sv\t" << sv.size() << '\n';
  for (std::size_t i = 0; i < sv.size(); ++i) {
    out << format_double(coef[i]);
    for (std::size_t j = 0; j < sv[i].size(); ++j)
      if (sv[i][j] != 0.0) out << ' ' << (j + 1) << ':' << format_double(sv[i][j]);
    out << '\n';
  }
  return out.str();
}

void SvmModel::save(const std::string& path) const { write_file(path, serialize()); }

SvmModel SvmModel::parse(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kModelHeader)
    throw IoError("model " + origin + ": bad or missing version header");
  SvmModel model;
  auto header = [&](const char* key) {
    if (!std::getline(in, line)) throw IoError("model " + origin + ": truncated header");
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0] != key)
      throw IoError("model " + origin + ": expected " + key + " line");
    return fields[1];
  };
  model.C = std::stod(header("#C"));
  model.gamma = std::stod(header("#gamma"));
  model.b = std::stod(header("#b"));
  model.schema_digest = header("#schema");
  std::size_t dim = std::stoull(header("#dim"));
  std::size_t n_sv = std::stoull(header("#sv"));
  for (std::size_t i = 0; i < n_sv; ++i) {
    if (!std::getline(in, line)) throw IoError("model " + origin + ": truncated support vectors");
    std::istringstream row(line);
    std::string token;
    if (!(row >> token)) throw IoError("model " + origin + ": empty support vector row");
    model.coef.push_back(std::stod(token));
    std::vector<double> v(dim, 0.0);
    while (row >> token) {
      auto colon = token.find(':');
      if (colon == std::string::npos)
        throw IoError("model " + origin + ": malformed sparse entry " + token);
      std::size_t idx = std::stoull(token.substr(0, colon));
      if (idx < 1 || idx > dim)
        throw IoError("model " + origin + ": sparse index out of range");
      v[idx - 1] = std::stod(token.substr(colon + 1));
    }
    model.sv.push_back(std::move(v));
  }
  return model;
}

SvmModel SvmModel::load(const std::string& path) { return parse(read_file(path), path); }

std::vector<double> default_c_grid() {
  std::vector<double> out;
  for (int e = -5; e <= 15; e += 2) out.push_back(std::ldexp(1.0, e));
  return out;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> out;
  for (int e = -15; e <= 3; e += 2) out.push_back(std::ldexp(1.0, e));
  return out;
}

std::vector<std::size_t> stratified_folds(const std::vector<int>& y, std::size_t folds,
                                          std::uint64_t seed, std::size_t* folds_used) {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] > 0 ? pos : neg).push_back(i);
  if (folds < 2) throw std::invalid_argument("need at least 2 folds");
  std::size_t eff = std::min({folds, pos.size(), neg.size()});
  if (eff < 2)
    throw std::invalid_argument("cannot stratify: a class has fewer than 2 examples");
  std::mt19937_64 rng(seed);
  det_shuffle(pos, rng);
  det_shuffle(neg, rng);
  std::vector<std::size_t> assignment(y.size(), 0);
  for (std::size_t t = 0; t < pos.size(); ++t) assignment[pos[t]] = t % eff;
  for (std::size_t t = 0; t < neg.size(); ++t) assignment[neg[t]] = t % eff;
  if (folds_used != nullptr) *folds_used = eff;
  return assignment;
}

GridSearchResult grid_search(const std::vector<std::vector<double>>& x,
                             const std::vector<int>& y, const std::vector<double>& c_grid,
                             const std::vector<double>& gamma_grid, std::size_t folds,
                             std::uint64_t seed, double tol, std::size_t threads) {
  if (c_grid.empty() || gamma_grid.empty()) throw std::invalid_argument("empty grid");
  GridSearchReport report;
  report.seed = seed;
  report.folds_requested = folds;
  std::vector<std::size_t> assignment = stratified_folds(y, folds, seed, &report.folds_used);

  report.cells.resize(c_grid.size() * gamma_grid.size());
  for (std::size_t ci = 0; ci < c_grid.size(); ++ci)
    for (std::size_t gi = 0; gi < gamma_grid.size(); ++gi) {
      GridCell& cell = report.cells[ci * gamma_grid.size() + gi];
      cell.C = c_grid[ci];
      cell.gamma = gamma_grid[gi];
    }

  parallel_for(report.cells.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      GridCell& cell = report.cells[c];
      SvmParams params;
      params.C = cell.C;
      params.gamma = cell.gamma;
      params.tol = tol;
      double f1_sum = 0.0;
      for (std::size_t fold = 0; fold < report.folds_used; ++fold) {
        std::vector<std::vector<double>> train_x;
        std::vector<int> train_y;
        std::vector<std::size_t> test_idx;
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (assignment[i] == fold) {
            test_idx.push_back(i);
          } else {
            train_x.push_back(x[i]);
            train_y.push_back(y[i]);
          }
        }
        SvmModel model;
        try {
          model = train_svm(train_x, train_y, params);
        } catch (const ConvergenceError&) {
          cell.converged = false;
          break;
        }
        std::uint64_t tp = 0;
        std::uint64_t fp = 0;
        std::uint64_t fn = 0;
        for (std::size_t i : test_idx) {
          int pred = model.predict(x[i]);
          if (pred > 0 && y[i] > 0) ++tp;
          if (pred > 0 && y[i] < 0) ++fp;
          if (pred < 0 && y[i] > 0) ++fn;
        }
        f1_sum += confusion_metrics(tp, fp, fn).f1;
      }
      cell.mean_f1 = cell.converged ? f1_sum / static_cast<double>(report.folds_used) : 0.0;
    }
  });

  // Best converged cell; the C-major cell order makes "first best" the
  // smallest C, then smallest gamma.
  std::ptrdiff_t best = -1;
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    if (!report.cells[c].converged) continue;
    if (best < 0 || report.cells[c].mean_f1 > report.cells[best].mean_f1)
      best = static_cast<std::ptrdiff_t>(c);
  }
  if (best < 0) {
    const GridCell& fail = report.cells.front();
    throw ConvergenceError(fail.C, fail.gamma, 0);
  }
  report.chosen = static_cast<std::size_t>(best);

  SvmParams params;
  params.C = report.cells[report.chosen].C;
  params.gamma = report.cells[report.chosen].gamma;
  params.tol = tol;
  GridSearchResult result;
  result.model = train_svm(x, y, params);
  result.report = report;
  return result;
}

}  // namespace genelink
