// SPDX-License-Identifier: Apache-2.0
#include "pmat/models/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pmat/binary_io.hpp"

namespace pmat::models {

namespace {

constexpr double kTau = 1e-12;

double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

bool in_up(double y, double a, double c) { return y > 0 ? a < c : a > 0; }
bool in_low(double y, double a, double c) { return y > 0 ? a > 0 : a < c; }

}  // namespace

void KernelSpec::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error("kernel gamma must be positive");
  if (kind == KernelKind::Polynomial && (degree < 1 || degree > 3)) {
    throw Error("polynomial kernel degree must be 1, 2 or 3, got " + std::to_string(degree));
  }
}

double kernel_eval(const KernelSpec& k, std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error("kernel arguments differ in length");
  if (k.kind == KernelKind::Rbf) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = u[i] - v[i];
      d2 += d * d;
    }
    return std::exp(-k.gamma * d2);
  }
  if (k.degree < 1 || k.degree > 3) throw Error("polynomial kernel degree must be 1, 2 or 3");
  const double base = k.gamma * dot(u, v) + k.coef0;
  double r = base;
  for (int i = 1; i < k.degree; ++i) r *= base;
  return r;
}

Standardizer Standardizer::fit(std::span<const std::vector<double>> rows) {
  if (rows.empty()) throw Error("cannot standardize an empty set");
  const std::size_t d = rows.front().size();
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 0.0);
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < d; ++k) s.mean[k] += r[k];
  }
  for (auto& m : s.mean) m /= static_cast<double>(rows.size());
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < d; ++k) {
      const double e = r[k] - s.mean[k];
      s.scale[k] += e * e;
    }
  }
  for (auto& v : s.scale) {
    v = std::sqrt(v / static_cast<double>(rows.size()));
    if (!(v > 0.0)) v = 1.0;
  }
  return s;
}

Standardizer Standardizer::identity(std::size_t dims) {
  return {std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0)};
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
  if (row.size() != mean.size()) {
    throw Error("expected " + std::to_string(mean.size()) + " features, got " + std::to_string(row.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) out[k] = (row[k] - mean[k]) / scale[k];
  return out;
}

double SvmModel::decision(std::span<const double> row) const {
  const auto z = standardizer.apply(row);
  double s = bias;
  for (std::size_t i = 0; i < support_vectors.size(); ++i) s += dual_coef[i] * kernel_eval(kernel, support_vectors[i], z);
  return s;
}

Label SvmModel::classify(std::span<const double> row) const {
  return decision(row) >= 0.0 ? Label::FmPlus : Label::FmMinus;
}

double DualProblem::objective(std::span<const double> alpha) const {
  double quad = 0.0;
  double lin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] == 0.0) continue;
    lin += alpha[i];
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += q(i, j) * alpha[j];
    quad += alpha[i] * row;
  }
  return 0.5 * quad - lin;
}

DualSolution solve_dual(const DualProblem& p, const SmoSettings& settings) {
  const std::size_t n = p.n;
  const double c = p.c;
  DualSolution sol;
  sol.alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);
  std::vector<double> qd(n);
  for (std::size_t i = 0; i < n; ++i) qd[i] = p.kernel[i * n + i];

  std::size_t cap = settings.max_iterations;
  if (cap == 0) cap = std::max<std::size_t>(10 * n * n, 100000);

  auto& a = sol.alpha;
  const auto& y = p.y;
  while (true) {
    // Maximal violating index i, then second-order choice of j.
    double gmax = -std::numeric_limits<double>::infinity();
    double gmax2 = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(y[t], a[t], c) && (i == n || -y[t] * grad[t] > gmax)) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    }
    std::size_t j = n;
    double best_obj = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      if (!in_low(y[t], a[t], c)) continue;
      const double yg = y[t] * grad[t];
      gmax2 = std::max(gmax2, yg);
      if (i == n) continue;
      const double grad_diff = gmax + yg;
      if (grad_diff > 0.0) {
        double quad = qd[i] + qd[t] - 2.0 * p.kernel[i * n + t];
        if (quad <= 0.0) quad = kTau;
        const double obj = -(grad_diff * grad_diff) / quad;
        if (obj < best_obj) {
          best_obj = obj;
          j = t;
        }
      }
    }
    sol.kkt_gap = (i == n || gmax2 == -std::numeric_limits<double>::infinity()) ? 0.0 : gmax + gmax2;
    if (i == n || j == n || sol.kkt_gap < settings.tolerance) {
      sol.converged = true;
      break;
    }
    if (sol.iterations >= cap) break;
    ++sol.iterations;

    const double old_ai = a[i];
    const double old_aj = a[j];
    const double qij = p.q(i, j);
    if (y[i] != y[j]) {
      double quad = qd[i] + qd[j] + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0.0) {
        if (a[j] < 0.0) {
          a[j] = 0.0;
          a[i] = diff;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = -diff;
      }
      if (diff > 0.0) {
        if (a[i] > c) {
          a[i] = c;
          a[j] = c - diff;
        }
      } else if (a[j] > c) {
        a[j] = c;
        a[i] = c + diff;
      }
    } else {
      double quad = qd[i] + qd[j] - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > c) {
        if (a[i] > c) {
          a[i] = c;
          a[j] = sum - c;
        }
      } else if (a[j] < 0.0) {
        a[j] = 0.0;
        a[i] = sum;
      }
      if (sum > c) {
        if (a[j] > c) {
          a[j] = c;
          a[i] = sum - c;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = sum;
      }
    }
    const double dai = a[i] - old_ai;
    const double daj = a[j] - old_aj;
    const double* ki = &p.kernel[i * n];
    const double* kj = &p.kernel[j * n];
    const double yi_dai = y[i] * dai;
    const double yj_daj = y[j] * daj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += y[t] * (ki[t] * yi_dai + kj[t] * yj_daj);
  }

  // Bias from free vectors, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (a[t] >= c) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (a[t] <= 0.0) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  sol.rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
  double obj = 0.0;
  for (std::size_t t = 0; t < n; ++t) obj += a[t] * (grad[t] - 1.0);
  sol.objective = obj / 2.0;
  return sol;
}

SvmFit svm_fit(std::span<const std::vector<double>> rows, std::span<const Label> labels, const SvmParams& params) {
  if (rows.empty()) throw Error("SVM training set is empty");
  if (rows.size() != labels.size()) throw Error("SVM rows and labels differ in count");
  if (!(params.c > 0.0)) throw Error("SVM C must be positive");
  params.kernel.validate();
  const std::size_t d = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != d) throw Error("SVM feature rows differ in length");
  }
  const bool has_pos = std::find(labels.begin(), labels.end(), Label::FmPlus) != labels.end();
  const bool has_neg = std::find(labels.begin(), labels.end(), Label::FmMinus) != labels.end();
  if (!has_pos || !has_neg) throw Error("SVM training set holds a single class");

  SvmFit fit;
  SvmModel& m = fit.model;
  m.kernel = params.kernel;
  m.c = params.c;
  m.standardized = params.standardize;
  m.standardizer = params.standardize ? Standardizer::fit(rows) : Standardizer::identity(d);

  const std::size_t n = rows.size();
  std::vector<std::vector<double>> z;
  z.reserve(n);
  for (const auto& r : rows) z.push_back(m.standardizer.apply(r));

  DualProblem& p = fit.problem;
  p.n = n;
  p.c = params.c;
  p.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.y[i] = labels[i] == Label::FmPlus ? 1.0 : -1.0;
  p.kernel.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double k = kernel_eval(params.kernel, z[i], z[j]);
      p.kernel[i * n + j] = k;
      p.kernel[j * n + i] = k;
    }
  }

  fit.solution = solve_dual(p, params.smo);
  for (std::size_t i = 0; i < n; ++i) {
    if (fit.solution.alpha[i] > 0.0) {
      m.support_vectors.push_back(z[i]);
      m.dual_coef.push_back(fit.solution.alpha[i] * p.y[i]);
    }
  }
  m.bias = -fit.solution.rho;
  return fit;
}

SvmModel svm_train(std::span<const std::vector<double>> rows, std::span<const Label> labels, const SvmParams& params) {
  return svm_fit(rows, labels, params).model;
}

std::string_view to_string(KernelKind k) { return k == KernelKind::Rbf ? "rbf" : "poly"; }

KernelKind parse_kernel_kind(std::string_view text) {
  if (text == "rbf") return KernelKind::Rbf;
  if (text == "poly") return KernelKind::Polynomial;
  throw Error("unknown kernel kind '" + std::string(text) + "'");
}

nlohmann::json to_json(const KernelSpec& k) {
  return {{"kind", to_string(k.kind)}, {"gamma", k.gamma}, {"degree", k.degree}, {"coef0", k.coef0}};
}

KernelSpec kernel_spec_from_json(const nlohmann::json& j) {
  KernelSpec k;
  k.kind = parse_kernel_kind(j.at("kind").get<std::string>());
  k.gamma = j.at("gamma").get<double>();
  k.degree = j.at("degree").get<int>();
  k.coef0 = j.value("coef0", 0.0);
  return k;
}

void save_svm(const SvmModel& model, const std::filesystem::path& path, std::string_view architecture) {
  const std::size_t d = model.dims();
  HeaderedBlob blob;
  blob.header = {{"format", "pmat-svm"},
                 {"version", 1},
                 {"kernel", to_json(model.kernel)},
                 {"C", model.c},
                 {"standardized", model.standardized},
                 {"mean", model.standardizer.mean},
                 {"scale", model.standardizer.scale},
                 {"bias", model.bias},
                 {"dims", d},
                 {"support_vectors", model.support_vectors.size()}};
  for (const auto& sv : model.support_vectors) blob.payload.insert(blob.payload.end(), sv.begin(), sv.end());
  blob.payload.insert(blob.payload.end(), model.dual_coef.begin(), model.dual_coef.end());
  if (!architecture.empty()) blob.header["architecture"] = std::string(architecture);
  blob.header["payload_values"] = blob.payload.size();
  write_headered_blob(path, blob);
}

SvmModel load_svm(const std::filesystem::path& path) {
  const auto blob = read_headered_blob(path, "payload_values");
  const auto& h = blob.header;
  if (h.value("format", "") != "pmat-svm") throw Error(path.string() + " is not an SVM model file");
  if (h.value("version", 0) != 1) throw Error(path.string() + ": unsupported SVM model version");
  SvmModel m;
  m.kernel = kernel_spec_from_json(h.at("kernel"));
  m.c = h.at("C").get<double>();
  m.standardized = h.at("standardized").get<bool>();
  m.standardizer.mean = h.at("mean").get<std::vector<double>>();
  m.standardizer.scale = h.at("scale").get<std::vector<double>>();
  m.bias = h.at("bias").get<double>();
  const auto d = h.at("dims").get<std::size_t>();
  const auto nsv = h.at("support_vectors").get<std::size_t>();
  if (m.standardizer.mean.size() != d || m.standardizer.scale.size() != d || blob.payload.size() != nsv * d + nsv) {
    throw Error(path.string() + ": SVM model sizes are inconsistent");
  }
  for (std::size_t i = 0; i < nsv; ++i) {
    const auto first = blob.payload.begin() + static_cast<std::ptrdiff_t>(i * d);
    m.support_vectors.emplace_back(first, first + static_cast<std::ptrdiff_t>(d));
  }
  m.dual_coef.assign(blob.payload.begin() + static_cast<std::ptrdiff_t>(nsv * d), blob.payload.end());
  return m;
}

}  // namespace pmat::models
