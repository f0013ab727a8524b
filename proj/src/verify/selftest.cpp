// SPDX-License-Identifier: Apache-2.0
#include "pmat/verify/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pmat/encoding.hpp"
#include "pmat/eval/metrics.hpp"
#include "pmat/synth.hpp"
#include "pmat/verify/encoding_oracle.hpp"
#include "pmat/verify/gradcheck.hpp"
#include "pmat/verify/svm_oracle.hpp"

namespace pmat::verify {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

GroupResult encoding_group(std::uint64_t seed) {
  constexpr std::size_t kSnippets = 10;
  double worst = 0.0;
  for (std::size_t i = 0; i < kSnippets; ++i) {
    const auto s = random_snippet(seed, i);
    const auto a = encode(s);
    const auto b = brute_force_encode(s);
    for (std::size_t k = 0; k < a.values().size(); ++k) {
      worst = std::max(worst, std::fabs(a.values()[k] - b.values()[k]));
    }
  }
  return {"encoding", worst <= 1e-12,
          std::to_string(kSnippets) + " snippets, max abs difference " + sci(worst)};
}

GroupResult gradient_group(std::uint64_t seed, double fault) {
  GradCheckOptions o;
  o.seed = seed;
  o.analytic_scale = fault;
  GroupResult g{"gradients", true, ""};
  double worst = 0.0;
  std::size_t checked = 0;
  std::string failing;
  for (const auto& r : gradient_battery(o)) {
    worst = std::max(worst, r.max_error);
    checked += r.checked;
    if (!r.passed) {
      g.passed = false;
      if (failing.empty()) failing = r.label;
    }
  }
  g.detail = std::to_string(checked) + " entries, max relative error " + sci(worst);
  if (!failing.empty()) g.detail += ", first failure " + failing;
  return g;
}

GroupResult metrics_group(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t bad = 0;
  constexpr std::size_t kTables = 1000;
  for (std::size_t i = 0; i < kTables; ++i) {
    const auto tp = rng.below(50), tn = rng.below(50), fp = rng.below(50), fn = rng.below(50);
    const auto m = eval::metrics_from_counts(tp, tn, fp, fn);
    if (m.total() != tp + tn + fp + fn) ++bad;
    if (tp + fn > 0 && tn + fp > 0) {
      if (!m.ba || *m.ba != (*m.tpr + *m.tnr) / 2.0) ++bad;
    } else if (m.ba) {
      ++bad;
    }
  }
  return {"metrics", bad == 0, std::to_string(kTables) + " random confusion tables, " + std::to_string(bad) + " violations"};
}

GroupResult svm_group(std::uint64_t seed) {
  Rng rng(seed);
  double worst_box = 0.0, worst_eq = 0.0, worst_gap = 0.0, worst_obj = 0.0;
  std::size_t separable_errors = 0;
  constexpr std::size_t kProblems = 6;
  for (std::size_t k = 0; k < kProblems; ++k) {
    std::vector<std::vector<double>> rows;
    std::vector<Label> labels;
    for (std::size_t i = 0; i < 10; ++i) {
      const bool pos = i % 2 == 0;
      const double shift = pos ? 1.5 : -1.5;
      rows.push_back({shift + rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
      labels.push_back(pos ? Label::FmPlus : Label::FmMinus);
    }
    models::SvmParams params;
    params.c = k % 2 == 0 ? 1000.0 : 1.0;
    params.kernel.kind = k < 2 ? models::KernelKind::Polynomial : models::KernelKind::Rbf;
    params.kernel.degree = 1;
    params.kernel.gamma = k < 2 ? 1.0 : 0.5;
    const auto fit = models::svm_fit(rows, labels, params);
    worst_box = std::max(worst_box, box_violation(fit.solution.alpha, params.c));
    worst_eq = std::max(worst_eq, equality_residual(fit.solution.alpha, fit.problem.y));
    worst_gap = std::max(worst_gap, fit.solution.kkt_gap);
    const auto oracle = projected_gradient_dual(fit.problem, 20000);
    worst_obj = std::max(worst_obj, fit.problem.objective(fit.solution.alpha) - oracle.objective);
    if (params.c == 1000.0) {
      for (std::size_t i = 0; i < rows.size(); ++i) separable_errors += fit.model.classify(rows[i]) != labels[i];
    }
  }
  const bool ok = worst_box == 0.0 && worst_eq < 1e-3 && worst_gap < 1e-3 && worst_obj < 1e-3 && separable_errors == 0;
  return {"svm", ok,
          std::to_string(kProblems) + " toy problems, box " + sci(worst_box) + ", |sum a y| " + sci(worst_eq) +
              ", KKT gap " + sci(worst_gap) + ", objective excess " + sci(worst_obj) + ", separable errors " +
              std::to_string(separable_errors)};
}

}  // namespace

PressureSnippet random_snippet(std::uint64_t seed, std::size_t index) {
  Rng rng(mix_seed(seed, index));
  if (index % 2 == 0) {
    SynthSpec spec;
    spec.seed = rng.next();
    spec.label = rng.uniform() < 0.5 ? Label::FmPlus : Label::FmMinus;
    spec.pressure_scale = rng.uniform(20.0, 200.0);
    spec.noise = std::floor(rng.uniform(0.0, 6.0));
    const std::size_t blobs = 1 + rng.below(3);
    for (std::size_t b = 0; b < blobs; ++b) {
      BlobSpec blob;
      blob.center_row = rng.uniform(3.0, 29.0);
      blob.center_col = rng.uniform(6.0, 29.0);
      blob.radius = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.5, 3.5);
      blob.amplitude = rng.uniform(0.0, 3.0);
      blob.frequency_hz = rng.uniform(0.2, 8.0);
      blob.weight = rng.uniform(0.3, 1.2);
      blob.phase_row = rng.uniform(0.0, 6.28);
      blob.phase_col = rng.uniform(0.0, 6.28);
      spec.blobs.push_back(blob);
    }
    return generate_synthetic(spec);
  }
  PressureSnippet s;
  s.frames.resize(kSnippetFrames);
  s.label = rng.uniform() < 0.5 ? Label::FmPlus : Label::FmMinus;
  s.infant_id = "R";
  s.snippet_id = "R" + std::to_string(index);
  const double density = rng.uniform(0.0, 0.02);
  const bool skip_bottom = rng.uniform() < 0.25;
  for (auto& frame : s.frames) {
    frame.fill(0);
    for (std::size_t cell = 0; cell < kGridCells; ++cell) {
      if (skip_bottom && cell / kGridCols >= 13) continue;
      if (rng.uniform() < density) frame[cell] = static_cast<std::uint8_t>(1 + rng.below(255));
    }
  }
  return s;
}

std::vector<GroupResult> run_selftest(const SelftestOptions& options) {
  return {encoding_group(mix_seed(options.seed, 1)), gradient_group(mix_seed(options.seed, 2), options.gradient_fault),
          metrics_group(mix_seed(options.seed, 3)), svm_group(mix_seed(options.seed, 4))};
}

}  // namespace pmat::verify
