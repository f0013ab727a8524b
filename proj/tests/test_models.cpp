// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pmat/models/catalog.hpp"
#include "pmat/models/classifier.hpp"
#include "pmat/models/inputs.hpp"
#include "pmat/models/selection.hpp"
#include "pmat/models/svm.hpp"
#include "pmat/synth.hpp"
#include "pmat/verify/svm_oracle.hpp"
#include "support.hpp"

using namespace pmat;
using namespace pmat::models;

namespace {

struct Toy {
  std::vector<std::vector<double>> rows;
  std::vector<Label> labels;
};

// Two Gaussian clouds; `gap` shifts them apart along (1, 1).
Toy clouds(std::size_t n, double gap, std::uint64_t seed, std::size_t dims = 2) {
  Rng rng(seed);
  Toy t;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = i % 2 == 0;
    std::vector<double> r(dims);
    for (auto& v : r) v = rng.normal() + (pos ? gap : -gap);
    t.rows.push_back(r);
    t.labels.push_back(pos ? Label::FmPlus : Label::FmMinus);
  }
  return t;
}

double train_accuracy(const SvmModel& m, const Toy& t) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) ok += m.classify(t.rows[i]) == t.labels[i];
  return static_cast<double>(ok) / static_cast<double>(t.rows.size());
}

double signed_sum(const DualSolution& s, const DualProblem& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) acc += s.alpha[i] * p.y[i];
  return acc;
}

std::size_t count_excluding_batch_norm_by_hand(const ArchSpec& spec) {
  // Convolutions: (kernel * in + 1) * filters, dense: (in + 1) * units.
  std::size_t total = 0;
  std::size_t width = 6;
  for (const auto& c : spec.convs) {
    total += (c.kernel * width + 1) * c.filters;
    width = c.filters;
  }
  for (std::size_t u : spec.dense_units) {
    total += (width + 1) * u;
    width = u;
  }
  return total + width + 1;
}

std::vector<EncodedSnippet> smoke_snippets() {
  SynthDatasetSpec spec;
  spec.infants = 2;
  spec.snippets_per_class = 4;
  spec.seed = 5;
  const auto raw = generate_synthetic_dataset(spec);
  return encode_all(raw);
}

std::vector<const EncodedSnippet*> pointers(const std::vector<EncodedSnippet>& v) {
  std::vector<const EncodedSnippet*> out;
  for (const auto& s : v) out.push_back(&s);
  return out;
}

nn::Network logistic_with(std::vector<double> w, double b) {
  nn::Network net("logistic", {w.size()});
  auto dense = std::make_unique<nn::Dense>(w.size(), 1);
  dense->weights() = w;
  dense->bias() = {b};
  net.add(std::move(dense));
  net.add(std::make_unique<nn::Sigmoid>());
  return net;
}

}  // namespace

TEST_SUITE("models") {
  TEST_CASE("catalog holds the 28 named classifiers in reporting order") {
    const std::vector<std::string> names{"S1.RBF", "S1.P1",  "S1.P2",  "S1.P3",  "S2.RBF", "S2.P1",  "S2.P2",
                                         "S2.P3",  "F1.1",   "F1.2",   "F1.3",   "F2",     "C1F1.1", "C1F1.2",
                                         "C1F1.3", "C1F1.4", "C1F2",   "C2F1",   "C3F1.1", "C3F1.2", "C3F2",
                                         "L1F1.1", "L1F1.2", "L1F1.3", "L1F1.4", "L1F2",   "L2F2.1", "L2F2.2"};
    REQUIRE(catalog().size() == 28);
    for (std::size_t i = 0; i < names.size(); ++i) {
      CHECK(catalog()[i].name == names[i]);
      CHECK(arch_index(names[i]) == i);
    }
    CHECK_THROWS_AS(find_arch("C4F9"), Error);
    CHECK_THROWS_AS(build_architecture("S1.RBF"), Error);
  }

  TEST_CASE("table rows") {
    const auto& c3f2 = find_arch("C3F2");
    CHECK(c3f2.convs.size() == 3);
    CHECK(c3f2.convs[0].filters == 4);
    CHECK(c3f2.convs[0].kernel == 7);
    CHECK(c3f2.convs[1].filters == 16);
    CHECK(c3f2.convs[1].kernel == 13);
    CHECK(c3f2.convs[2].filters == 64);
    CHECK(c3f2.convs[2].kernel == 21);
    CHECK(c3f2.dense_units == std::vector<std::size_t>{200, 100});
    CHECK(c3f2.input_shape() == std::vector<std::size_t>{500, 6});

    const auto& l = find_arch("L2F2.2");
    CHECK(l.lstm_units == std::vector<std::size_t>{128, 64});
    CHECK(l.input_shape() == std::vector<std::size_t>{50, 60});
    CHECK(find_arch("L1F1.1").input_shape() == std::vector<std::size_t>{25, 120});
    CHECK(find_arch("L1F1.3").input_shape() == std::vector<std::size_t>{100, 30});
    CHECK(find_arch("F1.1").input_shape() == std::vector<std::size_t>{12});
    CHECK(find_arch("F1.2").input_shape() == std::vector<std::size_t>{24});
    CHECK(find_arch("S2.P3").degree == 3);
    CHECK(find_arch("S2.P3").features == FeatureVariant::Full24);
  }

  TEST_CASE("C3F2 parameter count") {
    const auto net = build_architecture("C3F2");
    CHECK(net.parameter_count(false) == 55789);
    CHECK(net.parameter_count(false) == count_excluding_batch_norm_by_hand(find_arch("C3F2")));
    for (const auto& spec : catalog()) {
      if (spec.family != Family::Cnn) continue;
      CAPTURE(spec.name);
      CHECK(build_architecture(spec).parameter_count(false) == count_excluding_batch_norm_by_hand(spec));
    }
  }

  TEST_CASE("F1.1 block structure") {
    const auto net = build_architecture("F1.1");
    using K = nn::LayerKind;
    const std::vector<K> expected{K::Dense, K::Relu, K::BatchNorm, K::Dropout, K::Dense, K::Sigmoid};
    REQUIRE(net.layer_count() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(net.layer(i).kind() == expected[i]);
    CHECK(net.parameter_count(false) == 12 * 100 + 100 + 101);
  }

  TEST_CASE("reshape for LSTM input") {
    MotionSignals s(500);
    for (std::size_t t = 0; t < 500; ++t) {
      for (std::size_t c = 0; c < 6; ++c) s(t, c) = c == 2 ? 0.75 : static_cast<double>(t * 6 + c) / 3000.0;
    }
    const auto m = reshape_for_lstm(s, 50);
    CHECK(m.steps == 50);
    CHECK(m.width == 60);
    for (std::size_t step = 0; step < 50; ++step) {
      for (std::size_t k = 0; k < 60; ++k) {
        if (k % 6 == 2) {
          CHECK(m(step, k) == 0.75);
        } else {
          CHECK(m(step, k) == s(step * 10 + k / 6, k % 6));
        }
      }
    }
    CHECK(reshape_for_lstm(s, 25).width == 120);
    CHECK(reshape_for_lstm(s, 100).width == 30);
    CHECK_THROWS_AS(reshape_for_lstm(s, 500), Error);
    CHECK_THROWS_AS(reshape_for_lstm(s, 20), Error);
  }

  TEST_CASE("kernel values") {
    const std::vector<double> u{1.0, 2.0, -1.0};
    const std::vector<double> v{1.0, 0.0, -1.0};
    CHECK(kernel_eval({KernelKind::Rbf, 3.0}, u, u) == 1.0);
    CHECK(kernel_eval({KernelKind::Rbf, 0.1}, u, v) == doctest::Approx(0.670320).epsilon(1e-6));
    CHECK(kernel_eval({KernelKind::Polynomial, 1.0, 1}, u, v) == 2.0);
    CHECK(kernel_eval({KernelKind::Polynomial, 0.5, 3}, u, v) == 1.0);
    KernelSpec bad{KernelKind::Polynomial, 1.0, 4};
    CHECK_THROWS_AS(bad.validate(), Error);
  }

  TEST_CASE("separable four-point toy with a linear kernel") {
    Toy t;
    t.rows = {{0, 0}, {1, 0}, {3, 3}, {4, 3}};
    t.labels = {Label::FmMinus, Label::FmMinus, Label::FmPlus, Label::FmPlus};
    SvmParams p;
    p.kernel = {KernelKind::Polynomial, 1.0, 1};
    p.c = 1000;
    const auto fit = svm_fit(t.rows, t.labels, p);
    CHECK(train_accuracy(fit.model, t) == 1.0);
    CHECK(fit.solution.converged);
  }

  TEST_CASE("dual feasibility and separable accuracy on toy sets") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      for (auto kind : {KernelKind::Rbf, KernelKind::Polynomial}) {
        const auto t = clouds(30, 3.0, seed);
        SvmParams p;
        p.kernel = {kind, 0.5, 2, 0.0};
        p.c = 10;
        const auto fit = svm_fit(t.rows, t.labels, p);
        CHECK(verify::box_violation(fit.solution.alpha, p.c) == 0.0);
        CHECK(std::abs(signed_sum(fit.solution, fit.problem)) < 1e-3);
        CHECK(fit.solution.kkt_gap <= 1e-3);
        if (kind == KernelKind::Rbf) CHECK(train_accuracy(fit.model, t) == 1.0);
      }
    }
  }

  TEST_CASE("SMO matches the projected-gradient oracle on ten-point problems") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto t = clouds(10, 0.6, 100 + seed, 3);
      SvmParams p;
      p.kernel = {seed % 2 ? KernelKind::Rbf : KernelKind::Polynomial, 0.3, 2, 1.0};
      p.c = seed % 3 ? 1.0 : 100.0;
      const auto fit = svm_fit(t.rows, t.labels, p);
      const auto oracle = verify::projected_gradient_dual(fit.problem);
      CAPTURE(seed);
      CHECK(verify::box_violation(oracle.alpha, p.c) <= 1e-12);
      CHECK(fit.solution.objective <= oracle.objective + 1e-3);
      CHECK(std::abs(fit.solution.objective - oracle.objective) <= 1e-3);
    }
  }

  TEST_CASE("invalid training inputs") {
    const auto t = clouds(6, 1.0, 1);
    SvmParams p;
    std::vector<Label> one_class(6, Label::FmPlus);
    CHECK_THROWS_AS(svm_fit(t.rows, one_class, p), Error);
    p.c = 0;
    CHECK_THROWS_AS(svm_fit(t.rows, t.labels, p), Error);
    std::vector<std::vector<double>> none;
    std::vector<Label> no_labels;
    CHECK_THROWS_AS(svm_fit(none, no_labels, SvmParams{}), Error);
  }

  TEST_CASE("training order does not change predictions") {
    const auto t = clouds(24, 0.8, 9);
    const auto probes = clouds(30, 0.0, 10);
    SvmParams p;
    p.kernel = {KernelKind::Rbf, 0.5};
    p.c = 10;
    p.smo.tolerance = 1e-10;
    const auto a = svm_train(t.rows, t.labels, p);
    std::vector<std::size_t> order(t.rows.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(3);
    rng.shuffle(std::span(order));
    Toy shuffled;
    for (auto i : order) {
      shuffled.rows.push_back(t.rows[i]);
      shuffled.labels.push_back(t.labels[i]);
    }
    const auto b = svm_train(shuffled.rows, shuffled.labels, p);
    for (const auto& r : probes.rows) CHECK(std::abs(a.decision(r) - b.decision(r)) <= 1e-6);
  }

  TEST_CASE("stored standardization reproduces the training transform") {
    auto t = clouds(20, 1.0, 12, 4);
    for (auto& r : t.rows) r[3] = 7.0;  // constant feature
    const auto st = Standardizer::fit(t.rows);
    CHECK(st.scale[3] == 1.0);
    for (std::size_t d = 0; d < 3; ++d) {
      double m = 0, v = 0;
      for (const auto& r : t.rows) m += st.apply(r)[d] / 20.0;
      for (const auto& r : t.rows) v += std::pow(st.apply(r)[d] - m, 2) / 20.0;
      CHECK(std::abs(m) < 1e-12);
      CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
    SvmParams p;
    p.c = 1;
    const auto model = svm_train(t.rows, t.labels, p);
    CHECK(model.standardizer.mean == st.mean);
    CHECK(model.standardizer.scale == st.scale);
    std::size_t matched = 0;
    for (const auto& sv : model.support_vectors) {
      for (const auto& r : t.rows) matched += model.standardizer.apply(r) == sv;
    }
    CHECK(matched == model.support_vectors.size());
  }

  TEST_CASE("grid search records 25 cells and breaks ties toward the first") {
    const auto t = clouds(20, 4.0, 21);
    FeatureSet fit{t.rows, t.labels};
    FeatureSet val{{t.rows[0], t.rows[1]}, {t.labels[0], t.labels[1]}};
    const auto result = svm_grid_search(fit, val);
    REQUIRE(result.candidates.size() == 25);
    CHECK(result.candidates[0].id == "C=0.1,gamma=0.01");
    CHECK(result.candidates[1].id == "C=0.1,gamma=0.1");
    CHECK(result.candidates[5].id == "C=1,gamma=0.01");
    for (const auto& c : result.candidates) REQUIRE(c.score == 1.0);
    CHECK(result.chosen == 0);
    CHECK(result.model.c == 0.1);
    CHECK(result.model.kernel.gamma == 0.01);
    FeatureSet empty;
    CHECK_THROWS_AS(svm_grid_search(fit, empty), Error);
  }

  TEST_CASE("grid search finds the cell that separates a narrow-kernel problem") {
    // Alternating labels on a line: only a narrow RBF can follow them.
    FeatureSet fit, val;
    for (int i = 0; i < 16; ++i) {
      const Label l = i % 2 ? Label::FmPlus : Label::FmMinus;
      fit.rows.push_back({static_cast<double>(i)});
      fit.labels.push_back(l);
      val.rows.push_back({static_cast<double>(i) + 0.08});
      val.labels.push_back(l);
    }
    const auto result = svm_grid_search(fit, val);
    const auto best = std::max_element(result.candidates.begin(), result.candidates.end(),
                                       [](const auto& a, const auto& b) { return a.score < b.score; });
    CHECK(result.chosen == static_cast<std::size_t>(best - result.candidates.begin()));
    CHECK(result.candidates[result.chosen].score == 1.0);
    CHECK(result.model.kernel.gamma >= 10.0);
    for (std::size_t i = 0; i < 25; ++i) {
      if (result.candidates[i].params["gamma"].get<double>() <= 0.1) CHECK(result.candidates[i].score < 1.0);
    }
  }

  TEST_CASE("network selection keeps the lowest validation loss") {
    const auto data = smoke_snippets();
    const auto ptrs = pointers(data);
    const auto& spec = find_arch("F1.1");
    const auto fit = labelled_set(spec, std::span(ptrs).first(12));
    const auto val = labelled_set(spec, std::span(ptrs).subspan(12));
    nn::TrainConfig config;
    config.max_epochs = 4;

    const auto result = select_best_network(spec, fit, val, config, 100);
    REQUIRE(result.candidates.size() == 20);
    for (std::size_t r = 0; r < 20; ++r) CHECK(result.candidates[r].id == "seed=" + std::to_string(100 + r));
    double lowest = result.candidates[0].score;
    for (const auto& c : result.candidates) lowest = std::min(lowest, c.score);
    CHECK(result.candidates[result.chosen].score == lowest);
    CHECK(result.model.validation_loss == lowest);
    CHECK(result.model.seed == 100 + result.chosen);

    NetworkSelectionOptions single;
    single.repeats = 1;
    CHECK(select_best_network(spec, fit, val, config, 7, single).chosen == 0);
  }

  TEST_CASE("a planted better run is selected") {
    const auto data = smoke_snippets();
    const auto ptrs = pointers(data);
    const auto& spec = find_arch("F1.1");
    const auto fit = labelled_set(spec, std::span(ptrs).first(12));
    const auto val = labelled_set(spec, std::span(ptrs).subspan(12));
    nn::TrainConfig quick;
    quick.max_epochs = 1;
    nn::TrainConfig thorough;
    thorough.max_epochs = 200;
    const auto good = nn::train(build_architecture(spec), val, val, thorough, 77);
    NetworkSelectionOptions opts;
    opts.repeats = 6;
    opts.post_train = [&](std::size_t run, nn::TrainedNet& t) {
      if (run == 4) t.net = good.net;
    };
    const auto result = select_best_network(spec, fit, val, quick, 1, opts);
    CHECK(result.chosen == 4);
    CHECK(result.candidates[4].score == doctest::Approx(nn::evaluate_loss(good.net, val)).epsilon(1e-15));
  }

  TEST_CASE("decision thresholds") {
    CHECK(class_from_probability(0.5) == Label::FmPlus);
    CHECK(class_from_probability(std::nextafter(0.5, 0.0)) == Label::FmMinus);
    CHECK(class_from_decision(0.0) == Label::FmPlus);
    CHECK(class_from_decision(-1e-300) == Label::FmMinus);

    const auto net = logistic_with({2.0, 0.0, 0.0}, 0.0);
    nn::Tensor x({1, 3});
    x[0] = 1.0;
    const auto p = predict(net, x);
    CHECK(p[0].score == doctest::Approx(0.8808).epsilon(1e-4));
    CHECK(p[0].label == Label::FmPlus);
    CHECK(predict(logistic_with({0, 0, 0}, 0.0), x)[0].label == Label::FmPlus);
  }

  TEST_CASE("prediction rejects mismatched inputs") {
    const auto t = clouds(10, 2.0, 2, 12);
    TrainedClassifier c{"S1.RBF", svm_train(t.rows, t.labels, SvmParams{}), nn::CellActivation::Relu};
    const auto data = smoke_snippets();
    CHECK(predict(c, pointers(data)).size() == data.size());
    TrainedClassifier wide{"S2.RBF", svm_train(t.rows, t.labels, SvmParams{}), nn::CellActivation::Relu};
    CHECK_THROWS_AS(predict(wide, pointers(data)), Error);
    CHECK_THROWS_AS(predict(logistic_with({1, 1}, 0), nn::Tensor({1, 3})), Error);
  }

  TEST_CASE("saved classifiers load back with identical predictions") {
    test::TempDir dir("models");
    const auto data = smoke_snippets();
    const auto ptrs = pointers(data);

    const auto t = clouds(16, 1.0, 4, 24);
    SvmParams p;
    p.kernel = {KernelKind::Polynomial, 0.1, 2};
    TrainedClassifier svm{"S2.P2", svm_train(t.rows, t.labels, p), nn::CellActivation::Relu};
    save_classifier(svm, dir / "s.model");
    const auto svm_back = load_classifier(dir / "s.model");
    CHECK(svm_back.arch == "S2.P2");
    const auto& m0 = std::get<SvmModel>(svm.model);
    const auto& m1 = std::get<SvmModel>(svm_back.model);
    CHECK(m1.support_vectors == m0.support_vectors);
    CHECK(m1.dual_coef == m0.dual_coef);
    CHECK(m1.bias == m0.bias);
    for (const auto& r : t.rows) CHECK(m1.decision(r) == m0.decision(r));

    const auto& spec = find_arch("L1F1.3");
    const auto set = labelled_set(spec, ptrs);
    nn::TrainConfig config;
    config.max_epochs = 1;
    BuildOptions build;
    build.lstm_activation = nn::CellActivation::Tanh;
    TrainedClassifier lstm{"L1F1.3", nn::train(build_architecture(spec, build), set, set, config, 3),
                           nn::CellActivation::Tanh};
    save_classifier(lstm, dir / "l.model");
    const auto lstm_back = load_classifier(dir / "l.model");
    CHECK(lstm_back.lstm_activation == nn::CellActivation::Tanh);
    const auto a = predict(lstm, ptrs);
    const auto b = predict(lstm_back, ptrs);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].score == b[i].score);
  }

  TEST_CASE("every catalogued classifier trains on a 16-snippet set") {
    const auto data = smoke_snippets();
    REQUIRE(data.size() == 16);
    const auto ptrs = pointers(data);
    const auto fit_ptrs = std::span(ptrs).first(12);
    const auto val_ptrs = std::span(ptrs).subspan(12);
    nn::TrainConfig config;
    config.max_epochs = 2;
    NetworkSelectionOptions opts;
    opts.repeats = 1;
    for (const auto& spec : catalog()) {
      CAPTURE(spec.name);
      if (spec.family == Family::Svm) {
        FeatureSet fit, val;
        for (auto* s : fit_ptrs) {
          fit.rows.push_back(model_features(*s, spec.features));
          fit.labels.push_back(s->label);
        }
        for (auto* s : val_ptrs) {
          val.rows.push_back(model_features(*s, spec.features));
          val.labels.push_back(s->label);
        }
        SvmGridOptions grid;
        grid.kind = spec.kernel;
        grid.degree = spec.degree;
        auto result = svm_grid_search(fit, val, grid);
        TrainedClassifier c{spec.name, std::move(result.model), nn::CellActivation::Relu};
        CHECK(predict(c, ptrs).size() == 16);
      } else {
        auto result = select_best_network(spec, labelled_set(spec, fit_ptrs), labelled_set(spec, val_ptrs), config, 1, opts);
        CHECK(std::isfinite(result.model.validation_loss));
        TrainedClassifier c{spec.name, std::move(result.model), nn::CellActivation::Relu};
        for (const auto& p : predict(c, ptrs)) {
          CHECK(p.score > 0.0);
          CHECK(p.score < 1.0);
        }
      }
    }
  }
}
