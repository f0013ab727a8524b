// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles/stats_reference.hpp"
#include "pmat/eval/crossval.hpp"
#include "pmat/eval/folds.hpp"
#include "pmat/eval/metrics.hpp"
#include "pmat/eval/report.hpp"
#include "pmat/eval/stats.hpp"
#include "pmat/synth.hpp"
#include "support.hpp"

using namespace pmat;
using namespace pmat::eval;

namespace {

std::vector<std::string> infant_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("infant-" + std::to_string(100 + i));
  return ids;
}

std::vector<models::EncodedSnippet> smoke_data(std::size_t infants, std::size_t per_class, std::uint64_t seed = 2) {
  SynthDatasetSpec spec;
  spec.infants = infants;
  spec.snippets_per_class = per_class;
  spec.seed = seed;
  return models::encode_all(generate_synthetic_dataset(spec));
}

CvConfig quick_config(std::size_t folds) {
  CvConfig c;
  c.folds = folds;
  c.repeats = 2;
  c.train.max_epochs = 3;
  return c;
}

MetricSummary summary_of(std::vector<double> v) {
  std::vector<std::optional<double>> o(v.begin(), v.end());
  return summarize(o);
}

}  // namespace

TEST_SUITE("evaluation") {
  TEST_CASE("45 infants split 9 / 30 / 6 without leakage over 1000 plans") {
    const auto ids = infant_ids(45);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto plan = grouped_kfold(ids, 5, seed);
      REQUIRE(plan.folds.size() == 5);
      std::multiset<std::string> tested;
      for (const auto& f : plan.folds) {
        REQUIRE(f.test.size() == 9);
        REQUIRE(f.fit.size() == 30);
        REQUIRE(f.validation.size() == 6);
        std::set<std::string> roles(f.test.begin(), f.test.end());
        roles.insert(f.fit.begin(), f.fit.end());
        roles.insert(f.validation.begin(), f.validation.end());
        REQUIRE(roles.size() == 45);
        tested.insert(f.test.begin(), f.test.end());
      }
      REQUIRE(tested.size() == 45);
      REQUIRE(std::set<std::string>(tested.begin(), tested.end()).size() == 45);
      CHECK_NOTHROW(check_group_integrity(plan, ids));
    }
  }

  TEST_CASE("fold plans are seeded") {
    const auto ids = infant_ids(45);
    CHECK(to_json(grouped_kfold(ids, 5, 3).folds[2]) == to_json(grouped_kfold(ids, 5, 3).folds[2]));
    CHECK(to_json(grouped_kfold(ids, 5, 3).folds[0]) != to_json(grouped_kfold(ids, 5, 4).folds[0]));
    auto reversed = ids;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(to_json(grouped_kfold(reversed, 5, 3).folds[1]) == to_json(grouped_kfold(ids, 5, 3).folds[1]));
  }

  TEST_CASE("five infants give one test infant per fold") {
    const auto ids = infant_ids(5);
    const auto plan = grouped_kfold(ids, 5, 1);
    for (const auto& f : plan.folds) {
      CHECK(f.test.size() == 1);
      CHECK(f.validation.size() == 1);
      CHECK(f.fit.size() == 3);
    }
  }

  TEST_CASE("fold plan errors") {
    const auto ids = infant_ids(4);
    CHECK_THROWS_AS(grouped_kfold(ids, 5, 1), Error);
    CHECK_THROWS_AS(grouped_kfold(ids, 0, 1), Error);
    CHECK_THROWS_AS(grouped_kfold(std::span(ids).first(2), 2, 1), Error);  // no fit infant left
    auto plan = grouped_kfold(ids, 2, 1);
    plan.folds[0].fit.push_back(plan.folds[0].test.front());
    CHECK_THROWS_AS(check_group_integrity(plan, ids), Error);
  }

  TEST_CASE("single fold puts every infant in every role") {
    const auto ids = infant_ids(3);
    const auto plan = grouped_kfold(ids, 1, 9);
    CHECK(plan.in_sample());
    REQUIRE(plan.folds.size() == 1);
    CHECK(plan.folds[0].test.size() == 3);
    CHECK(plan.folds[0].fit.size() == 3);
    CHECK(plan.folds[0].validation.size() == 3);
    CHECK_NOTHROW(check_group_integrity(plan, ids));
  }

  TEST_CASE("confusion examples") {
    using L = Label;
    const std::vector<L> labels{L::FmPlus, L::FmPlus, L::FmPlus, L::FmMinus, L::FmMinus};
    auto m = confusion(labels, labels);
    CHECK(*m.tpr == 1.0);
    CHECK(*m.tnr == 1.0);
    CHECK(*m.ba == 1.0);

    const std::vector<L> all_pos(5, L::FmPlus);
    m = confusion(all_pos, labels);
    CHECK(m.tp == 3);
    CHECK(m.fp == 2);
    CHECK(*m.tpr == 1.0);
    CHECK(*m.tnr == 0.0);
    CHECK(*m.ba == 0.5);

    const std::vector<L> short_list(4, L::FmPlus);
    CHECK_THROWS_AS(confusion(short_list, labels), Error);
  }

  TEST_CASE("a missing class leaves its rate undefined") {
    const auto m = metrics_from_counts(4, 0, 0, 1);
    CHECK(m.tpr.has_value());
    CHECK_FALSE(m.tnr.has_value());
    CHECK_FALSE(m.ba.has_value());
    const auto back = metrics_from_json(to_json(m));
    CHECK(back == m);
    CHECK(to_json(m)["tnr"].is_null());
  }

  TEST_CASE("published rates average to the published balanced accuracy") {
    CHECK(std::abs(100.0 * (0.8648 + 0.7637) / 2.0 - 81.43) < 0.01);
  }

  TEST_CASE("balanced accuracy identity on random tables") {
    Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
      const auto m = metrics_from_counts(1 + rng.below(400), 1 + rng.below(400), rng.below(400), rng.below(400));
      const double tpr = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
      const double tnr = static_cast<double>(m.tn) / static_cast<double>(m.tn + m.fp);
      CHECK(*m.tpr == tpr);
      CHECK(*m.tnr == tnr);
      CHECK(*m.ba == (tpr + tnr) / 2.0);
    }
  }

  TEST_CASE("confidence interval examples") {
    const std::vector<double> same(4, 0.7);
    auto ci = ci95_mean(same);
    CHECK(ci.low == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(ci.high == doctest::Approx(0.7).epsilon(1e-15));

    ci = ci95_mean(std::vector<double>{1, 2, 3, 4, 5});
    CHECK(ci.mean == 3.0);
    CHECK(std::abs(ci.low - 1.037) < 1e-3);
    CHECK(std::abs(ci.high - 4.963) < 1e-3);

    ci = ci95_mean(std::vector<double>{0, 10});
    CHECK(ci.mean == 5.0);
    CHECK(std::abs((ci.high - ci.mean) - 63.53) < 1e-2);

    CHECK_THROWS_AS(ci95_mean(std::vector<double>{1.0}), Error);
  }

  TEST_CASE("scaling values scales the interval") {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> v(2 + rng.below(8));
      for (auto& x : v) x = rng.uniform();
      const double k = rng.uniform(0.1, 10.0);
      auto scaled = v;
      for (auto& x : scaled) x *= k;
      const auto a = ci95_mean(v);
      const auto b = ci95_mean(scaled);
      CHECK(b.mean == doctest::Approx(k * a.mean).epsilon(1e-12));
      CHECK(b.low == doctest::Approx(k * a.low).epsilon(1e-12));
      CHECK(b.high == doctest::Approx(k * a.high).epsilon(1e-12));
      CHECK((b.high - b.mean) == doctest::Approx(b.mean - b.low).epsilon(1e-9));
    }
  }

  TEST_CASE("t quantiles agree with the reference table") {
    CHECK(std::abs(t_quantile_975(4) - 2.7764) < 1e-4);
    CHECK(std::abs(t_quantile_975(1) - 12.7062) < 1e-4);
    for (const auto& [df, q] : test::t975_table()) {
      CAPTURE(df);
      CHECK(std::abs(t_quantile_975(df) - q) < 1e-6);
      CHECK(std::abs(t_quantile_975_bisect(df) - q) < 1e-6);
    }
  }

  TEST_CASE("incomplete beta against reference values") {
    for (const auto& c : test::incomplete_beta_cases()) {
      CAPTURE(c.a);
      CAPTURE(c.b);
      CAPTURE(c.x);
      CHECK(std::abs(regularized_incomplete_beta(c.a, c.b, c.x) - c.value) < 1e-10);
    }
    CHECK(regularized_incomplete_beta(2, 3, 0) == 0.0);
    CHECK(regularized_incomplete_beta(2, 3, 1) == 1.0);
  }

  TEST_CASE("t-test conventions") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{2, 3, 4};
    CHECK(t_test(a, a, TTestMode::Paired) == 1.0);
    CHECK(t_test(a, b, TTestMode::Paired) == 0.0);
    CHECK_THROWS_AS(t_test(a, std::vector<double>{1, 2}, TTestMode::Paired), Error);
    CHECK_THROWS_AS(t_test(std::vector<double>{1}, b, TTestMode::Welch), Error);
    CHECK(parse_t_test_mode("welch") == TTestMode::Welch);
    CHECK(to_string(TTestMode::Paired) == "paired");
  }

  TEST_CASE("Welch test against reference p-values") {
    REQUIRE(test::welch_cases().size() == 21);
    for (const auto& c : test::welch_cases()) {
      CHECK(std::abs(t_test(c.a, c.b, TTestMode::Welch) - c.p) < 1e-4);
    }
  }

  TEST_CASE("paired test against reference p-values") {
    for (const auto& c : test::paired_cases()) {
      CHECK(std::abs(t_test(c.a, c.b, TTestMode::Paired) - c.p) < 1e-4);
    }
  }

  TEST_CASE("summary formatting") {
    CHECK(format_summary(summary_of({0.8143, 0.8143, 0.8143})) == "81.43 [81.43 81.43]");
    MetricSummary s;
    s.mean = 0.8143;
    s.ci = Interval{0.8143, 0.78, 0.8486};
    CHECK(format_summary(s) == "81.43 [78.00 84.86]");
    CHECK(format_summary(summarize({std::nullopt, std::nullopt})) == "n/a [n/a]");
    const auto one = summarize({0.5, std::nullopt});
    CHECK(*one.mean == 0.5);
    CHECK_FALSE(one.ci.has_value());
  }

  TEST_CASE("report CSV round trip") {
    CvReport r;
    r.arch = "C3F2";
    r.sensitivity = summary_of({0.81, 0.9, 0.87, 0.85, 0.92});
    r.specificity = summarize({0.7, std::nullopt, 0.75, 0.81, 0.66});
    r.balanced_accuracy = summarize({std::nullopt});
    CvReport other = r;
    other.arch = "S1.RBF";
    const std::vector<CvReport> reports{r, other};
    const auto rows = parse_report_csv(render_csv(reports));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].arch == "S1.RBF");  // catalogue order
    CHECK(rows[3].arch == "C3F2");
    CHECK(rows[3].metric == "sensitivity");
    CHECK(*rows[3].mean == *r.sensitivity.mean);
    CHECK(*rows[3].ci_low == r.sensitivity.ci->low);
    CHECK(*rows[3].ci_high == r.sensitivity.ci->high);
    CHECK(*rows[4].mean == *r.specificity.mean);
    CHECK_FALSE(rows[5].mean.has_value());
    CHECK_FALSE(rows[5].ci_low.has_value());
    CHECK_THROWS_AS(parse_report_csv("nonsense\n"), Error);
  }

  TEST_CASE("comparison matrix") {
    CvReport a, b, c;
    a.arch = "F1.1";
    b.arch = "C1F1.1";
    c.arch = "S1.RBF";
    a.balanced_accuracy = summary_of({0.70, 0.72, 0.69, 0.75, 0.71});
    b.balanced_accuracy = summary_of({0.80, 0.78, 0.83, 0.79, 0.81});
    c.balanced_accuracy = summarize({0.7, std::nullopt, std::nullopt, std::nullopt, std::nullopt});
    const std::vector<CvReport> reports{a, b, c};
    const auto m = compare(reports, TTestMode::Paired);
    REQUIRE(m.arch == std::vector<std::string>{"S1.RBF", "F1.1", "C1F1.1"});
    CHECK_FALSE(m.p[1][1].has_value());
    CHECK_FALSE(m.p[0][1].has_value());
    REQUIRE(m.p[1][2].has_value());
    CHECK(*m.p[1][2] == t_test(a.balanced_accuracy.defined(), b.balanced_accuracy.defined(), TTestMode::Paired));
    CHECK(*m.p[1][2] == *m.p[2][1]);
    const auto text = render_text(reports);
    CHECK(text.find("C1F1.1") != std::string::npos);
    CHECK(text.find(format_summary(b.balanced_accuracy)) != std::string::npos);
  }

  TEST_CASE("cross-validation is reproducible and conserves counts") {
    const auto data = smoke_data(6, 3);
    for (const char* arch : {"S1.RBF", "F1.1"}) {
      CAPTURE(arch);
      const auto r1 = run_crossval(data, arch, quick_config(3), 11);
      auto parallel = quick_config(3);
      parallel.jobs = 3;
      const auto r2 = run_crossval(data, arch, parallel, 11);
      CHECK(report_json_text(r1) == report_json_text(r2));
      REQUIRE(r1.folds.size() == 3);
      std::size_t total = 0;
      for (const auto& f : r1.folds) {
        CHECK(f.metrics.total() == f.test_snippets);
        CHECK(f.test_fm_plus + f.test_fm_minus == f.test_snippets);
        CHECK(f.predictions.size() == f.test_snippets);
        CHECK(f.infants.test.size() == 2);
        total += f.test_snippets;
      }
      CHECK(total == data.size());
      const auto ba = r1.balanced_accuracy.defined();
      CHECK(*r1.balanced_accuracy.mean == doctest::Approx(sample_mean(ba)).epsilon(1e-15));

      test::TempDir dir("cv");
      write_report(r1, dir / "r.json");
      CHECK(report_json_text(read_report(dir / "r.json")) == report_json_text(r1));
    }
  }

  TEST_CASE("one infant, one fold") {
    auto data = smoke_data(1, 6);
    const auto r = run_crossval(data, "F1.1", quick_config(1), 5);
    REQUIRE(r.folds.size() == 1);
    CHECK(r.folds[0].test_snippets == 12);
    CHECK(r.folds[0].validation_snippets == 2);
    CHECK(r.folds[0].fit_snippets == 10);
    CHECK(r.balanced_accuracy.mean.has_value());
    CHECK_FALSE(r.balanced_accuracy.ci.has_value());

    std::erase_if(data, [](const auto& s) { return s.label == Label::FmMinus; });
    const auto single_class = run_crossval(data, "F1.1", quick_config(1), 5);
    CHECK_FALSE(single_class.balanced_accuracy.mean.has_value());
    CHECK_FALSE(single_class.specificity.mean.has_value());
    CHECK_THROWS_WITH_AS(run_crossval(data, "S1.RBF", quick_config(1), 5), doctest::Contains("fold 1"), Error);
  }

  TEST_CASE("cross-validation errors name the fold") {
    const auto data = smoke_data(3, 2);
    CHECK_THROWS_AS(run_crossval(data, "Z9", quick_config(3), 1), Error);
    auto bad = quick_config(3);
    bad.folds = 4;
    CHECK_THROWS_AS(run_crossval(data, "F1.1", bad, 1), Error);
  }
}
