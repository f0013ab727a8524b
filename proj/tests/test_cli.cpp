// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "pmat/cli/app.hpp"
#include "pmat/encoding.hpp"
#include "pmat/verify/selftest.hpp"
#include "support.hpp"

using namespace pmat;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(test::read_file(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

void write_small_synth_spec(const fs::path& p, std::size_t infants, std::size_t per_class) {
  test::write_file(p, nlohmann::json{{"infants", infants}, {"snippets_per_class", per_class}, {"seed", 4}}.dump());
}

std::string csv_snippet(bool corrupt_row_17) {
  std::ostringstream csv;
  for (int r = 0; r < 500; ++r) {
    for (int c = 0; c < 1024; ++c) csv << (c ? "," : "") << (r == 16 && c == 3 && corrupt_row_17 ? "x" : "0");
    csv << "\n";
  }
  return csv.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("synth then stats") {
    test::TempDir dir("cli-synth");
    write_small_synth_spec(dir / "spec.json", 3, 2);
    const auto synth = run({"--out", (dir / "data").string(), "dataset", "synth", "--spec", (dir / "spec.json").string()});
    REQUIRE(synth.status == 0);
    const auto stats = run({"dataset", "stats", "--manifest", (dir / "data/manifest.json").string()});
    CHECK(stats.status == 0);
    CHECK(stats.out.rfind("snippets=12 FM+=6 FM-=6 infants=3\n", 0) == 0);
    const auto scanned = run({"dataset", "stats", "--scan", "--manifest", (dir / "data/manifest.json").string()});
    CHECK(scanned.status == 0);
    CHECK(scanned.out.rfind("snippets=12 FM+=6 FM-=6 infants=3\n", 0) == 0);
  }

  TEST_CASE("synth is deterministic") {
    test::TempDir dir("cli-synth-twice");
    write_small_synth_spec(dir / "spec.json", 2, 2);
    for (const char* sub : {"a", "b"}) {
      REQUIRE(run({"--out", (dir / sub).string(), "dataset", "synth", "--spec", (dir / "spec.json").string()}).status == 0);
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(dir / "a/snippets")) {
      CHECK(test::read_file(entry.path()) == test::read_file(dir / "b/snippets" / entry.path().filename()));
      ++compared;
    }
    CHECK(compared == 8);
    auto manifest_a = nlohmann::json::parse(test::read_file(dir / "a/manifest.json"));
    auto manifest_b = nlohmann::json::parse(test::read_file(dir / "b/manifest.json"));
    CHECK(manifest_a == manifest_b);
  }

  TEST_CASE("import names the malformed row") {
    test::TempDir dir("cli-import");
    test::write_file(dir / "bad.csv", csv_snippet(true));
    const auto r = run({"--out", (dir / "o").string(), "dataset", "import", "--csv", (dir / "bad.csv").string(), "--infant",
                        "I1", "--label", "FM+"});
    CHECK(r.status != 0);
    CHECK(r.err.find("row 17") != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

    test::write_file(dir / "good.csv", csv_snippet(false));
    test::write_file(dir / "index.csv", "path,infant_id,session,label,snippet_id\ngood.csv,I1,T5,FM+,g1\n");
    const auto ok = run({"--out", (dir / "o").string(), "dataset", "import", "--index", (dir / "index.csv").string()});
    CHECK(ok.status == 0);
    CHECK(read_snippet_file(dir / "o/snippets/g1.pmat").label == Label::FmPlus);
  }

  TEST_CASE("encode of an all-zero snippet") {
    test::TempDir dir("cli-encode");
    write_snippet_file(test::zero_snippet(), dir / "zero.pmat");
    const auto r = run({"--out", (dir / "o").string(), "encode", "--snippet", (dir / "zero.pmat").string(), "--plot-data"});
    REQUIRE(r.status == 0);
    const auto rows = read_csv(dir / "o/encoded/zero.csv");
    REQUIRE(rows.size() == 501);
    CHECK(rows[0] == std::vector<std::string>{"x_t", "y_t", "p_t", "x_b", "y_b", "p_b"});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i] == std::vector<std::string>(6, "0"));
    const auto cop = read_csv(dir / "o/encoded/zero_cop.csv");
    REQUIRE(cop.size() == 501);
    // Empty regions sit at their geometric centers in grid coordinates.
    CHECK(std::stod(cop[1][1]) == 6.5);
    CHECK(std::stod(cop[1][2]) == 16.5);
    CHECK(std::stod(cop[1][4]) == 21.0);
  }

  TEST_CASE("re-normalizing encoded output changes nothing") {
    test::TempDir dir("cli-idem");
    for (std::size_t i = 0; i < 6; ++i) {
      write_snippet_file(verify::random_snippet(8, i), dir / ("s" + std::to_string(i) + ".pmat"));
      REQUIRE(run({"--out", (dir / "o").string(), "encode", "--snippet", (dir / ("s" + std::to_string(i) + ".pmat")).string()})
                  .status == 0);
      const auto rows = read_csv(dir / ("o/encoded/s" + std::to_string(i) + ".csv"));
      REQUIRE(rows.size() == 501);
      RawSignals raw;
      for (std::size_t t = 1; t < rows.size(); ++t) {
        for (std::size_t c = 0; c < kChannels; ++c) raw.channels[c].push_back(std::stod(rows[t][c]));
      }
      const auto again = normalize(raw);
      for (std::size_t t = 0; t < 500; ++t) {
        for (std::size_t c = 0; c < kChannels; ++c) CHECK(again(t, c) == raw.channels[c][t]);
      }
    }
  }

  TEST_CASE("features writes 24 named columns") {
    test::TempDir dir("cli-features");
    write_small_synth_spec(dir / "spec.json", 1, 2);
    REQUIRE(run({"--out", (dir / "d").string(), "dataset", "synth", "--spec", (dir / "spec.json").string()}).status == 0);
    REQUIRE(run({"--out", (dir / "f").string(), "features", "--manifest", (dir / "d/manifest.json").string(), "--variant",
                 "full24"})
                .status == 0);
    const auto rows = read_csv(dir / "f/features.csv");
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].size() == 4 + 24);
    CHECK(rows[0][0] == "snippet_id");
    CHECK(rows[0][4] == "mean_x_t");
    CHECK(rows[1].size() == 28);
    CHECK(run({"--out", (dir / "f").string(), "features", "--manifest", (dir / "d/manifest.json").string(), "--variant",
               "full99"})
              .status != 0);
  }

  TEST_CASE("single-infant, single-fold run flags the undefined metric") {
    test::TempDir dir("cli-cv");
    test::write_file(dir / "spec.json", R"({"infants": 1, "snippets_per_class": 6, "seed": 2})");
    REQUIRE(run({"--out", (dir / "d").string(), "dataset", "synth", "--spec", (dir / "spec.json").string()}).status == 0);
    // Keep only the FM+ snippets.
    auto manifest = nlohmann::json::parse(test::read_file(dir / "d/manifest.json"));
    nlohmann::json kept = nlohmann::json::array();
    for (const auto& e : manifest["snippets"]) {
      if (e["label"] == "FM+") kept.push_back(e);
    }
    manifest["snippets"] = kept;
    test::write_file(dir / "d/positive.json", manifest.dump());
    const auto r = run({"--out", (dir / "cv").string(), "crossval", "--manifest", (dir / "d/positive.json").string(),
                        "--arch", "F1.1", "--folds", "1", "--repeats", "1"});
    CHECK(r.status == 0);
    CHECK(r.out.find("undefined metric") != std::string::npos);
    CHECK(fs::exists(dir / "cv/F1.1.report.json"));
    CHECK(fs::exists(dir / "cv/report.txt"));
    CHECK(fs::exists(dir / "cv/report.csv"));
    CHECK(fs::exists(dir / "cv/comparison.json"));
    CHECK_FALSE(fs::exists(dir / "cv/INCOMPLETE.txt"));

    const auto failed = run({"--out", (dir / "cv2").string(), "crossval", "--manifest",
                             (dir / "d/positive.json").string(), "--arch", "S1.RBF", "--folds", "1"});
    CHECK(failed.status != 0);
    CHECK(fs::exists(dir / "cv2/INCOMPLETE.txt"));
  }

  TEST_CASE("unknown architecture and missing manifest fail cleanly") {
    test::TempDir dir("cli-bad");
    CHECK(run({"--out", dir.path().string(), "crossval", "--manifest", (dir / "none.json").string(), "--arch", "F1.1"})
              .status != 0);
    CHECK(run({"--out", dir.path().string(), "train", "--arch", "X1"}).status != 0);
    CHECK(run({"nonsense"}).status != 0);
  }

  TEST_CASE("selftest passes, is repeatable, and catches a gradient fault") {
    const auto first = run({"selftest"});
    CHECK(first.status == 0);
    CHECK(first.out.find("selftest: PASS") != std::string::npos);
    for (const char* group : {"encoding: PASS", "gradients: PASS", "metrics: PASS", "svm: PASS"}) {
      CHECK(first.out.find(group) != std::string::npos);
    }
    CHECK(run({"selftest"}).out == first.out);

    const auto faulty = run({"selftest", "--inject-gradient-fault"});
    CHECK(faulty.status != 0);
    CHECK(faulty.out.find("gradients: FAIL") != std::string::npos);
    for (const char* group : {"encoding: PASS", "metrics: PASS", "svm: PASS"}) {
      CHECK(faulty.out.find(group) != std::string::npos);
    }
  }
}
