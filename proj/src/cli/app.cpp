// SPDX-License-Identifier: Apache-2.0
#include "pmat/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmat/dataset.hpp"
#include "pmat/eval/crossval.hpp"
#include "pmat/eval/report.hpp"
#include "pmat/models/classifier.hpp"
#include "pmat/rng.hpp"
#include "pmat/synth.hpp"
#include "pmat/verify/selftest.hpp"

namespace pmat::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Everything a run needs; built from the config file, then flags.
struct RunConfig {
  fs::path manifest;
  std::vector<std::string> architectures;
  std::uint64_t seed = 1;
  fs::path out = "pmat-out";
  eval::CvConfig cv;
  std::vector<std::string> formats{"json", "text", "csv"};
  eval::TTestMode t_test = eval::TTestMode::Paired;
};

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::optional<std::string> out;
};

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<std::string> expand_architectures(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& a : models::catalog()) out.push_back(a.name);
    } else {
      out.push_back(models::find_arch(n).name);
    }
  }
  return out;
}

RunConfig load_run_config(const Globals& g) {
  RunConfig rc;
  if (!g.config.empty()) {
    const json j = read_json_file(g.config);
    if (!j.is_object()) throw Error(g.config + ": config must be a JSON object");
    if (j.contains("manifest")) rc.manifest = j.at("manifest").get<std::string>();
    if (j.contains("architectures")) {
      const auto& a = j.at("architectures");
      rc.architectures = a.is_string() ? std::vector<std::string>{a.get<std::string>()} : a.get<std::vector<std::string>>();
    }
    if (j.contains("seed")) rc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) rc.out = j.at("out").get<std::string>();
    if (j.contains("formats")) rc.formats = j.at("formats").get<std::vector<std::string>>();
    if (j.contains("t_test")) rc.t_test = eval::parse_t_test_mode(j.at("t_test").get<std::string>());
    rc.cv = eval::cv_config_from_json(j, rc.cv);
  }
  if (g.seed) rc.seed = *g.seed;
  if (g.jobs) rc.cv.jobs = *g.jobs;
  if (g.out) rc.out = *g.out;
  if (rc.cv.jobs == 0) rc.cv.jobs = 1;
  for (const auto& f : rc.formats) {
    if (f != "json" && f != "text" && f != "csv") throw Error("unknown report format '" + f + "'");
  }
  return rc;
}

bool wants(const RunConfig& rc, std::string_view format) {
  return std::find(rc.formats.begin(), rc.formats.end(), format) != rc.formats.end();
}

fs::path require_manifest(const RunConfig& rc) {
  if (rc.manifest.empty()) throw Error("no manifest given (use --manifest or the config file)");
  return rc.manifest;
}

// Input snippets of encode/features: explicit files or a manifest.
struct SnippetSource {
  std::vector<std::string> files;
  std::string manifest;
};

void for_each_snippet(const SnippetSource& src, const std::function<void(PressureSnippet&&, const std::string&)>& fn) {
  if (src.files.empty() && src.manifest.empty()) throw Error("give --snippet files or --manifest");
  for (const auto& f : src.files) {
    auto s = read_snippet_file(f);
    s.snippet_id = fs::path(f).stem().string();
    const std::string name = s.snippet_id;
    fn(std::move(s), name);
  }
  if (!src.manifest.empty()) {
    visit_dataset(src.manifest, [&](PressureSnippet&& s) {
      const std::string name = s.snippet_id;
      fn(std::move(s), name);
    });
  }
}

std::string signals_csv(const MotionSignals& m) {
  std::ostringstream out;
  for (std::size_t c = 0; c < kChannels; ++c) out << (c ? "," : "") << kChannelNames[c];
  out << "\n";
  for (std::size_t t = 0; t < m.frames(); ++t) {
    for (std::size_t c = 0; c < kChannels; ++c) out << (c ? "," : "") << format_exact(m(t, c));
    out << "\n";
  }
  return out.str();
}

// Per-frame centers of pressure in 1-based coordinates of the full grid.
std::string cop_overlay_csv(const PressureSnippet& s) {
  const RawSignals raw = frame_signals(s);
  const double row_offset[2] = {static_cast<double>(kCropFirstRow - 1),
                                 static_cast<double>(kCropFirstRow - 1 + kTopRows)};
  const double col_offset = static_cast<double>(kCropFirstCol - 1);
  std::ostringstream out;
  out << "frame,row_top,col_top,p_top,row_bottom,col_bottom,p_bottom\n";
  for (std::size_t t = 0; t < s.frames.size(); ++t) {
    out << t;
    for (std::size_t r = 0; r < 2; ++r) {
      const std::size_t x = 3 * r, y = 3 * r + 1, p = 3 * r + 2;
      out << ',' << format_exact(raw.channels[x][t] + raw.origin[x] + row_offset[r]) << ','
          << format_exact(raw.channels[y][t] + raw.origin[y] + col_offset) << ',' << format_exact(raw.channels[p][t]);
    }
    out << "\n";
  }
  return out.str();
}

// ---- dataset -------------------------------------------------------------

struct ImportArgs {
  std::string index;
  std::string csv;
  std::string infant;
  std::string session = "T1";
  std::string label;
  std::string snippet_id;
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> f;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) f.push_back(cell);
  return f;
}

int cmd_import(const ImportArgs& a, const RunConfig& rc, std::ostream& out) {
  struct Job {
    fs::path csv;
    ManifestEntry entry;
  };
  std::vector<Job> jobs;
  if (!a.index.empty()) {
    std::ifstream in(a.index);
    if (!in) throw Error("cannot read " + a.index);
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "path,infant_id,session,label,snippet_id") {
      throw Error(a.index + ": header must be path,infant_id,session,label,snippet_id");
    }
    std::size_t row = 1;
    while (std::getline(in, line)) {
      ++row;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto f = split_fields(line);
      if (f.size() != 5) throw Error(a.index + " row " + std::to_string(row) + ": expected 5 fields");
      fs::path p = f[0];
      if (p.is_relative()) p = fs::path(a.index).parent_path() / p;
      ManifestEntry e;
      e.infant_id = f[1];
      e.session = parse_session(f[2]);
      e.label = parse_label(f[3]);
      e.snippet_id = f[4];
      jobs.push_back({p, e});
    }
  } else {
    if (a.csv.empty() || a.infant.empty() || a.label.empty()) {
      throw Error("import needs --index, or --csv with --infant and --label");
    }
    ManifestEntry e;
    e.infant_id = a.infant;
    e.session = parse_session(a.session);
    e.label = parse_label(a.label);
    e.snippet_id = a.snippet_id.empty() ? fs::path(a.csv).stem().string() : a.snippet_id;
    jobs.push_back({a.csv, e});
  }

  std::vector<ManifestEntry> entries;
  for (auto& job : jobs) {
    std::ifstream in(job.csv);
    if (!in) throw Error("cannot read " + job.csv.string());
    PressureSnippet s;
    s.frames = import_csv_frames(in, job.csv.string());
    s.label = job.entry.label;
    s.infant_id = job.entry.infant_id;
    s.session = job.entry.session;
    s.snippet_id = job.entry.snippet_id;
    job.entry.path = rc.out / "snippets" / (job.entry.snippet_id + ".pmat");
    fs::create_directories(rc.out / "snippets");
    write_snippet_file(s, job.entry.path);
    entries.push_back(job.entry);
  }
  write_manifest(rc.out / "manifest.json", entries);
  const auto counts = count_entries(entries);
  out << "imported " << counts.snippets << " snippets into " << (rc.out / "manifest.json").string() << "\n";
  return 0;
}

int cmd_synth(const std::string& spec_path, const Globals& g, const RunConfig& rc, std::ostream& out) {
  SynthDatasetSpec spec;
  if (!spec_path.empty()) spec = synth_dataset_spec_from_json(read_json_file(spec_path));
  if (g.seed) spec.seed = *g.seed;
  const auto snippets = generate_synthetic_dataset(spec);
  fs::create_directories(rc.out / "snippets");
  std::vector<ManifestEntry> entries;
  for (const auto& s : snippets) {
    ManifestEntry e{rc.out / "snippets" / (s.snippet_id + ".pmat"), s.infant_id, s.session, s.label, s.snippet_id};
    write_snippet_file(s, e.path);
    entries.push_back(e);
  }
  write_manifest(rc.out / "manifest.json", entries);
  write_text(rc.out / "synth_spec.json", to_json(spec).dump(2) + "\n");
  out << "wrote " << entries.size() << " snippets to " << (rc.out / "manifest.json").string() << "\n";
  return 0;
}

int cmd_stats(const RunConfig& rc, bool scan, std::ostream& out) {
  const fs::path manifest = require_manifest(rc);
  const DatasetCounts c = scan ? visit_dataset(manifest, [](PressureSnippet&&) {}) : count_entries(read_manifest(manifest));
  out << "snippets=" << c.snippets << " FM+=" << c.fm_plus << " FM-=" << c.fm_minus << " infants=" << c.per_infant.size()
      << "\n";
  for (const auto& [session, n] : c.per_session) out << "session " << to_string(session) << "=" << n << "\n";
  for (const auto& [infant, n] : c.per_infant) out << "infant " << infant << "=" << n << "\n";
  return 0;
}

// ---- encode / features ---------------------------------------------------

int cmd_encode(const SnippetSource& src, bool plot_data, const RunConfig& rc, std::ostream& out) {
  const fs::path dir = rc.out / "encoded";
  fs::create_directories(dir);
  std::size_t n = 0;
  for_each_snippet(src, [&](PressureSnippet&& s, const std::string& name) {
    write_text(dir / (name + ".csv"), signals_csv(encode(s)));
    if (plot_data) write_text(dir / (name + "_cop.csv"), cop_overlay_csv(s));
    ++n;
  });
  out << "encoded " << n << " snippets into " << dir.string() << "\n";
  return 0;
}

int cmd_features(const SnippetSource& src, const std::string& variant_name, const RunConfig& rc, std::ostream& out) {
  FeatureVariant variant;
  if (variant_name == "base12") variant = FeatureVariant::Base12;
  else if (variant_name == "full24") variant = FeatureVariant::Full24;
  else throw Error("unknown feature variant '" + variant_name + "' (base12 or full24)");
  std::ostringstream csv;
  csv << "snippet_id,infant_id,session,label";
  for (const auto& name : feature_names(variant)) csv << ',' << name;
  csv << "\n";
  std::size_t n = 0;
  const bool from_files = !src.files.empty();
  for_each_snippet(src, [&](PressureSnippet&& s, const std::string& name) {
    const auto f = extract_features(encode(s), variant);
    // Bare snippet files carry no infant or session.
    const bool known = !from_files || n >= src.files.size();
    csv << name << ',' << (known ? s.infant_id : "") << ',' << (known ? std::string(to_string(s.session)) : "") << ','
        << to_string(s.label);
    for (double v : f.values) csv << ',' << format_exact(v);
    csv << "\n";
    ++n;
  });
  write_text(rc.out / "features.csv", csv.str());
  out << "wrote " << n << " feature rows to " << (rc.out / "features.csv").string() << "\n";
  return 0;
}

// ---- train ---------------------------------------------------------------

int cmd_train(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.architectures.size() != 1) throw Error("train needs exactly one --arch");
  rc.cv.validate();
  const auto& spec = models::find_arch(rc.architectures.front());
  const auto data = eval::encode_manifest(require_manifest(rc), rc.cv.jobs);
  if (data.empty()) throw Error("manifest holds no snippets");

  std::vector<std::string> infants;
  for (const auto& e : data) infants.push_back(e.infant_id);
  std::sort(infants.begin(), infants.end());
  infants.erase(std::unique(infants.begin(), infants.end()), infants.end());

  std::vector<const models::EncodedSnippet*> fit, val;
  std::vector<std::string> val_infants;
  if (infants.size() >= 2) {
    Rng rng(mix_seed(rc.seed, 0));
    rng.shuffle(std::span<std::string>(infants));
    const auto n_val = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(static_cast<double>(infants.size()) * rc.cv.train.validation_fraction)));
    if (n_val >= infants.size()) throw Error("no infants left for fitting");
    val_infants.assign(infants.begin(), infants.begin() + static_cast<std::ptrdiff_t>(n_val));
    std::sort(val_infants.begin(), val_infants.end());
    for (const auto& e : data) {
      (std::binary_search(val_infants.begin(), val_infants.end(), e.infant_id) ? val : fit).push_back(&e);
    }
  } else {
    const double share = rc.cv.train.validation_fraction;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const bool v = std::floor(static_cast<double>(i + 1) * share) > std::floor(static_cast<double>(i) * share);
      (v ? val : fit).push_back(&data[i]);
    }
  }
  if (fit.empty() || val.empty()) throw Error("fit or validation portion is empty");
  err << spec.name << ": training on " << fit.size() << " snippets, validating on " << val.size() << "\n";

  models::TrainedClassifier classifier;
  classifier.arch = spec.name;
  classifier.lstm_activation = rc.cv.build.lstm_activation;
  std::vector<models::CandidateScore> candidates;
  std::size_t chosen = 0;
  if (spec.family == models::Family::Svm) {
    models::FeatureSet f, v;
    for (const auto* e : fit) {
      f.rows.push_back(models::model_features(*e, spec.features));
      f.labels.push_back(e->label);
    }
    for (const auto* e : val) {
      v.rows.push_back(models::model_features(*e, spec.features));
      v.labels.push_back(e->label);
    }
    models::SvmGridOptions opt;
    opt.kind = spec.kernel;
    opt.degree = spec.degree;
    opt.coef0 = rc.cv.poly_coef0;
    opt.standardize = rc.cv.svm_standardize;
    opt.metric = rc.cv.svm_metric;
    opt.smo.tolerance = rc.cv.svm_tolerance;
    opt.jobs = rc.cv.jobs;
    auto sel = models::svm_grid_search(f, v, opt);
    candidates = sel.candidates;
    chosen = sel.chosen;
    classifier.model = std::move(sel.model);
  } else {
    models::NetworkSelectionOptions opt;
    opt.repeats = rc.cv.repeats;
    opt.jobs = rc.cv.jobs;
    opt.build = rc.cv.build;
    auto sel = models::select_best_network(spec, models::labelled_set(spec, fit), models::labelled_set(spec, val),
                                           rc.cv.train, rc.seed, opt);
    candidates = sel.candidates;
    chosen = sel.chosen;
    classifier.model = std::move(sel.model);
  }

  fs::create_directories(rc.out);
  const fs::path model_path = rc.out / (spec.name + ".model");
  models::save_classifier(classifier, model_path);
  json log{{"architecture", spec.name},
           {"seed", rc.seed},
           {"config", eval::to_json(rc.cv)},
           {"validation_infants", val_infants},
           {"fit_snippets", fit.size()},
           {"validation_snippets", val.size()},
           {"chosen", chosen},
           {"candidates", json::array()}};
  for (const auto& c : candidates) log["candidates"].push_back(models::to_json(c));
  write_text(rc.out / (spec.name + ".selection.json"), log.dump(2) + "\n");
  out << "saved " << model_path.string() << " (candidate " << candidates[chosen].id << ", score "
      << format_fixed(candidates[chosen].score, 6) << ")\n";
  return 0;
}

// ---- crossval / report ---------------------------------------------------

void write_tables(const std::vector<eval::CvReport>& reports, const RunConfig& rc) {
  if (reports.empty()) return;
  if (wants(rc, "text")) write_text(rc.out / "report.txt", eval::render_text(reports, rc.t_test));
  if (wants(rc, "csv")) write_text(rc.out / "report.csv", eval::render_csv(reports));
  write_text(rc.out / "comparison.json", eval::to_json(eval::compare(reports, rc.t_test)).dump(2) + "\n");
}

void flag_undefined(const eval::CvReport& r, std::ostream& out) {
  for (const auto& f : r.folds) {
    if (!f.metrics.tpr) out << "undefined metric: " << r.arch << " fold " << f.fold << " sensitivity (no FM+ test snippets)\n";
    if (!f.metrics.tnr) out << "undefined metric: " << r.arch << " fold " << f.fold << " specificity (no FM- test snippets)\n";
  }
}

int cmd_crossval(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.architectures.empty()) throw Error("crossval needs at least one --arch");
  rc.cv.validate();
  fs::create_directories(rc.out);
  const fs::path marker = rc.out / "INCOMPLETE.txt";
  fs::remove(marker);

  err << "encoding " << require_manifest(rc).string() << "\n";
  const auto data = eval::encode_manifest(rc.manifest, rc.cv.jobs);
  std::vector<eval::CvReport> reports;
  std::string failures;
  eval::CvHooks hooks;
  hooks.log = [&err](const std::string& line) { err << line << "\n"; };
  for (const auto& arch : rc.architectures) {
    try {
      auto report = eval::run_crossval(data, arch, rc.cv, rc.seed, hooks);
      if (wants(rc, "json")) eval::write_report(report, rc.out / (report.arch + ".report.json"));
      flag_undefined(report, out);
      out << report.arch << ": BA " << eval::format_summary(report.balanced_accuracy) << "\n";
      reports.push_back(std::move(report));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      failures += arch + ": " + e.what() + "\n";
    }
  }
  write_tables(reports, rc);
  if (!failures.empty()) {
    write_text(marker, "INCOMPLETE: the following architectures failed; tables cover the rest only\n" + failures);
    return 1;
  }
  return 0;
}

int cmd_report(const std::vector<std::string>& files, const RunConfig& rc, std::ostream& out) {
  if (files.empty()) throw Error("report needs at least one --report file");
  std::vector<eval::CvReport> reports;
  for (const auto& f : files) reports.push_back(eval::read_report(f));
  fs::create_directories(rc.out);
  write_tables(reports, rc);
  out << eval::render_text(reports, rc.t_test);
  return 0;
}

int cmd_selftest(const Globals& g, bool inject_fault, std::ostream& out) {
  verify::SelftestOptions o;
  if (g.seed) o.seed = *g.seed;
  if (inject_fault) o.gradient_fault = 1.01;
  bool ok = true;
  for (const auto& r : verify::run_selftest(o)) {
    out << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
    ok = ok && r.passed;
  }
  out << "selftest: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pressure-mat infant movement classification toolkit", "pmat"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out_dir;
  app.add_option("--config", g.config, "JSON run configuration")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Base random seed");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");

  std::string manifest;
  std::vector<std::string> archs;
  std::optional<std::size_t> repeats, folds;
  std::string t_test;

  auto* dataset = app.add_subcommand("dataset", "Import, synthesize or summarize datasets");
  dataset->require_subcommand(1);
  ImportArgs import_args;
  auto* import_cmd = dataset->add_subcommand("import", "Convert CSV snippets to PMAT files and a manifest");
  import_cmd->add_option("--index", import_args.index, "CSV listing path,infant_id,session,label,snippet_id");
  import_cmd->add_option("--csv", import_args.csv, "Single 500x1024 CSV snippet");
  import_cmd->add_option("--infant", import_args.infant, "Infant id for --csv");
  import_cmd->add_option("--session", import_args.session, "Session for --csv (T1, T5, T6, T7)");
  import_cmd->add_option("--label", import_args.label, "FM+ or FM- for --csv");
  import_cmd->add_option("--snippet-id", import_args.snippet_id, "Snippet id for --csv");
  std::string synth_spec;
  auto* synth_cmd = dataset->add_subcommand("synth", "Generate a synthetic two-regime dataset");
  synth_cmd->add_option("--spec", synth_spec, "Synthetic dataset spec (JSON)");
  bool scan = false;
  auto* stats_cmd = dataset->add_subcommand("stats", "Print snippet counts per label, infant and session");
  stats_cmd->add_option("--manifest", manifest, "Dataset manifest");
  stats_cmd->add_flag("--scan", scan, "Read every snippet file and check its label");

  SnippetSource src;
  bool plot_data = false;
  auto* encode_cmd = app.add_subcommand("encode", "Write per-snippet 500x6 motion signal CSVs");
  encode_cmd->add_option("--snippet", src.files, "PMAT snippet file");
  encode_cmd->add_option("--manifest", src.manifest, "Dataset manifest");
  encode_cmd->add_flag("--plot-data", plot_data, "Also write per-frame center-of-pressure overlays");

  std::string variant = "full24";
  auto* features_cmd = app.add_subcommand("features", "Write statistical feature rows");
  features_cmd->add_option("--snippet", src.files, "PMAT snippet file");
  features_cmd->add_option("--manifest", src.manifest, "Dataset manifest");
  features_cmd->add_option("--variant", variant, "base12 or full24");

  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", manifest, "Dataset manifest");
    cmd->add_option("--arch", archs, "Architecture name, or 'all'");
    cmd->add_option("--repeats", repeats, "Network runs per selection")->check(CLI::PositiveNumber);
  };
  auto* train_cmd = app.add_subcommand("train", "Train one architecture with its selection protocol");
  add_run_options(train_cmd);
  auto* crossval_cmd = app.add_subcommand("crossval", "Grouped k-fold evaluation");
  add_run_options(crossval_cmd);
  crossval_cmd->add_option("--folds", folds, "Number of folds")->check(CLI::PositiveNumber);
  crossval_cmd->add_option("--t-test", t_test, "paired or welch");

  std::vector<std::string> report_files;
  auto* report_cmd = app.add_subcommand("report", "Render tables from saved cross-validation reports");
  report_cmd->add_option("--report", report_files, "Report JSON file")->check(CLI::ExistingFile);
  report_cmd->add_option("--t-test", t_test, "paired or welch");

  bool inject_fault = false;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the embedded verification battery");
  selftest_cmd->add_flag("--inject-gradient-fault", inject_fault, "Perturb analytic gradients (test hook)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (seed_opt->count()) g.seed = seed;
    if (jobs_opt->count()) g.jobs = jobs;
    if (out_opt->count()) g.out = out_dir;
    RunConfig rc = load_run_config(g);
    if (!manifest.empty()) rc.manifest = manifest;
    if (!archs.empty()) rc.architectures = archs;
    rc.architectures = expand_architectures(rc.architectures);
    if (repeats) rc.cv.repeats = *repeats;
    if (folds) rc.cv.folds = *folds;
    if (!t_test.empty()) rc.t_test = eval::parse_t_test_mode(t_test);

    if (*import_cmd) return cmd_import(import_args, rc, out);
    if (*synth_cmd) return cmd_synth(synth_spec, g, rc, out);
    if (*stats_cmd) return cmd_stats(rc, scan, out);
    if (*encode_cmd) return cmd_encode(src, plot_data, rc, out);
    if (*features_cmd) return cmd_features(src, variant, rc, out);
    if (*train_cmd) return cmd_train(rc, out, err);
    if (*crossval_cmd) return cmd_crossval(rc, out, err);
    if (*report_cmd) return cmd_report(report_files, rc, out);
    if (*selftest_cmd) return cmd_selftest(g, inject_fault, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace pmat::cli
