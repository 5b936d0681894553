// subgroup-forge: dataset generation, mask training, subgroup estimation,
// algebraic verification, and report/figure export around one JSON config.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "subgroup_forge/subgroup_forge.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
};

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw sforge::ParseError("cannot open config: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw sforge::ParseError("config is not valid JSON: " + std::string(e.what()));
  }
  if (!j.contains("schema_version")) {
    throw sforge::ParseError("config: missing field 'schema_version'");
  }
  if (j.at("schema_version").get<int>() != 1) {
    throw sforge::ParseError("config: unsupported schema_version");
  }
  return j;
}

int resolve_threads(const CommonOpts& opts) {
  if (opts.threads) return std::max(1, *opts.threads);
  if (const char* env = std::getenv("SUBGROUP_FORGE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

sforge::TaskVariant task_from_config(const json& cfg) {
  if (!cfg.contains("task")) throw sforge::ParseError("config: missing field 'task'");
  const json& t = cfg.at("task");
  if (!t.contains("type")) throw sforge::ParseError("config: missing field 'task.type'");
  const std::string type = t.at("type").get<std::string>();
  if (type == "polynomial") return sforge::polynomial_task_from_json(t);
  if (type == "digitsum") return sforge::digitsum_task_from_json(t);
  throw sforge::ParseError("config: unknown task.type '" + type + "'");
}

sforge::TrainConfig train_from_config(const json& cfg, const CommonOpts& opts) {
  sforge::TrainConfig tc;
  if (cfg.contains("train")) {
    const json& t = cfg.at("train");
    if (t.contains("epochs")) tc.epochs = t.at("epochs").get<int>();
    if (t.contains("lr")) tc.lr = t.at("lr").get<double>();
    if (t.contains("batch_size")) tc.batch_size = t.at("batch_size").get<int>();
    if (t.contains("l1_penalty")) tc.l1_penalty = t.at("l1_penalty").get<double>();
    if (t.contains("trials")) tc.trials = t.at("trials").get<int>();
    if (t.contains("seed")) tc.seed = t.at("seed").get<std::uint64_t>();
    if (t.contains("record_every")) tc.record_every = t.at("record_every").get<int>();
    if (t.contains("audit_every")) tc.audit_every = t.at("audit_every").get<int>();
    if (t.contains("loss")) {
      const std::string loss = t.at("loss").get<std::string>();
      if (loss == "mae") {
        tc.loss = sforge::LossKind::Mae;
      } else if (loss == "mse") {
        tc.loss = sforge::LossKind::Mse;
      } else {
        throw sforge::ParseError("config: train.loss must be 'mae' or 'mse'");
      }
    }
  }
  if (opts.seed) tc.seed = *opts.seed;
  if (opts.trials) tc.trials = *opts.trials;
  return tc;
}

sforge::ArchConfig arch_from_config(const json& cfg) {
  sforge::ArchConfig arch;
  if (!cfg.contains("arch")) return arch;
  const json& a = cfg.at("arch");
  if (a.contains("hidden")) arch.hidden = a.at("hidden").get<int>();
  if (a.contains("features")) arch.features = a.at("features").get<int>();
  if (a.contains("sum_product")) arch.sum_product = a.at("sum_product").get<bool>();
  if (a.contains("baseline_hidden")) arch.baseline_hidden = a.at("baseline_hidden").get<int>();
  if (a.contains("conv_channels")) arch.conv_channels = a.at("conv_channels").get<int>();
  if (a.contains("conv_kernel")) arch.conv_kernel = a.at("conv_kernel").get<int>();
  if (a.contains("glyph_hidden")) arch.glyph_hidden = a.at("glyph_hidden").get<int>();
  return arch;
}

void write_json_file(const json& j, const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw sforge::ParseError("cannot open for writing: " + path.string());
  os << j.dump(2) << '\n';
}

void write_manifest(const fs::path& out, const std::string& command,
                    const std::vector<std::string>& artifacts, const json& config_echo) {
  json m{{"schema_version", 1},
         {"command", command},
         {"artifacts", artifacts},
         {"config", config_echo}};
  write_json_file(m, out / "manifest.json");
}

json task_json(const sforge::TaskVariant& task) {
  if (std::holds_alternative<sforge::PolynomialTask>(task)) {
    return sforge::to_json(std::get<sforge::PolynomialTask>(task));
  }
  return sforge::to_json(std::get<sforge::DigitSumTask>(task));
}

std::string task_label(const sforge::TaskVariant& task) {
  if (std::holds_alternative<sforge::PolynomialTask>(task)) {
    return std::get<sforge::PolynomialTask>(task).label();
  }
  return std::get<sforge::DigitSumTask>(task).label();
}

// ---------------------------------------------------------------------------
// gen-data
// ---------------------------------------------------------------------------

int cmd_gen_data(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  sforge::TaskVariant task = task_from_config(cfg);
  std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
  if (opts.seed) seed = *opts.seed;

  const fs::path out(opts.out_dir);
  fs::create_directories(out);

  sforge::SplitDatasets data =
      std::holds_alternative<sforge::PolynomialTask>(task)
          ? sforge::gen_polynomial(std::get<sforge::PolynomialTask>(task),
                                   sforge::derive_seed(seed, 0xda7a))
          : sforge::gen_digitsum(std::get<sforge::DigitSumTask>(task),
                                 sforge::derive_seed(seed, 0xda7a));

  sforge::write_dataset_csv(data.train, (out / "train.csv").string());
  sforge::write_dataset_csv(data.val, (out / "val.csv").string());
  sforge::write_dataset_csv(data.test, (out / "test.csv").string());

  json sidecar{{"schema_version", 1}, {"task", task_json(task)}, {"seed", seed}};
  write_json_file(sidecar, out / "task.json");
  write_manifest(out, "gen-data", {"train.csv", "val.csv", "test.csv", "task.json"}, cfg);
  std::cout << "gen-data: wrote " << data.train.size() << "/" << data.val.size() << "/"
            << data.test.size() << " samples to " << out.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

int cmd_train(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  sforge::ExperimentConfig exp;
  exp.task = task_from_config(cfg);
  exp.train = train_from_config(cfg, opts);
  exp.arch = arch_from_config(cfg);
  exp.threads = resolve_threads(opts);
  exp.run_id = cfg.value("run_id", task_label(exp.task));
  if (!cfg.contains("methods")) throw sforge::ParseError("config: missing field 'methods'");
  exp.methods = cfg.at("methods").get<std::vector<std::string>>();

  const fs::path out(opts.out_dir);
  fs::create_directories(out);
  fs::create_directories(out / "checkpoints");

  if (cfg.contains("dataset_dir")) {
    const fs::path ds(cfg.at("dataset_dir").get<std::string>());
    for (const char* split : {"train.csv", "val.csv", "test.csv"}) {
      if (!fs::exists(ds / split)) {
        throw sforge::ParseError("missing dataset: " + (ds / split).string() +
                                 " (run gen-data first)");
      }
    }
    // the runner draws from the seed stream; external datasets are loaded
    // through the same structure
    sforge::SplitDatasets data;
    data.train = sforge::read_dataset_csv((ds / "train.csv").string());
    data.val = sforge::read_dataset_csv((ds / "val.csv").string());
    data.test = sforge::read_dataset_csv((ds / "test.csv").string());
    exp.external_data = std::move(data);
    exp.use_external_data = true;
  }

  std::vector<std::string> artifacts{"metrics.csv", "aggregate.csv"};
  exp.on_trial_done = [&](const std::string& method, int trial, sforge::Model& model,
                          const sforge::TrialReport& report) {
    const std::string tag = method + "_t" + std::to_string(trial);
    if (const sforge::MaskHead* head = model.mask_head()) {
      sforge::write_tensor_csv(head->mask_snapshot(), (out / ("m_" + tag + ".csv")).string());
      sforge::write_pgm(head->mask_snapshot(), (out / ("m_" + tag + ".pgm")).string());
      if (head->variant == sforge::MaskVariant::ZD) {
        sforge::write_tensor_csv(head->l_snapshot(), (out / ("l_" + tag + ".csv")).string());
      }
    }
    const fs::path ckpt = out / "checkpoints" / tag;
    fs::create_directories(ckpt);
    json manifest{{"schema_version", 1},
                  {"method", method},
                  {"trial", trial},
                  {"seed", report.seed},
                  {"epoch", exp.train.epochs},
                  {"task", task_json(exp.task)}};
    std::vector<std::string> tensor_files;
    auto params = model.parameters();
    for (std::size_t i = 0; i < params.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "p%03zu.bin", i);
      sforge::write_tensor_binary(params[i]->value, (ckpt / name).string());
      tensor_files.emplace_back(name);
    }
    manifest["tensors"] = tensor_files;
    write_json_file(manifest, ckpt / "manifest.json");
  };

  sforge::ExperimentResult result = sforge::run_experiment(exp);

  {
    std::ofstream os(out / "metrics.csv", std::ios::binary);
    sforge::write_metrics_csv(result, os);
    std::ofstream agg(out / "aggregate.csv", std::ios::binary);
    sforge::write_aggregate_csv(result, agg);
  }

  json reports = json::array();
  json estimates = json::object();
  for (const auto& m : result.methods) {
    json trials = json::array();
    for (const auto& r : m.reports) {
      json tr{{"trial", r.trial_index}, {"seed", r.seed},
              {"mae_train", r.mae_train}, {"mae_val", r.mae_val},
              {"mae_test", r.mae_test},   {"failed", r.failed},
              {"wall_seconds", r.wall_seconds}};
      if (r.audited) tr["invariance_audit_max"] = r.invariance_audit_max;
      if (r.has_estimate) tr["estimate"] = sforge::to_json(r.estimate);
      trials.push_back(std::move(tr));
    }
    reports.push_back(json{{"method", m.method}, {"trials", std::move(trials)}});
    bool any = false;
    for (const auto& r : m.reports) any = any || r.has_estimate;
    if (any) {
      estimates[m.method] = {{"accuracy_percent", m.success_rate()}};
    }
  }
  write_json_file(json{{"schema_version", 1}, {"run_id", exp.run_id},
                       {"task", task_json(exp.task)}, {"reports", std::move(reports)}},
                  out / "reports.json");
  if (!estimates.empty()) {
    write_json_file(json{{"schema_version", 1}, {"estimation", estimates}},
                    out / "estimates.json");
    artifacts.push_back("estimates.json");
  }
  artifacts.push_back("reports.json");
  write_manifest(out, "train", artifacts, cfg);

  for (const auto& m : result.methods) {
    const auto [mean, sd] = m.stats("test");
    std::cout << "train: " << exp.run_id << " method=" << m.method
              << " test_mae=" << sforge::format_double(mean) << " +/- "
              << sforge::format_double(sd) << " failed=" << m.n_failed() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

int cmd_estimate(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  if (!cfg.contains("runs")) throw sforge::ParseError("config: missing field 'runs'");
  const std::string method = cfg.value("method", std::string("proposed"));

  const fs::path out(opts.out_dir);
  fs::create_directories(out);

  struct Cell {
    std::string label;
    int n_train = 0;
    double accuracy = 0.0;
    int trials = 0;
  };
  std::vector<Cell> cells;
  json all = json::object();

  for (const json& run : cfg.at("runs")) {
    if (!run.contains("train_dir")) throw sforge::ParseError("config: runs[].train_dir missing");
    const fs::path dir(run.at("train_dir").get<std::string>());
    const std::string label = run.value("label", dir.filename().string());
    const int n_train = run.value("n_train", 0);

    // true indices from the run's task echo
    const fs::path reports_path = dir / "reports.json";
    if (!fs::exists(reports_path)) {
      throw sforge::ParseError("missing train artifact: " + reports_path.string());
    }
    std::ifstream is(reports_path);
    json reports;
    is >> reports;
    const json& task = reports.at("task");
    std::vector<int> truth;
    if (task.contains("cycle_indices")) {
      truth = task.at("cycle_indices").get<std::vector<int>>();
    } else if (task.contains("true_indices")) {
      truth = task.at("true_indices").get<std::vector<int>>();
    } else {
      throw sforge::ParseError("run task carries no index set: " + reports_path.string());
    }

    // recompute estimates from the exported mask snapshots
    std::vector<sforge::IndexEstimate> ests;
    json run_estimates = json::array();
    for (int trial = 0;; ++trial) {
      const fs::path m_path = dir / ("m_" + method + "_t" + std::to_string(trial) + ".csv");
      if (!fs::exists(m_path)) break;
      const sforge::Tensor m = sforge::read_tensor_csv_file(m_path.string());
      sforge::IndexEstimate est = sforge::estimate_indices(m, truth);
      run_estimates.push_back(sforge::to_json(est));
      ests.push_back(std::move(est));
    }
    if (ests.empty()) {
      throw sforge::ParseError("no mask snapshots for method '" + method + "' under " +
                               dir.string());
    }
    const double acc = sforge::estimation_accuracy(ests);
    cells.push_back({label, n_train, acc, static_cast<int>(ests.size())});
    all[label + "_N" + std::to_string(n_train)] = {{"accuracy_percent", acc},
                                                   {"trials", run_estimates}};
  }

  // accuracy table: rows = subgroup label, cols = training-set sizes
  std::vector<int> sizes;
  for (const auto& c : cells)
    if (std::find(sizes.begin(), sizes.end(), c.n_train) == sizes.end())
      sizes.push_back(c.n_train);
  std::sort(sizes.begin(), sizes.end());
  std::vector<std::string> labels;
  for (const auto& c : cells)
    if (std::find(labels.begin(), labels.end(), c.label) == labels.end())
      labels.push_back(c.label);

  {
    std::ofstream os(out / "accuracy.csv", std::ios::binary);
    os << "subgroup";
    for (int s : sizes) os << ",N" << s;
    os << "\r\n";
    for (const auto& label : labels) {
      os << label;
      for (int s : sizes) {
        os << ',';
        for (const auto& c : cells) {
          if (c.label == label && c.n_train == s) os << sforge::format_double(c.accuracy);
        }
      }
      os << "\r\n";
    }
  }
  write_json_file(json{{"schema_version", 1}, {"method", method}, {"estimates", all}},
                  out / "estimates.json");
  write_manifest(out, "estimate", {"accuracy.csv", "estimates.json"}, cfg);
  for (const auto& c : cells) {
    std::cout << "estimate: " << c.label << " N=" << c.n_train << " accuracy=" << c.accuracy
              << "% over " << c.trials << " trials\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

sforge::LinearMap mask_from_config(const json& m) {
  if (!m.contains("type")) throw sforge::ParseError("config: mask.type missing");
  const std::string type = m.at("type").get<std::string>();
  if (type == "ideal_zd_m") {
    return sforge::ideal_zd_m(sforge::build_ideal(m.at("n").get<int>(), m.at("k").get<int>(),
                                                  sforge::MaskVariant::ZD,
                                                  m.at("indices").get<std::vector<int>>()));
  }
  if (type == "ideal_sk_mhat") {
    return sforge::ideal_sk_mhat(sforge::build_ideal(m.at("n").get<int>(), m.at("k").get<int>(),
                                                     sforge::MaskVariant::Sk,
                                                     m.at("indices").get<std::vector<int>>()));
  }
  if (type == "random") {
    sforge::Rng rng(m.value("seed", std::uint64_t{1}));
    sforge::LinearMap map(m.at("rows").get<int>(), m.at("cols").get<int>());
    for (double& v : map.entries) v = rng.uniform01();
    return map;
  }
  if (type == "csv") {
    return sforge::LinearMap::from_tensor(
        sforge::read_tensor_csv_file(m.at("path").get<std::string>()));
  }
  throw sforge::ParseError("config: unknown mask.type '" + type + "'");
}

int cmd_verify(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const fs::path out(opts.out_dir);
  fs::create_directories(out);

  const int probes = cfg.value("probes", 32);
  const double tol = cfg.value("tol", 1e-9);
  bool all_ok = true;
  json report_cases = json::array();

  if (cfg.contains("cases")) {
    for (const json& c : cfg.at("cases")) {
      const std::string name = c.value("name", std::string("case"));
      sforge::SubgroupSpec h = sforge::subgroup_from_json(c.at("H"));
      sforge::SubgroupSpec g = sforge::subgroup_from_json(c.at("G"));
      sforge::LinearMap m = mask_from_config(c.at("mask"));
      sforge::Theorem45Report r = sforge::check_theorem45(h, g, m, probes, tol);

      const bool expect1 = c.value("expect_cond1", true);
      const bool expect2 = c.value("expect_cond2", true);
      const bool ok = r.cond1 == expect1 && r.cond2 == expect2;
      all_ok = all_ok && ok;

      std::cout << name << ": cond1 " << (r.cond1 ? "PASS" : "FAIL") << ", cond2 "
                << (r.cond2 ? "PASS" : "FAIL");
      if (!ok) std::cout << "  [MISMATCH vs expectation]";
      if (r.degenerate_mask) std::cout << "  [warning: all-zero mask]";
      std::cout << "\n";
      json jc{{"name", name},     {"cond1", r.cond1},   {"cond2", r.cond2},
              {"expected1", expect1}, {"expected2", expect2}, {"probes", probes},
              {"tol", tol},       {"ok", ok},
              {"degenerate_mask", r.degenerate_mask}};
      if (r.cond1_witness) jc["cond1_witness"] = r.cond1_witness->mapping();
      if (r.cond2_witness) jc["cond2_witness"] = r.cond2_witness->mapping();
      report_cases.push_back(std::move(jc));
    }
  }

  json inv = json::object();
  if (cfg.value("invariance_suite", true)) {
    sforge::Rng rng(cfg.value("seed", std::uint64_t{9}));
    const int inputs = cfg.value("invariance_inputs", 25);
    auto run_suite = [&](const std::string& name, auto&& f, const sforge::SubgroupSpec& group,
                         int dim) {
      double worst = 0.0;
      for (int i = 0; i < inputs; ++i) {
        std::vector<double> x(dim);
        for (double& v : x) v = rng.uniform01();
        const double base = f(x);
        sforge::for_each_element(group, [&](const sforge::Permutation& p) {
          worst = std::max(worst, std::fabs(f(p.apply(x)) - base));
        });
      }
      const bool ok = worst <= 1e-12;
      all_ok = all_ok && ok;
      std::cout << "invariance " << name << ": " << (ok ? "PASS" : "FAIL")
                << " (max dev " << sforge::format_double(worst) << ")\n";
      inv[name] = {{"max_deviation", worst}, {"ok", ok}};
    };

    const int n = 8;
    std::vector<int> iota(n);
    for (int i = 0; i < n; ++i) iota[i] = i;
    sforge::DeepSetsNet ds(n, rng, 16);
    run_suite("deepsets_s8", [&](const std::vector<double>& x) { return eval_scalar(ds, x); },
              sforge::SubgroupSpec::s_k_on({0, 1, 2, 3, 4}, n), n);
    sforge::CyclicInvariantNet cy(n, false, rng);
    run_suite("cyclic_z8", [&](const std::vector<double>& x) { return eval_scalar(cy, x); },
              sforge::SubgroupSpec::z_k_on(iota, n), n);
    sforge::CyclicInvariantNet di = sforge::make_dihedral_net(n, rng);
    run_suite("dihedral_d16", [&](const std::vector<double>& x) { return eval_scalar(di, x); },
              sforge::SubgroupSpec::d_2k_on(iota, n), n);
  }

  write_json_file(json{{"schema_version", 1}, {"cases", report_cases},
                       {"invariance", inv}, {"all_ok", all_ok}},
                  out / "verify_report.json");
  write_manifest(out, "verify", {"verify_report.json"}, cfg);
  return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  if (!cfg.contains("runs")) throw sforge::ParseError("config: missing field 'runs'");
  const fs::path out(opts.out_dir);
  fs::create_directories(out);

  std::vector<std::string> artifacts{"comparison.csv"};
  std::ofstream table(out / "comparison.csv", std::ios::binary);
  table << "run,method,split,mean,std,n_trials,n_failed\r\n";

  for (const json& run : cfg.at("runs")) {
    if (!run.contains("train_dir")) throw sforge::ParseError("config: runs[].train_dir missing");
    const fs::path dir(run.at("train_dir").get<std::string>());
    const std::string label = run.value("label", dir.filename().string());
    const fs::path agg_path = dir / "aggregate.csv";
    if (!fs::exists(agg_path)) {
      throw sforge::ParseError("missing train artifact: " + agg_path.string());
    }
    std::ifstream agg(agg_path, std::ios::binary);
    std::string line;
    std::getline(agg, line);  // header
    while (std::getline(agg, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      table << label << ',' << line << "\r\n";
    }

    if (cfg.value("heatmaps", true)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("m_", 0) == 0 && entry.path().extension() == ".csv") {
          const sforge::Tensor m = sforge::read_tensor_csv_file(entry.path().string());
          const std::string pgm = label + "_" + name.substr(0, name.size() - 4) + ".pgm";
          sforge::write_pgm(m, (out / pgm).string());
          artifacts.push_back(pgm);
        }
      }
    }
  }
  table.close();
  write_manifest(out, "report", artifacts, cfg);
  std::cout << "report: wrote comparison.csv and " << (artifacts.size() - 1)
            << " heatmaps to " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subgroup discovery workbench: invariant backbones + learnable masks"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&opts](CLI::App* sub, bool needs_out = true) {
    sub->add_option("--config", opts.config_path, "JSON config path")->required();
    auto* out = sub->add_option("--out", opts.out_dir, "output directory");
    if (needs_out) out->required();
    sub->add_option("--seed", opts.seed, "override config seed");
    sub->add_option("--trials", opts.trials, "override trial count");
    sub->add_option("--threads", opts.threads,
                    "worker threads (fallback: SUBGROUP_FORGE_THREADS, default 1)");
  };

  CLI::App* gen = app.add_subcommand("gen-data", "generate dataset CSVs with a JSON sidecar");
  add_common(gen);
  CLI::App* train = app.add_subcommand("train", "run the multi-trial training experiment");
  add_common(train);
  CLI::App* estimate =
      app.add_subcommand("estimate", "column-norm index estimates + accuracy table");
  add_common(estimate);
  CLI::App* verify =
      app.add_subcommand("verify", "exact intertwining checks and invariance suites");
  add_common(verify);
  CLI::App* report = app.add_subcommand("report", "aggregate tables and mask heatmaps");
  add_common(report);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_data(opts);
    if (train->parsed()) return cmd_train(opts);
    if (estimate->parsed()) return cmd_estimate(opts);
    if (verify->parsed()) return cmd_verify(opts);
    if (report->parsed()) return cmd_report(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
