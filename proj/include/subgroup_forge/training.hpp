#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "subgroup_forge/discovery.hpp"
#include "subgroup_forge/models.hpp"

namespace sforge {

inline double mae(const std::vector<double>& pred, const std::vector<double>& target) {
  if (pred.size() != target.size()) throw DimensionError("mae: length mismatch");
  if (pred.empty()) throw DimensionError("mae: empty vectors");
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) s += std::fabs(pred[i] - target[i]);
  return s / static_cast<double>(pred.size());
}

inline double mae(const Tensor& pred, const Tensor& target) {
  if (!pred.same_shape(target)) throw DimensionError("mae: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < pred.numel(); ++i) s += std::fabs(pred[i] - target[i]);
  return s / static_cast<double>(pred.numel());
}

enum class LossKind { Mae, Mse };

struct TrainConfig {
  int epochs = 2500;
  double lr = 1e-3;
  int batch_size = 0;  // 0 = full batch
  LossKind loss = LossKind::Mae;
  double l1_penalty = 0.0;
  int trials = 10;
  std::uint64_t seed = 1;
  int record_every = 10;
  int audit_every = 500;  // invariance audit period for frozen-mask models; 0 = off
};

struct TrialReport {
  int trial_index = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<int, double>> train_curve;  // (epoch, train loss)
  double mae_train = 0.0;
  double mae_val = 0.0;
  double mae_test = 0.0;
  double wall_seconds = 0.0;
  bool failed = false;  // loss went non-finite; aggregates skip it
  Tensor final_m;
  Tensor final_l;
  IndexEstimate estimate;  // populated when the model carries a mask head
  bool has_estimate = false;
  double invariance_audit_max = 0.0;
  bool audited = false;
};

namespace detail {

inline NodePtr loss_node(LossKind kind, const NodePtr& pred, const NodePtr& target) {
  NodePtr d = sub(pred, target);
  if (kind == LossKind::Mae) return mean(abs(d));
  return mean(mul(d, d));
}

inline double split_mae(Model& model, const Dataset& ds) {
  NodePtr pred = model.forward(constant(ds.features));
  return mae(pred->value, ds.targets);
}

inline Dataset take_rows(const Dataset& ds, const std::vector<int>& rows) {
  Dataset out;
  const std::size_t d = ds.features.cols();
  out.features = Tensor({rows.size(), d});
  out.targets = Tensor({rows.size(), 1});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) out.features.at(i, j) = ds.features.at(rows[i], j);
    out.targets.at(i, 0) = ds.targets.at(rows[i], 0);
  }
  return out;
}

}  // namespace detail

// Optional per-audit hook: returns max |f(g.x) - f(x)| over the audit set.
using InvarianceAudit = std::function<double(Model&)>;

// Deterministic per (model init, data, config): Adam over loss +
// regularization, full-batch or minibatch, with NaN divergence marking the
// trial failed instead of crashing.
inline TrialReport train(Model& model, const SplitDatasets& data, const TrainConfig& cfg,
                         std::uint64_t trial_seed, int trial_index = 0,
                         const InvarianceAudit& audit = nullptr,
                         const std::vector<int>* true_indices = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialReport report;
  report.trial_index = trial_index;
  report.seed = trial_seed;

  std::vector<NodePtr> params = model.parameters();
  AdamState adam;
  adam.lr = cfg.lr;
  adam.init(params);
  Rng batch_rng(derive_seed(trial_seed, 0xba7c));

  NodePtr full_x = constant(data.train.features);
  NodePtr full_y = constant(data.train.targets);
  const int train_n = data.train.size();

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double epoch_loss = 0.0;
    if (cfg.batch_size <= 0 || cfg.batch_size >= train_n) {
      NodePtr loss = detail::loss_node(cfg.loss, model.forward(full_x), full_y);
      NodePtr reg = model.regularization();
      if (reg) loss = add(loss, reg);
      epoch_loss = loss->value[0];
      if (!std::isfinite(epoch_loss)) {
        report.failed = true;
        break;
      }
      zero_grad(params);
      backward(loss);
      adam_step(params, adam);
    } else {
      std::vector<int> order(train_n);
      for (int i = 0; i < train_n; ++i) order[i] = i;
      batch_rng.shuffle(order);
      double acc = 0.0;
      int batches = 0;
      for (int start = 0; start < train_n; start += cfg.batch_size) {
        const int end = std::min(train_n, start + cfg.batch_size);
        std::vector<int> rows(order.begin() + start, order.begin() + end);
        Dataset batch = detail::take_rows(data.train, rows);
        NodePtr loss = detail::loss_node(cfg.loss, model.forward(constant(batch.features)),
                                         constant(batch.targets));
        NodePtr reg = model.regularization();
        if (reg) loss = add(loss, reg);
        acc += loss->value[0];
        ++batches;
        if (!std::isfinite(loss->value[0])) {
          report.failed = true;
          break;
        }
        zero_grad(params);
        backward(loss);
        adam_step(params, adam);
      }
      if (report.failed) break;
      epoch_loss = acc / std::max(1, batches);
    }

    if (cfg.record_every > 0 &&
        (epoch % cfg.record_every == 0 || epoch == cfg.epochs - 1)) {
      report.train_curve.emplace_back(epoch, epoch_loss);
    }
    if (audit && cfg.audit_every > 0 && epoch % cfg.audit_every == 0) {
      report.invariance_audit_max = std::max(report.invariance_audit_max, audit(model));
      report.audited = true;
    }
  }

  if (audit && cfg.audit_every > 0) {
    report.invariance_audit_max = std::max(report.invariance_audit_max, audit(model));
    report.audited = true;
  }

  report.mae_train = detail::split_mae(model, data.train);
  report.mae_val = detail::split_mae(model, data.val);
  report.mae_test = detail::split_mae(model, data.test);

  if (const MaskHead* head = model.mask_head()) {
    report.final_m = head->mask_snapshot();
    report.final_l = head->l_snapshot();
    if (true_indices && report.final_m.all_finite()) {
      report.estimate = estimate_indices(report.final_m, *true_indices);
      if (head->variant == MaskVariant::Sk) {
        // complement norms for inspection: columns of I - M
        const Tensor& m = report.final_m;
        std::vector<double> comp(m.cols(), 0.0);
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j)
            comp[j] += std::fabs((i == j ? 1.0 : 0.0) - m.at(i, j));
        report.estimate.complement_column_l1 = std::move(comp);
      }
      report.has_estimate = true;
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// ---------------------------------------------------------------------------
// experiment runner
// ---------------------------------------------------------------------------

using TaskVariant = std::variant<PolynomialTask, DigitSumTask>;

struct ExperimentConfig {
  std::string run_id;
  TaskVariant task;
  std::vector<std::string> methods;
  TrainConfig train;
  ArchConfig arch;
  int threads = 1;
  // pre-generated datasets (e.g. from gen-data files) instead of drawing
  bool use_external_data = false;
  SplitDatasets external_data;
  // called as each trial finishes; paths written must be per-trial unique
  std::function<void(const std::string& method, int trial, Model&, const TrialReport&)>
      on_trial_done;
};

struct MethodResult {
  std::string method;
  std::vector<TrialReport> reports;  // indexed by trial

  int n_failed() const {
    int f = 0;
    for (const auto& r : reports) f += r.failed ? 1 : 0;
    return f;
  }

  // mean/std over non-failed trials; split in {train, val, test}
  std::pair<double, double> stats(const std::string& split) const {
    std::vector<double> vals;
    for (const auto& r : reports) {
      if (r.failed) continue;
      vals.push_back(split == "train" ? r.mae_train : split == "val" ? r.mae_val : r.mae_test);
    }
    if (vals.empty()) return {std::nan(""), std::nan("")};
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var = vals.size() > 1 ? var / static_cast<double>(vals.size() - 1) : 0.0;
    return {mean, std::sqrt(var)};
  }

  double median_test_mae() const {
    std::vector<double> vals;
    for (const auto& r : reports)
      if (!r.failed) vals.push_back(r.mae_test);
    if (vals.empty()) return std::nan("");
    std::sort(vals.begin(), vals.end());
    const std::size_t mid = vals.size() / 2;
    return vals.size() % 2 ? vals[mid] : 0.5 * (vals[mid - 1] + vals[mid]);
  }

  double success_rate() const {
    int with = 0, ok = 0;
    for (const auto& r : reports) {
      if (!r.has_estimate) continue;
      ++with;
      ok += r.estimate.success ? 1 : 0;
    }
    return with == 0 ? 0.0 : 100.0 * ok / with;
  }
};

struct ExperimentResult {
  std::string run_id;
  std::vector<MethodResult> methods;

  const MethodResult& method(const std::string& name) const {
    for (const auto& m : methods)
      if (m.method == name) return m;
    throw ParseError("no such method in result: " + name);
  }
};

namespace detail {

inline ModelPtr build_model(const ExperimentConfig& cfg, const std::string& method,
                            Rng& rng) {
  if (std::holds_alternative<PolynomialTask>(cfg.task)) {
    return make_polynomial_model(method, std::get<PolynomialTask>(cfg.task), cfg.arch, rng,
                                 cfg.train.l1_penalty);
  }
  return make_digitsum_model(method, std::get<DigitSumTask>(cfg.task), cfg.arch, rng,
                             cfg.train.l1_penalty);
}

inline const std::vector<int> task_true_indices(const TaskVariant& task) {
  if (std::holds_alternative<PolynomialTask>(task)) {
    return std::get<PolynomialTask>(task).cycle();
  }
  return std::get<DigitSumTask>(task).indices();
}

inline SubgroupSpec task_subgroup(const TaskVariant& task) {
  if (std::holds_alternative<PolynomialTask>(task)) {
    return std::get<PolynomialTask>(task).subgroup();
  }
  return std::get<DigitSumTask>(task).subgroup();
}

// max |f(g.x) - f(x)| over the task subgroup, a few fixed probe inputs
inline double poly_invariance_audit(Model& model, const PolynomialTask& task,
                                    std::uint64_t seed, int n_probes = 4) {
  Rng rng(seed);
  const auto elems = enumerate(task.subgroup());
  double worst = 0.0;
  for (int p = 0; p < n_probes; ++p) {
    std::vector<double> x(task.n);
    for (double& v : x) v = rng.uniform01();
    const double base = model.eval1(x);
    for (const auto& g : elems) {
      worst = std::max(worst, std::fabs(model.eval1(g.apply(x)) - base));
    }
  }
  return worst;
}

}  // namespace detail

// Datasets are drawn once per experiment; the trials vary model
// initialization. Trials run in parallel worker threads, but every trial's
// randomness comes from its own (seed, method, trial) stream, so results are
// independent of the thread count.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const SplitDatasets data =
      cfg.use_external_data
          ? cfg.external_data
          : std::holds_alternative<PolynomialTask>(cfg.task)
                ? gen_polynomial(std::get<PolynomialTask>(cfg.task),
                                 derive_seed(cfg.train.seed, 0xda7a))
                : gen_digitsum(std::get<DigitSumTask>(cfg.task),
                               derive_seed(cfg.train.seed, 0xda7a));

  const std::vector<int> true_idx = detail::task_true_indices(cfg.task);

  ExperimentResult result;
  result.run_id = cfg.run_id;
  result.methods.resize(cfg.methods.size());
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    result.methods[mi].method = cfg.methods[mi];
    result.methods[mi].reports.resize(cfg.train.trials);
  }

  struct Job {
    std::size_t method_index;
    int trial;
  };
  std::vector<Job> jobs;
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
    for (int t = 0; t < cfg.train.trials; ++t) jobs.push_back({mi, t});

  std::mutex next_mutex;
  std::size_t next = 0;
  auto worker = [&]() {
    for (;;) {
      std::size_t j;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= jobs.size()) return;
        j = next++;
      }
      const Job job = jobs[j];
      const std::string& method = cfg.methods[job.method_index];
      const std::uint64_t trial_seed =
          derive_seed(cfg.train.seed, job.method_index + 1, static_cast<std::uint64_t>(job.trial));
      Rng rng(trial_seed);
      ModelPtr model = detail::build_model(cfg, method, rng);

      InvarianceAudit audit;
      if (method == "known" && std::holds_alternative<PolynomialTask>(cfg.task)) {
        const PolynomialTask task = std::get<PolynomialTask>(cfg.task);
        const std::uint64_t audit_seed = derive_seed(cfg.train.seed, 0xa0d1);
        audit = [task, audit_seed](Model& m) {
          return detail::poly_invariance_audit(m, task, audit_seed);
        };
      }

      TrialReport report =
          train(*model, data, cfg.train, trial_seed, job.trial, audit, &true_idx);
      if (cfg.on_trial_done) cfg.on_trial_done(method, job.trial, *model, report);
      result.methods[job.method_index].reports[job.trial] = std::move(report);
    }
  };

  const int n_threads = std::max(1, cfg.threads);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return result;
}

// ---------------------------------------------------------------------------
// refit on the estimated subgroup
// ---------------------------------------------------------------------------

struct RefitResult {
  bool skipped = false;
  std::string note;
  TrialReport report;
};

// Freeze an ideal ZD mask on the estimated indices and retrain the composed
// model. Estimates whose size does not divide n are skipped with a note.
inline RefitResult refit_with_estimate(const IndexEstimate& estimate,
                                       const PolynomialTask& task, const TrainConfig& cfg,
                                       const ArchConfig& arch = {},
                                       std::uint64_t seed_salt = 0) {
  RefitResult out;
  const int kprime = static_cast<int>(estimate.estimated_indices.size());
  if (kprime == 0) {
    out.skipped = true;
    out.note = "empty estimate";
    return out;
  }
  if (task.n % kprime != 0) {
    out.skipped = true;
    out.note = "estimated index count " + std::to_string(kprime) + " does not divide n=" +
               std::to_string(task.n);
    return out;
  }
  const std::uint64_t trial_seed = derive_seed(cfg.seed, 0x4ef1, seed_salt);
  Rng rng(trial_seed);
  MaskHead head = MaskHead::from_ideal(
      build_ideal(task.n, kprime, MaskVariant::ZD, estimate.estimated_indices));
  CyclicPassThroughNet phi(task.n, false, rng, arch.sum_product, arch.hidden, arch.features);
  detail::ZdMaskedModel model(std::move(head), std::move(phi));
  const SplitDatasets data = gen_polynomial(task, derive_seed(cfg.seed, 0xda7a));
  const std::vector<int> truth = task.cycle();
  out.report = train(model, data, cfg, trial_seed, 0, nullptr, &truth);
  return out;
}

// TrialReport-level overload of the discovery accuracy aggregate.
inline double estimation_accuracy(const std::vector<TrialReport>& reports) {
  std::vector<IndexEstimate> ests;
  for (const auto& r : reports)
    if (r.has_estimate) ests.push_back(r.estimate);
  return estimation_accuracy(ests);
}

// ---------------------------------------------------------------------------
// CSV emission (RFC 4180, CRLF)
// ---------------------------------------------------------------------------

// schema: run_id, method, seed, split, epoch, mae
inline void write_metrics_csv(const ExperimentResult& result, std::ostream& os) {
  os << "run_id,method,seed,split,epoch,mae\r\n";
  for (const auto& m : result.methods) {
    for (const auto& r : m.reports) {
      for (const auto& [epoch, loss] : r.train_curve) {
        os << result.run_id << ',' << m.method << ',' << r.seed << ",train," << epoch << ','
           << format_double(loss) << "\r\n";
      }
      os << result.run_id << ',' << m.method << ',' << r.seed << ",train_final,-1,"
         << format_double(r.mae_train) << "\r\n";
      os << result.run_id << ',' << m.method << ',' << r.seed << ",val,-1,"
         << format_double(r.mae_val) << "\r\n";
      os << result.run_id << ',' << m.method << ',' << r.seed << ",test,-1,"
         << format_double(r.mae_test) << "\r\n";
    }
  }
}

// schema: method, split, mean, std, n_trials, n_failed
inline void write_aggregate_csv(const ExperimentResult& result, std::ostream& os) {
  os << "method,split,mean,std,n_trials,n_failed\r\n";
  for (const auto& m : result.methods) {
    for (const std::string split : {"train", "val", "test"}) {
      const auto [mean, sd] = m.stats(split);
      os << m.method << ',' << split << ',' << format_double(mean) << ','
         << format_double(sd) << ',' << m.reports.size() << ',' << m.n_failed() << "\r\n";
    }
  }
}

}  // namespace sforge
