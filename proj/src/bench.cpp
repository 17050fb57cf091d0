#include "mte/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "mte/cd.hpp"
#include "mte/rng.hpp"

namespace mte::bench {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) { return format_double(v, 6); }

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : "na";
}

}  // namespace

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (count <= 0) return;
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int k = 0; k < threads; ++k)
    pool.emplace_back([&, k] {
      for (int i = k; i < count; i += threads) body(i);
    });
  for (std::thread& th : pool) th.join();
}

std::vector<MethodSpec> parse_methods(const std::string& list) {
  std::vector<MethodSpec> out;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    size_t a = name.find_first_not_of(" \t");
    size_t b = name.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    name = name.substr(a, b - a + 1);
    MethodSpec m;
    m.name = name;
    if (name == "mte") m.loss = LossKind::Mte;
    else if (name == "huber") m.loss = LossKind::Huber;
    else if (name == "lad") m.loss = LossKind::Lad;
    else if (name == "lasso") m.loss = LossKind::Ols;
    else if (name == "ols") { m.loss = LossKind::Ols; m.penalized = false; }
    else throw std::invalid_argument("unknown method '" + name + "'");
    for (const MethodSpec& seen : out)
      if (seen.name == m.name)
        throw std::invalid_argument("method '" + name + "' listed twice");
    out.push_back(std::move(m));
  }
  if (out.empty()) throw std::invalid_argument("no methods given");
  return out;
}

FitConfig make_config(const MethodSpec& method, const Protocol& proto,
                      std::uint64_t seed) {
  FitConfig c;
  c.loss = method.loss;
  c.t_sel = proto.t_sel;
  c.lambda_sel = proto.lambda_sel;
  if (method.penalized) {
    c.penalty = proto.penalty;
  } else {
    c.penalty = PenaltyKind::None;
    c.lambda_sel.mode = LambdaSelection::Mode::Fixed;
    c.lambda_sel.fixed_value = 0.0;
  }
  c.p_order = proto.p_order;
  c.intercept = proto.intercept;
  c.refresh_sigma = proto.refresh_sigma;
  c.multistart = proto.multistart;
  c.seed = seed;
  return c;
}

// ---- simulate ----------------------------------------------------------

namespace {

struct RepCell {
  bool ok = false;
  double me = 0.0;
  SelectionScore sel;
  double seconds = 0.0;
};

}  // namespace

ExperimentReport run_experiment(const sim::SimDesign& design,
                                const std::vector<MethodSpec>& methods,
                                const Protocol& proto, int threads) {
  if (methods.empty()) throw std::invalid_argument("run_experiment: no methods");
  const int reps = design.reps;
  const int m = static_cast<int>(methods.size());
  std::vector<RepCell> cells(static_cast<size_t>(reps) * m);

  parallel_for(reps, threads, [&](int rep) {
    Dataset data = sim::gen_dataset(design, rep);
    for (int k = 0; k < m; ++k) {
      RepCell& cell = cells[static_cast<size_t>(rep) * m + k];
      auto t0 = std::chrono::steady_clock::now();
      try {
        FitConfig c = make_config(methods[k], proto,
                                  derive_seed(design.seed, rep, 1000 + k));
        FitResult res = fit(data, c);
        cell.me = model_error(res.beta, *data.beta0, data.X);
        cell.sel = selection_score(res.beta, *data.beta0);
        cell.ok = true;
      } catch (const std::exception&) {
        cell.ok = false;
      }
      cell.seconds = seconds_since(t0);
    }
  });

  ExperimentReport report;
  report.design = design;
  for (int k = 0; k < m; ++k) {
    MethodSummary row;
    row.method = methods[k].name;
    row.reps = reps;
    std::vector<double> mes, fnrs, fprs, tps, fps;
    for (int rep = 0; rep < reps; ++rep) {
      const RepCell& cell = cells[static_cast<size_t>(rep) * m + k];
      row.wall_seconds += cell.seconds;
      if (!cell.ok) {
        ++row.failures;
        continue;
      }
      mes.push_back(cell.me);
      tps.push_back(cell.sel.tp);
      fps.push_back(cell.sel.fp);
      if (cell.sel.fnr) fnrs.push_back(*cell.sel.fnr);
      if (cell.sel.fpr) fprs.push_back(*cell.sel.fpr);
    }
    if (!mes.empty()) {
      row.me = summarize(mes);
      row.tp = summarize(tps).mean;
      row.fp = summarize(fps).mean;
      if (!fnrs.empty()) row.fnr = summarize(fnrs).mean;
      if (!fprs.empty()) row.fpr = summarize(fprs).mean;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

StringTable ExperimentReport::to_table() const {
  StringTable t;
  t.columns = {"method", "fnr", "fpr", "tp", "fp",
               "me_mean", "me_median", "me_mad", "wall_time"};
  for (const MethodSummary& row : rows) {
    std::vector<std::string> cells{row.method, fmt_opt(row.fnr), fmt_opt(row.fpr),
                                   fmt_opt(row.tp), fmt_opt(row.fp)};
    if (row.me) {
      cells.push_back(fmt(row.me->mean));
      cells.push_back(fmt(row.me->median));
      cells.push_back(fmt(row.me->mad));
    } else {
      cells.insert(cells.end(), {"na", "na", "na"});
    }
    cells.push_back(fmt(row.wall_seconds));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

KvPairs ExperimentReport::metadata() const {
  KvPairs kv;
  kv.emplace_back("covariate_model", sim::to_string(design.cov_model));
  kv.emplace_back("error_model", sim::to_string(design.err_model));
  kv.emplace_back("n", std::to_string(design.n));
  kv.emplace_back("d", std::to_string(design.d));
  kv.emplace_back("reps", std::to_string(design.reps));
  kv.emplace_back("seed", std::to_string(design.seed));
  kv.emplace_back("version", kVersion);
  for (const MethodSummary& row : rows)
    kv.emplace_back("failures_" + row.method, std::to_string(row.failures));
  return kv;
}

// ---- real data ---------------------------------------------------------

Frame prepare_frame(const Table& raw, const std::string& response,
                    const std::vector<std::string>& log_cols, bool drop_missing) {
  const Eigen::Index resp = raw.col(response);
  Matrix values = raw.values;

  for (const std::string& name : log_cols) {
    Eigen::Index j = raw.col(name);
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      double v = values(i, j);
      if (std::isnan(v)) continue;
      if (!(v > 0.0))
        throw DataError("log transform of '" + name + "': value " +
                        format_double(v, 6) + " at data row " + std::to_string(i + 1) +
                        " is not positive");
      values(i, j) = std::log(v);
    }
  }

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    bool missing = values.row(i).hasNaN();
    if (!missing) {
      keep.push_back(i);
    } else if (!drop_missing) {
      throw DataError("missing value at data row " + std::to_string(i + 1) +
                          " (line " + std::to_string(i + 2) +
                          "); pass --drop-missing to skip such rows",
                      i + 2);
    }
  }
  if (keep.size() < 3) throw DataError("fewer than 3 complete rows");

  Frame f;
  f.response = response;
  f.dropped_rows = values.rows() - static_cast<Eigen::Index>(keep.size());
  for (size_t j = 0; j < raw.columns.size(); ++j)
    if (static_cast<Eigen::Index>(j) != resp) f.predictors.push_back(raw.columns[j]);

  const Eigen::Index n = static_cast<Eigen::Index>(keep.size());
  const Eigen::Index d = static_cast<Eigen::Index>(f.predictors.size());
  if (d < 1) throw DataError("no predictor columns");
  f.x_raw.resize(n, d);
  f.y_raw.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index src = keep[i];
    f.y_raw[i] = values(src, resp);
    Eigen::Index jj = 0;
    for (Eigen::Index j = 0; j < values.cols(); ++j)
      if (j != resp) f.x_raw(i, jj++) = values(src, j);
  }

  for (Eigen::Index j = 0; j < d; ++j) {
    double lo = f.x_raw.col(j).minCoeff(), hi = f.x_raw.col(j).maxCoeff();
    if (!(hi > lo))
      throw DataError("predictor column '" + f.predictors[static_cast<size_t>(j)] +
                      "' is constant; drop it before fitting");
  }
  f.std_data.X = standardize(f.x_raw, &f.x_std);
  f.y_mean = f.y_raw.mean();
  double var = (f.y_raw.array() - f.y_mean).square().sum() / static_cast<double>(n - 1);
  f.y_scale = std::sqrt(var);
  if (!(f.y_scale > 0.0))
    throw DegenerateScaleError("response column is constant; no scale to estimate");
  f.std_data.y = ((f.y_raw.array() - f.y_mean) / f.y_scale).matrix();
  f.std_data.names = f.predictors;
  return f;
}

RealFit fit_frame(const Frame& frame, FitConfig config) {
  config.intercept = true;
  RealFit out;
  out.std_fit = fit(frame.std_data, config);
  out.beta_raw = out.std_fit.beta;
  double b0 = out.std_fit.intercept;
  // undo the x standardization, then the y one
  destandardize(&out.beta_raw, &b0, frame.x_std);
  out.beta_raw *= frame.y_scale;
  out.intercept_raw = frame.y_mean + frame.y_scale * b0;
  return out;
}

BootstrapReport run_bootstrap(const Frame& frame, const FitConfig& config, int B,
                              std::uint64_t seed, bool freeze_tuning, int threads) {
  if (B < 1) throw std::invalid_argument("bootstrap: B must be >= 1");
  BootstrapReport report;
  report.b_requested = B;
  report.full = fit_frame(frame, config);

  FitConfig boot_cfg = config;
  boot_cfg.intercept = true;
  if (freeze_tuning) {
    boot_cfg.t_sel.grid = false;
    boot_cfg.t_sel.fixed_t = report.full.std_fit.t_used;
    if (boot_cfg.penalty != PenaltyKind::None) {
      boot_cfg.penalty = PenaltyKind::Lasso;
      boot_cfg.lambda_sel.mode = LambdaSelection::Mode::Fixed;
      boot_cfg.lambda_sel.fixed_values = report.full.std_fit.lambda_used;
    }
  }

  const Eigen::Index n = frame.std_data.n();
  const Eigen::Index d = frame.std_data.d();
  Matrix coefs(B, d + 1);  // intercept first
  std::vector<char> ok(B, 0);
  parallel_for(B, threads, [&](int b) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b), 2));
    Dataset sample;
    sample.X.resize(n, d);
    sample.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index src = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(n));
      sample.X.row(i) = frame.std_data.X.row(src);
      sample.y[i] = frame.std_data.y[src];
    }
    try {
      FitConfig c = boot_cfg;
      c.seed = derive_seed(seed, static_cast<std::uint64_t>(b), 3);
      FitResult res = fit(sample, c);
      coefs(b, 0) = res.intercept;
      coefs.row(b).tail(d) = res.beta.transpose();
      ok[b] = 1;
    } catch (const std::exception&) {
      ok[b] = 0;
    }
  });

  int good = 0;
  for (int b = 0; b < B; ++b) good += ok[b];
  report.failures = B - good;
  report.reliable = report.failures <= B / 5;
  if (good == 0) throw TuningError("bootstrap: every resample fit failed");

  auto col_stats = [&](Eigen::Index j, double* sd, double* freq) {
    double mean = 0.0;
    int nz = 0;
    for (int b = 0; b < B; ++b)
      if (ok[b]) {
        mean += coefs(b, j);
        nz += coefs(b, j) != 0.0;
      }
    mean /= good;
    double ss = 0.0;
    for (int b = 0; b < B; ++b)
      if (ok[b]) ss += (coefs(b, j) - mean) * (coefs(b, j) - mean);
    *sd = good > 1 ? std::sqrt(ss / (good - 1)) : 0.0;
    *freq = static_cast<double>(nz) / good;
  };

  BootstrapRow head;
  head.variable = "intercept";
  head.estimate = report.full.std_fit.intercept;
  if (good > 1) {
    double sd, freq;
    col_stats(0, &sd, &freq);
    head.se = sd;
  }
  report.rows.push_back(head);
  for (Eigen::Index j = 0; j < d; ++j) {
    BootstrapRow row;
    row.variable = frame.predictors[j];
    row.estimate = report.full.std_fit.beta[j];
    double sd, freq;
    col_stats(j + 1, &sd, &freq);
    if (good > 1) row.se = sd;
    row.frequency = freq;
    report.rows.push_back(row);
  }
  return report;
}

StringTable BootstrapReport::to_table() const {
  StringTable t;
  t.columns = {"variable", "estimate", "se", "selection_frequency"};
  for (const BootstrapRow& row : rows)
    t.rows.push_back({row.variable, fmt(row.estimate), fmt_opt(row.se),
                      fmt_opt(row.frequency)});
  return t;
}

KvPairs BootstrapReport::metadata() const {
  KvPairs kv;
  kv.emplace_back("b_requested", std::to_string(b_requested));
  kv.emplace_back("version", kVersion);
  kv.emplace_back("failures", std::to_string(failures));
  kv.emplace_back("reliable", reliable ? "true" : "false");
  kv.emplace_back("t_used", fmt(full.std_fit.t_used));
  kv.emplace_back("sigma_r", fmt(full.std_fit.sigma_r));
  return kv;
}

SplitReport run_split_eval(const Frame& frame, const std::vector<MethodSpec>& methods,
                           const Protocol& proto, int splits, double train_fraction,
                           std::uint64_t seed, int threads) {
  if (splits < 1) throw std::invalid_argument("split-eval: splits must be >= 1");
  const Eigen::Index n = frame.y_raw.size();
  const Eigen::Index ntr = static_cast<Eigen::Index>(train_fraction * static_cast<double>(n));
  if (!(train_fraction > 0.0 && train_fraction < 1.0) || ntr < 3 || ntr >= n)
    throw std::invalid_argument(
        "split-eval: train fraction must leave at least 3 training and 1 test row");
  const int m = static_cast<int>(methods.size());

  struct Cell {
    bool ok = false;
    double mspe = 0.0;
    double size = 0.0;
  };
  std::vector<Cell> cells(static_cast<size_t>(splits) * m);

  parallel_for(splits, threads, [&](int s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s), 4));
    std::vector<Eigen::Index> perm(n);
    for (Eigen::Index i = 0; i < n; ++i) perm[i] = i;
    for (Eigen::Index i = n - 1; i > 0; --i) {
      Eigen::Index j =
          static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[i], perm[j]);
    }
    Matrix xtr(ntr, frame.x_raw.cols()), xte(n - ntr, frame.x_raw.cols());
    Vector ytr(ntr), yte(n - ntr);
    for (Eigen::Index i = 0; i < ntr; ++i) {
      xtr.row(i) = frame.x_raw.row(perm[i]);
      ytr[i] = frame.y_raw[perm[i]];
    }
    for (Eigen::Index i = ntr; i < n; ++i) {
      xte.row(i - ntr) = frame.x_raw.row(perm[i]);
      yte[i - ntr] = frame.y_raw[perm[i]];
    }

    for (int k = 0; k < m; ++k) {
      Cell& cell = cells[static_cast<size_t>(s) * m + k];
      try {
        Standardization xs;
        Dataset train;
        train.X = standardize(xtr, &xs);
        double ymean = ytr.mean();
        double yscale = std::sqrt((ytr.array() - ymean).square().sum() /
                                  static_cast<double>(ntr - 1));
        if (!(yscale > 0.0)) throw DataError("constant training response");
        train.y = ((ytr.array() - ymean) / yscale).matrix();

        FitConfig c = make_config(methods[k], proto,
                                  derive_seed(seed, s, 100 + k));
        c.intercept = true;
        FitResult res = fit(train, c);

        Matrix xte_std = (xte.rowwise() - xs.mean.transpose());
        for (Eigen::Index j = 0; j < xte_std.cols(); ++j) xte_std.col(j) /= xs.scale[j];
        Vector pred_std = xte_std * res.beta;
        Vector pred = ((pred_std.array() + res.intercept) * yscale + ymean).matrix();
        cell.mspe = (yte - pred).squaredNorm() / static_cast<double>(yte.size());
        cell.size = static_cast<double>(res.active_set.size());
        cell.ok = true;
      } catch (const std::exception&) {
        cell.ok = false;
      }
    }
  });

  SplitReport report;
  report.splits = splits;
  for (int k = 0; k < m; ++k) {
    SplitRow row;
    row.method = methods[k].name;
    std::vector<double> mspes, sizes;
    for (int s = 0; s < splits; ++s) {
      const Cell& cell = cells[static_cast<size_t>(s) * m + k];
      if (!cell.ok) {
        ++row.failures;
        continue;
      }
      mspes.push_back(cell.mspe);
      sizes.push_back(cell.size);
    }
    auto mean_sd = [](const std::vector<double>& v, double* mean, double* sd) {
      *mean = 0.0;
      for (double x : v) *mean += x;
      *mean /= static_cast<double>(v.size());
      double ss = 0.0;
      for (double x : v) ss += (x - *mean) * (x - *mean);
      *sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    };
    if (!mspes.empty()) {
      mean_sd(mspes, &row.mspe_mean, &row.mspe_sd);
      mean_sd(sizes, &row.size_mean, &row.size_sd);
    } else {
      row.mspe_mean = row.mspe_sd = row.size_mean = row.size_sd =
          std::nan("");
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

StringTable SplitReport::to_table() const {
  StringTable t;
  t.columns = {"method", "mspe_mean", "mspe_sd", "size_mean", "size_sd"};
  for (const SplitRow& row : rows)
    t.rows.push_back({row.method, fmt(row.mspe_mean), fmt(row.mspe_sd),
                      fmt(row.size_mean), fmt(row.size_sd)});
  return t;
}

KvPairs SplitReport::metadata() const {
  KvPairs kv;
  kv.emplace_back("splits", std::to_string(splits));
  kv.emplace_back("version", kVersion);
  for (const SplitRow& row : rows)
    kv.emplace_back("failures_" + row.method, std::to_string(row.failures));
  return kv;
}

}  // namespace mte::bench
