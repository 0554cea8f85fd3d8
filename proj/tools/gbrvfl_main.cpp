#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gbrvfl/dataset.hpp"
#include "gbrvfl/evalstats.hpp"
#include "gbrvfl/granular.hpp"
#include "gbrvfl/interpret.hpp"
#include "gbrvfl/models.hpp"
#include "gbrvfl/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gbrvfl;

namespace {

constexpr int kSchemaVersion = 1;

// Seed streams used by the CLI on top of the library's 0=weights, 1=biases,
// 2=ball generation: 10=train/test split, 11+i=noise at rate index i,
// 12=cross-validation folds, 20+i=synthetic data (i-th synthesis of the run).
constexpr uint64_t kSplitStream = 10;
constexpr uint64_t kNoiseStream = 11;
constexpr uint64_t kFoldStream = 12;
constexpr uint64_t kSynthStream = 20;

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : "undefined";
}

json opt_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

void write_json_file(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MissingFile, "cannot write file: " + path.string());
  out << j.dump(2) << "\n";
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot open config: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CorruptFile, std::string("config is not valid JSON: ") + e.what());
  }
}

// Applies config-file values to options the user did not set on the command
// line, so precedence is flags > config file > defaults.
struct Binder {
  struct Entry {
    CLI::Option* opt;
    std::string key;
    std::function<void(const json&)> apply;
  };
  std::vector<Entry> entries;

  template <class T>
  void bind(CLI::Option* opt, const std::string& key, T& target) {
    entries.push_back({opt, key, [&target](const json& v) { target = v.get<T>(); }});
  }

  void merge(const json& cfg) {
    for (auto& e : entries)
      if (e.opt->count() == 0 && cfg.contains(e.key)) {
        try {
          e.apply(cfg.at(e.key));
        } catch (const json::exception& err) {
          throw Error(ErrorKind::CorruptFile,
                      "config key '" + e.key + "': " + err.what());
        }
      }
  }
};

struct GlobalArgs {
  uint64_t seed = 0;
  std::string out = "out";
  std::string config;
};

struct DataArgs {
  std::string data;
  bool has_header = false;
  int label_column = -1;
  int synth_samples = 0;
  int synth_features = 4;
  int synth_classes = 2;
  int synth_clusters = 1;
  double synth_separation = 6.0;

  void attach(CLI::App* cmd, Binder& b) {
    b.bind(cmd->add_option("--data", data, "dataset CSV, label in the last column"),
           "data", data);
    b.bind(cmd->add_flag("--header", has_header, "first CSV line is a header"),
           "header", has_header);
    b.bind(cmd->add_option("--label-column", label_column,
                           "label column index, -1 for last"),
           "label_column", label_column);
    b.bind(cmd->add_option("--synth-samples", synth_samples,
                           "generate this many synthetic rows instead of --data"),
           "synth_samples", synth_samples);
    b.bind(cmd->add_option("--synth-features", synth_features, "synthetic feature count"),
           "synth_features", synth_features);
    b.bind(cmd->add_option("--synth-classes", synth_classes, "synthetic class count"),
           "synth_classes", synth_classes);
    b.bind(cmd->add_option("--synth-clusters", synth_clusters,
                           "synthetic clusters per class"),
           "synth_clusters", synth_clusters);
    b.bind(cmd->add_option("--synth-separation", synth_separation,
                           "synthetic cluster separation"),
           "synth_separation", synth_separation);
  }

  Dataset load(uint64_t seed, int synth_index = 0) const {
    if (!data.empty()) return load_csv(data, {has_header, label_column});
    if (synth_samples > 0)
      return synthesize({synth_samples, synth_features, synth_classes, synth_clusters,
                         synth_separation, derive_seed(seed, kSynthStream + synth_index)});
    throw Error(ErrorKind::InvalidArgument, "provide --data or --synth-samples");
  }

  json to_json() const {
    return {{"data", data},
            {"header", has_header},
            {"label_column", label_column},
            {"synth_samples", synth_samples},
            {"synth_features", synth_features},
            {"synth_classes", synth_classes},
            {"synth_clusters", synth_clusters},
            {"synth_separation", synth_separation}};
  }
};

struct SplitArgs {
  double train_fraction = 0.7;
  bool no_stratify = false;

  void attach(CLI::App* cmd, Binder& b) {
    b.bind(cmd->add_option("--train-fraction", train_fraction,
                           "fraction of rows used for training"),
           "train_fraction", train_fraction);
    b.bind(cmd->add_flag("--no-stratify", no_stratify, "disable stratified splitting"),
           "no_stratify", no_stratify);
  }

  SplitSpec to_spec(uint64_t seed) const {
    return {train_fraction, derive_seed(seed, kSplitStream), !no_stratify};
  }

  json to_json() const {
    return {{"train_fraction", train_fraction}, {"no_stratify", no_stratify}};
  }
};

struct SpecArgs {
  std::string variant = "GB-RVFL";
  double reg = 1.0;
  double graph_reg = 0.0;
  int hidden = 23;
  int activation = 2;
  double rho = 1.0;
  int min_balls = 0;
  std::string graph_mode = "intrinsic_only";
  std::string normalize = "zscore";

  void attach(CLI::App* cmd, Binder& b, bool with_variant = true) {
    if (with_variant)
      b.bind(cmd->add_option("--variant", variant,
                             "RVFL | RVFLwoDL | GB-RVFL | GB-RVFLwoDL | GE-GB-RVFL"),
             "variant", variant);
    b.bind(cmd->add_option("--reg", reg, "regularization C"), "reg", reg);
    b.bind(cmd->add_option("--graph-reg", graph_reg, "graph strength alpha (GE variant)"),
           "graph_reg", graph_reg);
    b.bind(cmd->add_option("--hidden", hidden, "hidden node count"), "hidden", hidden);
    b.bind(cmd->add_option("--activation", activation, "activation index 1..10"),
           "activation", activation);
    b.bind(cmd->add_option("--rho", rho, "granular-ball purity threshold"), "rho", rho);
    b.bind(cmd->add_option("--min-balls", min_balls, "minimum ball count, 0 = off"),
           "min_balls", min_balls);
    b.bind(cmd->add_option("--graph-mode", graph_mode,
                           "intrinsic_only | intrinsic_and_penalty"),
           "graph_mode", graph_mode);
    b.bind(cmd->add_option("--normalize", normalize, "none | zscore | minmax"),
           "normalize", normalize);
  }

  ModelSpec to_spec(uint64_t seed) const {
    ModelSpec s;
    s.variant = variant_from_name(variant);
    s.reg = reg;
    s.graph_reg = graph_reg;
    s.hidden_nodes = hidden;
    s.activation = activation_from_index(activation);
    s.rho = rho;
    if (min_balls > 0) s.min_balls = min_balls;
    s.seed = seed;
    s.graph_mode = graph_mode_from_name(graph_mode);
    s.norm = norm_method_from_name(normalize);
    return s;
  }

  json to_json() const {
    return {{"variant", variant},   {"reg", reg},
            {"graph_reg", graph_reg}, {"hidden", hidden},
            {"activation", activation}, {"rho", rho},
            {"min_balls", min_balls}, {"graph_mode", graph_mode},
            {"normalize", normalize}};
  }
};

json resolved_header(const GlobalArgs& g, const std::string& command) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"seed", g.seed},
          {"out", g.out}};
}

double plain_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size())
    throw Error(ErrorKind::LengthMismatch, "prediction and truth lengths differ");
  int hits = 0;
  for (size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i];
  return pred.empty() ? 0.0 : static_cast<double>(hits) / pred.size();
}

json metric_block(const std::vector<int>& pred, const std::vector<int>& truth,
                  int positive_class) {
  MetricSet m = metrics(pred, truth, positive_class);
  return {{"accuracy", plain_accuracy(pred, truth)},
          {"sensitivity", opt_json(m.sensitivity)},
          {"specificity", opt_json(m.specificity)},
          {"precision", opt_json(m.precision)}};
}

void metric_csv_cells(std::ostream& out, const std::vector<int>& pred,
                      const std::vector<int>& truth, int positive_class) {
  MetricSet m = metrics(pred, truth, positive_class);
  out << fmt(plain_accuracy(pred, truth)) << "," << fmt_opt(m.sensitivity) << ","
      << fmt_opt(m.specificity) << "," << fmt_opt(m.precision);
}

Matrix with_direct_link(const Matrix& a, const Matrix& b) {
  Matrix d(a.rows(), a.cols() + b.cols());
  d.leftCols(a.cols()) = a;
  d.rightCols(b.cols()) = b;
  return d;
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t used = 0;
        double v = std::stod(cell, &used);
        row.push_back(v);
      } catch (const std::exception&) {
        throw Error(ErrorKind::NonNumericFeature,
                    "non-numeric cell at row " + std::to_string(rows.size() + 1));
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorKind::RaggedRows, "rows differ in width");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty())
    throw Error(ErrorKind::CorruptFile, "empty matrix: " + path);
  Matrix m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

void write_balls_csv(const std::vector<GranularBall>& balls, Eigen::Index p,
                     const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MissingFile, "cannot write file: " + path.string());
  out.precision(17);
  for (Eigen::Index j = 0; j < p; ++j) out << "center" << j << ",";
  out << "radius,label,purity,member_count\n";
  for (const auto& b : balls) {
    for (Eigen::Index j = 0; j < p; ++j) out << b.center(j) << ",";
    out << b.radius << "," << b.label << "," << b.purity << "," << b.member_count << "\n";
  }
}

template <class F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

template <class F>
double median_time_ms(int repeats, F&& f) {
  std::vector<double> ms;
  for (int r = 0; r < repeats; ++r) ms.push_back(time_ms(f));
  std::sort(ms.begin(), ms.end());
  return ms[ms.size() / 2];
}

struct CliState {
  GlobalArgs g;
  Binder global_binder;

  void prologue(Binder& cmd_binder) {
    json cfg = load_config(g.config);
    global_binder.merge(cfg);
    cmd_binder.merge(cfg);
    fs::create_directories(g.out);
  }
};

// ---------------------------------------------------------------------------
// train

struct TrainCmd {
  DataArgs data;
  SplitArgs split;
  SpecArgs spec;
  int positive_class = 0;
  Binder binder;

  void attach(CLI::App* cmd) {
    data.attach(cmd, binder);
    split.attach(cmd, binder);
    spec.attach(cmd, binder);
    binder.bind(cmd->add_option("--positive-class", positive_class,
                                "class index treated as positive in the metrics"),
                "positive_class", positive_class);
  }

  void run(CliState& st) {
    st.prologue(binder);
    Dataset full = data.load(st.g.seed);
    auto [tr, te] = train_test_split(full, split.to_spec(st.g.seed));
    ModelSpec ms = spec.to_spec(st.g.seed);
    TrainedModel model = train(ms, tr);

    auto train_pred = predict(model, tr.features);
    auto test_pred = predict(model, te.features);

    fs::path out(st.g.out);
    save_model_file(model, (out / "model.json").string());

    json metrics_doc;
    metrics_doc["schema_version"] = kSchemaVersion;
    metrics_doc["variant"] = variant_name(ms.variant);
    metrics_doc["dataset"] = {{"rows", full.rows()},
                              {"features", full.cols()},
                              {"classes", full.class_count},
                              {"train_rows", tr.rows()},
                              {"test_rows", te.rows()}};
    metrics_doc["positive_class"] = positive_class;
    metrics_doc["train_accuracy"] = plain_accuracy(train_pred.labels, tr.labels);
    metrics_doc["test"] = metric_block(test_pred.labels, te.labels, positive_class);
    metrics_doc["solve_branch"] = solve_branch_name(model.solve_branch);
    metrics_doc["gb"] = model.gb_summary
                            ? json({{"k", model.gb_summary->k},
                                    {"unsplittable", model.gb_summary->unsplittable}})
                            : json(nullptr);
    write_json_file(metrics_doc, out / "metrics.json");

    json cfg = resolved_header(st.g, "train");
    cfg["dataset"] = data.to_json();
    cfg["split"] = split.to_json();
    cfg["spec"] = spec.to_json();
    cfg["positive_class"] = positive_class;
    write_json_file(cfg, out / "resolved_config.json");
  }
};

// ---------------------------------------------------------------------------
// gridsearch

struct GridsearchCmd {
  DataArgs data;
  SplitArgs split;
  SpecArgs spec;
  std::vector<double> regs;
  std::vector<double> graph_regs;
  std::vector<int> hiddens;
  std::vector<int> activations;
  int folds = 5;
  int positive_class = 0;
  Binder binder;

  void attach(CLI::App* cmd) {
    data.attach(cmd, binder);
    split.attach(cmd, binder);
    spec.attach(cmd, binder);
    binder.bind(cmd->add_option("--regs", regs, "grid of C values"), "regs", regs);
    binder.bind(cmd->add_option("--graph-regs", graph_regs, "grid of alpha values"),
                "graph_regs", graph_regs);
    binder.bind(cmd->add_option("--hiddens", hiddens, "grid of hidden node counts"),
                "hiddens", hiddens);
    binder.bind(cmd->add_option("--activations", activations,
                                "grid of activation indices"),
                "activations", activations);
    binder.bind(cmd->add_option("--folds", folds, "cross-validation folds"), "folds",
                folds);
    binder.bind(cmd->add_option("--positive-class", positive_class,
                                "class index treated as positive in the metrics"),
                "positive_class", positive_class);
  }

  void run(CliState& st) {
    st.prologue(binder);
    Dataset full = data.load(st.g.seed);
    auto [tr, te] = train_test_split(full, split.to_spec(st.g.seed));

    std::vector<double> reg_grid = regs.empty() ? std::vector<double>{spec.reg} : regs;
    std::vector<double> alpha_grid =
        graph_regs.empty() ? std::vector<double>{spec.graph_reg} : graph_regs;
    std::vector<int> hidden_grid =
        hiddens.empty() ? std::vector<int>{spec.hidden} : hiddens;
    std::vector<int> act_grid =
        activations.empty() ? std::vector<int>{spec.activation} : activations;

    std::vector<ModelSpec> grid;
    for (double reg : reg_grid)
      for (double alpha : alpha_grid)
        for (int hidden : hidden_grid)
          for (int act : act_grid) {
            SpecArgs point = spec;
            point.reg = reg;
            point.graph_reg = alpha;
            point.hidden = hidden;
            point.activation = act;
            grid.push_back(point.to_spec(st.g.seed));
          }

    CrossValResult cv = cross_validate(grid, tr, folds, derive_seed(st.g.seed, kFoldStream));
    TrainedModel best = train(cv.best, tr);
    auto test_pred = predict(best, te.features);

    fs::path out(st.g.out);
    {
      std::ofstream table(out / "cv_table.csv");
      if (!table) throw Error(ErrorKind::MissingFile, "cannot write cv_table.csv");
      table << "index,variant,reg,graph_reg,hidden_nodes,activation,rho";
      for (int f = 0; f < folds; ++f) table << ",fold" << f;
      table << ",mean\n";
      for (size_t i = 0; i < grid.size(); ++i) {
        table << i << "," << variant_name(grid[i].variant) << "," << fmt(grid[i].reg)
              << "," << fmt(grid[i].graph_reg) << "," << grid[i].hidden_nodes << ","
              << static_cast<int>(grid[i].activation) << "," << fmt(grid[i].rho);
        for (double a : cv.fold_accuracy[i]) table << "," << fmt(a);
        table << "," << fmt(cv.mean_accuracy[i]) << "\n";
      }
    }

    json best_doc;
    best_doc["schema_version"] = kSchemaVersion;
    best_doc["best_index"] = cv.best_index;
    best_doc["spec"] = {{"variant", variant_name(cv.best.variant)},
                        {"reg", cv.best.reg},
                        {"graph_reg", cv.best.graph_reg},
                        {"hidden_nodes", cv.best.hidden_nodes},
                        {"activation", static_cast<int>(cv.best.activation)},
                        {"rho", cv.best.rho},
                        {"graph_mode", graph_mode_name(cv.best.graph_mode)},
                        {"normalize", norm_method_name(cv.best.norm)}};
    best_doc["mean_accuracy"] = cv.mean_accuracy[cv.best_index];
    best_doc["fold_accuracy"] = cv.fold_accuracy[cv.best_index];
    best_doc["test"] = metric_block(test_pred.labels, te.labels, positive_class);
    write_json_file(best_doc, out / "best_spec.json");

    json cfg = resolved_header(st.g, "gridsearch");
    cfg["dataset"] = data.to_json();
    cfg["split"] = split.to_json();
    cfg["spec"] = spec.to_json();
    cfg["regs"] = reg_grid;
    cfg["graph_regs"] = alpha_grid;
    cfg["hiddens"] = hidden_grid;
    cfg["activations"] = act_grid;
    cfg["folds"] = folds;
    cfg["positive_class"] = positive_class;
    write_json_file(cfg, out / "resolved_config.json");
  }
};

// ---------------------------------------------------------------------------
// noise-sweep

struct NoiseSweepCmd {
  DataArgs data;
  SplitArgs split;
  SpecArgs spec;
  std::vector<double> rates{0.0, 0.05, 0.1, 0.2, 0.3, 0.4};
  std::vector<std::string> variants{"RVFL", "RVFLwoDL", "GB-RVFL", "GB-RVFLwoDL",
                                    "GE-GB-RVFL"};
  int positive_class = 0;
  Binder binder;

  void attach(CLI::App* cmd) {
    data.attach(cmd, binder);
    split.attach(cmd, binder);
    spec.attach(cmd, binder, /*with_variant=*/false);
    binder.bind(cmd->add_option("--rates", rates, "label-noise rates"), "rates", rates);
    binder.bind(cmd->add_option("--variants", variants, "model variants to sweep"),
                "variants", variants);
    binder.bind(cmd->add_option("--positive-class", positive_class,
                                "class index treated as positive in the metrics"),
                "positive_class", positive_class);
  }

  void run(CliState& st) {
    st.prologue(binder);
    Dataset full = data.load(st.g.seed);
    auto [tr, te] = train_test_split(full, split.to_spec(st.g.seed));

    fs::path out(st.g.out);
    std::ofstream table(out / "noise_sweep.csv");
    if (!table) throw Error(ErrorKind::MissingFile, "cannot write noise_sweep.csv");
    table << "variant,rate,flips,train_rows,test_rows,accuracy,sensitivity,"
             "specificity,precision\n";

    for (const std::string& vname : variants) {
      SpecArgs point = spec;
      point.variant = vname;
      ModelSpec ms = point.to_spec(st.g.seed);
      for (size_t i = 0; i < rates.size(); ++i) {
        Dataset noisy = inject_label_noise(
            tr, {rates[i], derive_seed(st.g.seed, kNoiseStream + i)});
        int flips = 0;
        for (size_t r = 0; r < noisy.labels.size(); ++r)
          flips += noisy.labels[r] != tr.labels[r];
        TrainedModel model = train(ms, noisy);
        auto pred = predict(model, te.features);
        table << vname << "," << fmt(rates[i]) << "," << flips << "," << tr.rows()
              << "," << te.rows() << ",";
        metric_csv_cells(table, pred.labels, te.labels, positive_class);
        table << "\n";
      }
    }
    table.close();

    json cfg = resolved_header(st.g, "noise-sweep");
    cfg["dataset"] = data.to_json();
    cfg["split"] = split.to_json();
    cfg["spec"] = spec.to_json();
    cfg["rates"] = rates;
    cfg["variants"] = variants;
    cfg["positive_class"] = positive_class;
    write_json_file(cfg, out / "resolved_config.json");
  }
};

// ---------------------------------------------------------------------------
// compare

struct CompareCmd {
  std::string matrix_path;
  std::vector<std::string> model_names;
  std::vector<std::string> dataset_names;
  double alpha = 0.05;
  double q_override = 0.0;
  double f_critical = 0.0;
  Binder binder;

  void attach(CLI::App* cmd) {
    binder.bind(cmd->add_option("--matrix", matrix_path,
                                "accuracy CSV, one model per row, one dataset per column")
                    ->required(),
                "matrix", matrix_path);
    binder.bind(cmd->add_option("--model-names", model_names, "row names"),
                "model_names", model_names);
    binder.bind(cmd->add_option("--dataset-names", dataset_names, "column names"),
                "dataset_names", dataset_names);
    binder.bind(cmd->add_option("--alpha", alpha, "significance level, 0.05 or 0.10"),
                "alpha", alpha);
    binder.bind(cmd->add_option("--q", q_override,
                                "explicit studentized-range q, overrides --alpha"),
                "q", q_override);
    binder.bind(cmd->add_option("--f-critical", f_critical,
                                "F critical value for the null decision, 0 = skip"),
                "f_critical", f_critical);
  }

  void run(CliState& st) {
    st.prologue(binder);
    Matrix acc = read_matrix_csv(matrix_path);
    if (acc.rows() < 3)
      throw Error(ErrorKind::InvalidArgument,
                  "comparison needs at least 3 models (rows)");

    RankTable rt = rank_table(acc, model_names, dataset_names);
    double q = q_override > 0.0 ? q_override
                                : nemenyi_q(alpha, static_cast<int>(acc.rows()));
    FriedmanResult fr =
        f_critical > 0.0 ? friedman(rt, f_critical) : friedman(rt);
    NemenyiResult nm = nemenyi(rt, q);

    json report;
    report["schema_version"] = kSchemaVersion;
    report["n_models"] = acc.rows();
    report["n_datasets"] = acc.cols();
    report["models"] = rt.models;
    report["datasets"] = rt.datasets;
    report["average_ranks"] = rt.average_rank;
    json ranks = json::array();
    for (Eigen::Index i = 0; i < rt.ranks.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < rt.ranks.cols(); ++j) row.push_back(rt.ranks(i, j));
      ranks.push_back(std::move(row));
    }
    report["ranks"] = std::move(ranks);
    report["friedman"] = {{"chi2", fr.chi2},
                          {"f_stat", fr.f_stat},
                          {"dof1", fr.dof1},
                          {"dof2", fr.dof2},
                          {"reject_null", fr.reject_null ? json(*fr.reject_null)
                                                         : json(nullptr)}};
    json sig = json::array();
    for (const auto& row : nm.significant) sig.push_back(row);
    report["nemenyi"] = {{"q_alpha", nm.q_alpha},
                         {"alpha", q_override > 0.0 ? json(nullptr) : json(alpha)},
                         {"critical_difference", nm.critical_difference},
                         {"significant", std::move(sig)}};
    fs::path out(st.g.out);
    write_json_file(report, out / "compare_report.json");

    json cfg = resolved_header(st.g, "compare");
    cfg["matrix"] = matrix_path;
    cfg["model_names"] = model_names;
    cfg["dataset_names"] = dataset_names;
    cfg["alpha"] = alpha;
    cfg["q"] = q_override;
    cfg["f_critical"] = f_critical;
    write_json_file(cfg, out / "resolved_config.json");
  }
};

// ---------------------------------------------------------------------------
// scale-bench

struct ScaleBenchCmd {
  std::vector<int> sizes{10000, 50000, 100000};
  std::vector<int> min_balls;
  int features = 8;
  int clusters = 2;
  double separation = 6.0;
  double rho = 0.99;
  double reg = 1.0;
  int hidden = 203;
  int activation = 3;
  int repeats = 3;
  Binder binder;

  void attach(CLI::App* cmd) {
    binder.bind(cmd->add_option("--sizes", sizes, "synthetic sample counts"), "sizes",
                sizes);
    binder.bind(cmd->add_option("--min-balls", min_balls,
                                "ball-count floor per size (one value or one per size)"),
                "min_balls", min_balls);
    binder.bind(cmd->add_option("--features", features, "synthetic feature count"),
                "features", features);
    binder.bind(cmd->add_option("--clusters", clusters, "clusters per class"),
                "clusters", clusters);
    binder.bind(cmd->add_option("--separation", separation, "cluster separation"),
                "separation", separation);
    binder.bind(cmd->add_option("--rho", rho, "purity threshold"), "rho", rho);
    binder.bind(cmd->add_option("--reg", reg, "regularization C"), "reg", reg);
    binder.bind(cmd->add_option("--hidden", hidden, "hidden node count"), "hidden",
                hidden);
    binder.bind(cmd->add_option("--activation", activation, "activation index 1..10"),
                "activation", activation);
    binder.bind(cmd->add_option("--repeats", repeats, "solve timing repeats (median)"),
                "repeats", repeats);
  }

  void run(CliState& st) {
    st.prologue(binder);
    fs::path out(st.g.out);
    std::ofstream table(out / "scale_bench.csv");
    if (!table) throw Error(ErrorKind::MissingFile, "cannot write scale_bench.csv");
    table << "size,k,unsplittable,hidden_nodes,gen_ms,gb_solve_ms,rvfl_solve_ms\n";

    if (min_balls.size() > 1 && min_balls.size() != sizes.size())
      throw Error(ErrorKind::InvalidArgument,
                  "--min-balls needs one value or one per size");

    Activation act = activation_from_index(activation);
    for (size_t i = 0; i < sizes.size(); ++i) {
      Dataset d = synthesize({sizes[i], features, 2, clusters, separation,
                              derive_seed(st.g.seed, kSynthStream + i)});
      auto [norm, stats] = normalize(d, NormMethod::Zscore);

      GenerateOptions opts;
      if (!min_balls.empty())
        opts.min_balls = min_balls[min_balls.size() == 1 ? 0 : i];
      GBSet set;
      double gen_ms = time_ms(
          [&] { set = generate(norm, rho, derive_seed(st.g.seed, 2), opts); });

      RandomLayer layer = make_layer(features, hidden, act, st.g.seed);
      double gb_ms = median_time_ms(repeats, [&] {
        Matrix h = project(layer, set.centers_matrix);
        Matrix design = with_direct_link(set.centers_matrix, h);
        solve_auto({std::move(design), set.labels_onehot, reg});
      });
      Matrix full_targets = one_hot(norm);
      double rvfl_ms = median_time_ms(repeats, [&] {
        Matrix h = project(layer, norm.features);
        Matrix design = with_direct_link(norm.features, h);
        solve_auto({std::move(design), full_targets, reg});
      });

      table << sizes[i] << "," << set.k() << "," << set.unsplittable_count() << ","
            << hidden << "," << fmt(gen_ms) << "," << fmt(gb_ms) << ","
            << fmt(rvfl_ms) << "\n";
      table.flush();
    }

    json cfg = resolved_header(st.g, "scale-bench");
    cfg["sizes"] = sizes;
    cfg["min_balls"] = min_balls;
    cfg["features"] = features;
    cfg["clusters"] = clusters;
    cfg["separation"] = separation;
    cfg["rho"] = rho;
    cfg["reg"] = reg;
    cfg["hidden"] = hidden;
    cfg["activation"] = activation;
    cfg["repeats"] = repeats;
    write_json_file(cfg, out / "resolved_config.json");
  }
};

// ---------------------------------------------------------------------------
// gb-export

struct GbExportCmd {
  DataArgs data;
  double rho = 1.0;
  int min_balls = 0;
  std::string normalize = "none";
  Binder binder;

  void attach(CLI::App* cmd) {
    data.attach(cmd, binder);
    binder.bind(cmd->add_option("--rho", rho, "purity threshold"), "rho", rho);
    binder.bind(cmd->add_option("--min-balls", min_balls, "minimum ball count, 0 = off"),
                "min_balls", min_balls);
    binder.bind(cmd->add_option("--normalize", normalize, "none | zscore | minmax"),
                "normalize", normalize);
  }

  void run(CliState& st) {
    st.prologue(binder);
    Dataset d = data.load(st.g.seed);
    d = gbrvfl::normalize(d, norm_method_from_name(normalize)).first;
    fs::path out(st.g.out);

    int rounds = 0;
    GenerateOptions opts;
    if (min_balls > 0) opts.min_balls = min_balls;
    Eigen::Index p = d.cols();
    opts.observer = [&](int round, const std::vector<GranularBall>& balls) {
      char name[32];
      std::snprintf(name, sizeof(name), "gb_iter_%03d.csv", round);
      write_balls_csv(balls, p, out / name);
      rounds = round;
    };
    GBSet set = generate(d, rho, derive_seed(st.g.seed, 2), opts);
    save_gbset_csv(set, (out / "gbset.csv").string());

    json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["rounds"] = rounds;
    summary["k"] = set.k();
    summary["unsplittable"] = set.unsplittable_count();
    summary["rho"] = rho;
    summary["rows"] = d.rows();
    write_json_file(summary, out / "summary.json");

    json cfg = resolved_header(st.g, "gb-export");
    cfg["dataset"] = data.to_json();
    cfg["rho"] = rho;
    cfg["min_balls"] = min_balls;
    cfg["normalize"] = normalize;
    write_json_file(cfg, out / "resolved_config.json");
  }
};

// ---------------------------------------------------------------------------
// interpret

struct InterpretCmd {
  std::string model_path;
  DataArgs data;
  SplitArgs split;
  Binder binder;

  void attach(CLI::App* cmd) {
    binder.bind(cmd->add_option("--model", model_path, "model file from a train run")
                    ->required(),
                "model", model_path);
    data.attach(cmd, binder);
    split.attach(cmd, binder);
  }

  void run(CliState& st) {
    st.prologue(binder);
    TrainedModel m = load_model_file(model_path);
    if (!variant_uses_balls(m.spec.variant))
      throw Error(ErrorKind::InvalidArgument,
                  "feature interpretability needs a granular-ball variant");

    // Rebuild the training-side matrices exactly as the train run saw them:
    // same split stream, stored normalization stats, stored random layer.
    Dataset full = data.load(m.spec.seed);
    auto [tr, te] = train_test_split(full, split.to_spec(m.spec.seed));
    Dataset norm = normalize_with(tr, m.norm_stats);

    GBSet set = generate(norm, m.spec.rho, derive_seed(m.spec.seed, 2),
                         [&] {
                           GenerateOptions o;
                           o.min_balls = m.spec.min_balls;
                           return o;
                         }());

    const Matrix& centers = set.centers_matrix;
    Matrix ball_hidden = project(m.layer, centers);
    Matrix ball_design = variant_uses_direct_link(m.spec.variant)
                             ? with_direct_link(centers, ball_hidden)
                             : ball_hidden;
    Matrix sample_hidden = project(m.layer, norm.features);
    Matrix sample_design = variant_uses_direct_link(m.spec.variant)
                               ? with_direct_link(norm.features, sample_hidden)
                               : sample_hidden;

    double reg = m.spec.reg;
    FeatureMatrix e1;
    if (m.spec.variant == Variant::GE_GB_RVFL && m.spec.graph_reg > 0.0) {
      std::vector<int> ball_labels;
      for (const auto& b : set.balls) ball_labels.push_back(b.label);
      EmbeddingMatrix u =
          embedding_matrix(ball_design, lda_weights(ball_labels), m.spec.graph_mode);
      e1 = feature_matrix(1, ball_design, reg, m.spec.graph_reg, &u.u);
    } else {
      e1 = feature_matrix(1, ball_design, reg);
    }
    FeatureMatrix e2 = feature_matrix(2, ball_design, reg);
    FeatureMatrix e3 = feature_matrix(3, centers, reg);
    FeatureMatrix e4 = feature_matrix(4, sample_design, reg);
    FeatureMatrix e5 = feature_matrix(5, sample_hidden, reg);
    FeatureMatrix e6 = feature_matrix(6, norm.features, reg);

    Eigen::Index ball_cols =
        std::min({e1.data.cols(), e2.data.cols(), e3.data.cols()});
    Eigen::Index sample_cols =
        std::min({e4.data.cols(), e5.data.cols(), e6.data.cols()});
    auto de1 = pairwise_distances(crop_to(e1, e1.data.rows(), ball_cols));
    auto de2 = pairwise_distances(crop_to(e2, e2.data.rows(), ball_cols));
    auto de3 = pairwise_distances(crop_to(e3, e3.data.rows(), ball_cols));
    auto de4 = pairwise_distances(crop_to(e4, e4.data.rows(), sample_cols));
    auto de5 = pairwise_distances(crop_to(e5, e5.data.rows(), sample_cols));
    auto de6 = pairwise_distances(crop_to(e6, e6.data.rows(), sample_cols));
    InterpretReport rep = dde_scores(de1, de2, de3, de4, de5, de6);

    fs::path out(st.g.out);
    const DistanceMatrix* des[6] = {&de1, &de2, &de3, &de4, &de5, &de6};
    for (int i = 0; i < 6; ++i) {
      std::string stem = "DE_" + std::to_string(i + 1);
      save_matrix_csv(des[i]->data, (out / (stem + ".csv")).string());
      save_matrix_pgm(des[i]->data, (out / (stem + ".pgm")).string());
    }

    json report;
    report["schema_version"] = kSchemaVersion;
    report["variant"] = variant_name(m.spec.variant);
    report["reg"] = reg;
    report["graph_reg"] = m.spec.graph_reg;
    report["k"] = set.k();
    report["train_rows"] = tr.rows();
    report["input_dim"] = m.input_dim;
    report["hidden_nodes"] = m.spec.hidden_nodes;
    report["ball_crop_cols"] = ball_cols;
    report["sample_crop_cols"] = sample_cols;
    report["dde"] = {{"dde1", rep.dde1},
                     {"dde2", rep.dde2},
                     {"dde4", rep.dde4},
                     {"dde5", rep.dde5}};
    write_json_file(report, out / "interpret_report.json");

    json cfg = resolved_header(st.g, "interpret");
    cfg["model"] = model_path;
    cfg["dataset"] = data.to_json();
    cfg["split"] = split.to_json();
    write_json_file(cfg, out / "resolved_config.json");
  }
};

// ---------------------------------------------------------------------------
// synth

struct SynthCmd {
  int samples = 0;
  int features = 4;
  int classes = 2;
  int clusters = 1;
  double separation = 6.0;
  std::string file = "synth.csv";
  Binder binder;

  void attach(CLI::App* cmd) {
    binder.bind(cmd->add_option("--samples", samples, "row count")->required(),
                "samples", samples);
    binder.bind(cmd->add_option("--features", features, "feature count"), "features",
                features);
    binder.bind(cmd->add_option("--classes", classes, "class count"), "classes",
                classes);
    binder.bind(cmd->add_option("--clusters", clusters, "clusters per class"),
                "clusters", clusters);
    binder.bind(cmd->add_option("--separation", separation, "cluster separation"),
                "separation", separation);
    binder.bind(cmd->add_option("--file", file, "output CSV name inside --out"),
                "file", file);
  }

  void run(CliState& st) {
    st.prologue(binder);
    Dataset d = synthesize({samples, features, classes, clusters, separation,
                            derive_seed(st.g.seed, kSynthStream)});
    fs::path out(st.g.out);
    save_csv(d, (out / file).string());

    json cfg = resolved_header(st.g, "synth");
    cfg["samples"] = samples;
    cfg["features"] = features;
    cfg["classes"] = classes;
    cfg["clusters"] = clusters;
    cfg["separation"] = separation;
    cfg["file"] = file;
    write_json_file(cfg, out / "resolved_config.json");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CliState st;
  CLI::App app{"granular-ball random vector functional link toolkit"};
  app.require_subcommand(1);

  st.global_binder.bind(app.add_option("--seed", st.g.seed, "master RNG seed"), "seed",
                        st.g.seed);
  st.global_binder.bind(app.add_option("--out", st.g.out, "output directory"), "out",
                        st.g.out);
  app.add_option("--config", st.g.config, "JSON config applied under explicit flags");

  TrainCmd train_cmd;
  GridsearchCmd grid_cmd;
  NoiseSweepCmd noise_cmd;
  CompareCmd compare_cmd;
  ScaleBenchCmd scale_cmd;
  GbExportCmd export_cmd;
  InterpretCmd interpret_cmd;
  SynthCmd synth_cmd;

  struct Registration {
    const char* name;
    const char* help;
    std::function<void(CLI::App*)> attach;
    std::function<void()> run;
  };
  Registration regs[] = {
      {"train", "train one model and evaluate it on a held-out split",
       [&](CLI::App* c) { train_cmd.attach(c); }, [&] { train_cmd.run(st); }},
      {"gridsearch", "cross-validated hyperparameter search",
       [&](CLI::App* c) { grid_cmd.attach(c); }, [&] { grid_cmd.run(st); }},
      {"noise-sweep", "accuracy vs. label-noise rate per variant",
       [&](CLI::App* c) { noise_cmd.attach(c); }, [&] { noise_cmd.run(st); }},
      {"compare", "rank, Friedman and Nemenyi statistics over an accuracy matrix",
       [&](CLI::App* c) { compare_cmd.attach(c); }, [&] { compare_cmd.run(st); }},
      {"scale-bench", "timing benchmark across synthetic dataset sizes",
       [&](CLI::App* c) { scale_cmd.attach(c); }, [&] { scale_cmd.run(st); }},
      {"gb-export", "granular-ball generation snapshots per splitting round",
       [&](CLI::App* c) { export_cmd.attach(c); }, [&] { export_cmd.run(st); }},
      {"interpret", "effective-feature distance analysis for a trained model",
       [&](CLI::App* c) { interpret_cmd.attach(c); }, [&] { interpret_cmd.run(st); }},
      {"synth", "write a synthetic dataset CSV",
       [&](CLI::App* c) { synth_cmd.attach(c); }, [&] { synth_cmd.run(st); }},
  };
  for (auto& r : regs) {
    CLI::App* sub = app.add_subcommand(r.name, r.help);
    sub->fallthrough();
    r.attach(sub);
    sub->callback(r.run);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const gbrvfl::Error& e) {
    json err = {{"schema_version", kSchemaVersion},
                {"error", {{"kind", error_kind_name(e.kind())}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err = {{"schema_version", kSchemaVersion},
                {"error", {{"kind", "Internal"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
