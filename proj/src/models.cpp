#include "gbrvfl/models.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "gbrvfl/rng.hpp"

namespace gbrvfl {

using nlohmann::json;

namespace {

constexpr int kFormatMajor = 1;
constexpr int kFormatMinor = 0;

SolveBranch branch_from_name(const std::string& name) {
  if (name == "primal") return SolveBranch::Primal;
  if (name == "dual") return SolveBranch::Dual;
  if (name == "graph") return SolveBranch::Graph;
  throw Error(ErrorKind::CorruptFile, "unknown solve branch: " + name);
}

Matrix with_direct_link(const Matrix& inputs, const Matrix& hidden) {
  Matrix d(inputs.rows(), inputs.cols() + hidden.cols());
  d.leftCols(inputs.cols()) = inputs;
  d.rightCols(hidden.cols()) = hidden;
  return d;
}

json matrix_to_json(const Matrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> flat(m.data(), m.data() + m.size());  // row-major storage
  j["data"] = std::move(flat);
  return j;
}

Matrix matrix_from_json(const json& j) {
  Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw Error(ErrorKind::CorruptFile, "matrix payload size mismatch");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = data[i].get<double>();
  return m;
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::RVFL: return "RVFL";
    case Variant::RVFLwoDL: return "RVFLwoDL";
    case Variant::GB_RVFL: return "GB-RVFL";
    case Variant::GB_RVFLwoDL: return "GB-RVFLwoDL";
    case Variant::GE_GB_RVFL: return "GE-GB-RVFL";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  for (Variant v : {Variant::RVFL, Variant::RVFLwoDL, Variant::GB_RVFL,
                    Variant::GB_RVFLwoDL, Variant::GE_GB_RVFL})
    if (name == variant_name(v)) return v;
  throw Error(ErrorKind::InvalidArgument, "unknown variant: " + name);
}

bool variant_uses_balls(Variant v) {
  return v == Variant::GB_RVFL || v == Variant::GB_RVFLwoDL || v == Variant::GE_GB_RVFL;
}

bool variant_uses_direct_link(Variant v) {
  return v != Variant::RVFLwoDL && v != Variant::GB_RVFLwoDL;
}

TrainedModel train(const ModelSpec& spec, const Dataset& train_data) {
  if (spec.hidden_nodes < 1)
    throw Error(ErrorKind::InvalidArgument, "hidden_nodes must be at least 1");
  if (!(spec.reg > 0.0))
    throw Error(ErrorKind::InvalidArgument, "reg must be positive");
  if (spec.graph_reg < 0.0)
    throw Error(ErrorKind::InvalidArgument, "graph_reg must be non-negative");
  if (train_data.rows() < 2)
    throw Error(ErrorKind::TooFewSamples, "training needs at least 2 samples");
  if (train_data.class_count < 2)
    throw Error(ErrorKind::SingleClass, "training needs at least 2 classes");
  if (train_data.labels.size() != static_cast<size_t>(train_data.rows()))
    throw Error(ErrorKind::LengthMismatch, "labels do not match feature rows");

  TrainedModel m;
  m.spec = spec;
  m.input_dim = static_cast<int>(train_data.cols());
  m.class_count = train_data.class_count;
  m.class_names = train_data.class_names;

  auto [norm_data, stats] = normalize(train_data, spec.norm);
  m.norm_stats = stats;
  m.layer = make_layer(m.input_dim, spec.hidden_nodes, spec.activation, spec.seed);

  Matrix basis;
  Matrix targets;
  std::vector<int> point_labels;
  if (variant_uses_balls(spec.variant)) {
    GenerateOptions opts;
    opts.min_balls = spec.min_balls;
    GBSet set = generate(norm_data, spec.rho, derive_seed(spec.seed, 2), opts);
    basis = set.centers_matrix;
    targets = set.labels_onehot;
    point_labels.reserve(set.k());
    for (const auto& ball : set.balls) point_labels.push_back(ball.label);
    m.gb_summary = GbSummary{set.k(), set.unsplittable_count()};
  } else {
    basis = norm_data.features;
    targets = one_hot(norm_data);
  }

  Matrix hidden = project(m.layer, basis);
  Matrix design = variant_uses_direct_link(spec.variant)
                      ? with_direct_link(basis, hidden)
                      : std::move(hidden);

  if (spec.variant == Variant::GE_GB_RVFL) {
    GraphWeights gw = lda_weights(point_labels);
    EmbeddingMatrix u = embedding_matrix(design, gw, spec.graph_mode);
    m.output_weights = solve_graph({{std::move(design), std::move(targets), spec.reg},
                                    std::move(u.u), spec.graph_reg});
    m.solve_branch = SolveBranch::Graph;
  } else {
    AutoSolution sol = solve_auto({std::move(design), std::move(targets), spec.reg});
    m.output_weights = std::move(sol.weights);
    m.solve_branch = sol.branch;
  }
  return m;
}

Prediction predict(const TrainedModel& m, const Matrix& inputs) {
  if (inputs.cols() != m.input_dim)
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(m.input_dim) + " features, got " +
                    std::to_string(inputs.cols()));

  Dataset wrapper;
  wrapper.features = inputs;
  Matrix x = normalize_with(wrapper, m.norm_stats).features;
  Matrix hidden = project(m.layer, x);
  Matrix design = variant_uses_direct_link(m.spec.variant)
                      ? with_direct_link(x, hidden)
                      : std::move(hidden);
  if (design.cols() != m.output_weights.rows())
    throw Error(ErrorKind::DimensionMismatch, "model weights do not match design width");

  Prediction pred;
  pred.scores = design * m.output_weights;
  pred.labels.resize(pred.scores.rows());
  for (Eigen::Index i = 0; i < pred.scores.rows(); ++i) {
    int best = 0;
    for (Eigen::Index j = 1; j < pred.scores.cols(); ++j)
      if (pred.scores(i, j) > pred.scores(i, best)) best = static_cast<int>(j);
    pred.labels[i] = best;
  }
  return pred;
}

std::string save_model(const TrainedModel& m) {
  json j;
  j["format"] = "gbrvfl-model";
  j["format_version"] = {{"major", kFormatMajor}, {"minor", kFormatMinor}};

  json spec;
  spec["variant"] = variant_name(m.spec.variant);
  spec["reg"] = m.spec.reg;
  spec["graph_reg"] = m.spec.graph_reg;
  spec["hidden_nodes"] = m.spec.hidden_nodes;
  spec["activation"] = static_cast<int>(m.spec.activation);
  spec["rho"] = m.spec.rho;
  spec["min_balls"] = m.spec.min_balls ? json(*m.spec.min_balls) : json(nullptr);
  spec["seed"] = m.spec.seed;
  spec["graph_mode"] = graph_mode_name(m.spec.graph_mode);
  spec["norm"] = norm_method_name(m.spec.norm);
  j["spec"] = std::move(spec);

  j["input_dim"] = m.input_dim;
  j["class_count"] = m.class_count;
  j["class_names"] = m.class_names;

  json norm;
  norm["method"] = norm_method_name(m.norm_stats.method);
  norm["a"] = m.norm_stats.a;
  norm["b"] = m.norm_stats.b;
  norm["degenerate"] = std::vector<int>(m.norm_stats.degenerate.begin(),
                                        m.norm_stats.degenerate.end());
  j["norm_stats"] = std::move(norm);

  json layer;
  layer["activation"] = static_cast<int>(m.layer.activation);
  layer["seed"] = m.layer.seed;
  layer["weights"] = matrix_to_json(m.layer.weights);
  layer["biases"] = std::vector<double>(m.layer.biases.data(),
                                        m.layer.biases.data() + m.layer.biases.size());
  j["layer"] = std::move(layer);

  j["output_weights"] = matrix_to_json(m.output_weights);
  if (m.gb_summary)
    j["gb_summary"] = {{"k", m.gb_summary->k}, {"unsplittable", m.gb_summary->unsplittable}};
  else
    j["gb_summary"] = nullptr;
  j["solve_branch"] = solve_branch_name(m.solve_branch);
  return j.dump(2);
}

TrainedModel load_model(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CorruptFile, std::string("model is not valid JSON: ") + e.what());
  }

  try {
    const auto& version = j.at("format_version");
    int major = version.at("major").get<int>();
    if (major != kFormatMajor)
      throw Error(ErrorKind::VersionMismatch,
                  "model format major version " + std::to_string(major) +
                      " is not supported (expected " + std::to_string(kFormatMajor) + ")");

    TrainedModel m;
    const auto& spec = j.at("spec");
    m.spec.variant = variant_from_name(spec.at("variant").get<std::string>());
    m.spec.reg = spec.at("reg").get<double>();
    m.spec.graph_reg = spec.at("graph_reg").get<double>();
    m.spec.hidden_nodes = spec.at("hidden_nodes").get<int>();
    m.spec.activation = activation_from_index(spec.at("activation").get<int>());
    m.spec.rho = spec.at("rho").get<double>();
    if (!spec.at("min_balls").is_null()) m.spec.min_balls = spec.at("min_balls").get<int>();
    m.spec.seed = spec.at("seed").get<uint64_t>();
    m.spec.graph_mode = graph_mode_from_name(spec.at("graph_mode").get<std::string>());
    m.spec.norm = norm_method_from_name(spec.at("norm").get<std::string>());

    m.input_dim = j.at("input_dim").get<int>();
    m.class_count = j.at("class_count").get<int>();
    m.class_names = j.at("class_names").get<std::vector<std::string>>();

    const auto& norm = j.at("norm_stats");
    m.norm_stats.method = norm_method_from_name(norm.at("method").get<std::string>());
    m.norm_stats.a = norm.at("a").get<std::vector<double>>();
    m.norm_stats.b = norm.at("b").get<std::vector<double>>();
    auto degenerate = norm.at("degenerate").get<std::vector<int>>();
    m.norm_stats.degenerate.assign(degenerate.begin(), degenerate.end());

    const auto& layer = j.at("layer");
    m.layer.activation = activation_from_index(layer.at("activation").get<int>());
    m.layer.seed = layer.at("seed").get<uint64_t>();
    m.layer.weights = matrix_from_json(layer.at("weights"));
    auto biases = layer.at("biases").get<std::vector<double>>();
    m.layer.biases = Eigen::Map<const Vector>(biases.data(), biases.size());

    m.output_weights = matrix_from_json(j.at("output_weights"));
    if (!j.at("gb_summary").is_null()) {
      const auto& gb = j.at("gb_summary");
      m.gb_summary = GbSummary{gb.at("k").get<int>(), gb.at("unsplittable").get<int>()};
    }
    m.solve_branch = branch_from_name(j.at("solve_branch").get<std::string>());
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CorruptFile, std::string("model file is incomplete: ") + e.what());
  }
}

void save_model_file(const TrainedModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MissingFile, "cannot write file: " + path);
  out << save_model(m) << "\n";
  if (!out) throw Error(ErrorKind::MissingFile, "failed writing file: " + path);
}

TrainedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

}  // namespace gbrvfl
