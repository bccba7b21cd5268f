#include "treekta/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "treekta/error.hpp"
#include "treekta/kernel.hpp"
#include "treekta/krr.hpp"
#include "treekta/landmark.hpp"
#include "treekta/linalg.hpp"
#include "treekta/parallel.hpp"
#include "treekta/random.hpp"
#include "treekta/rf.hpp"
#include "treekta/stats.hpp"
#include "treekta/svg.hpp"

namespace treekta {

using nlohmann::json;

namespace {

// Seed streams derived from the per-replicate seed.
constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kForestStream = 2;
constexpr std::uint64_t kBoostStream = 3;
constexpr std::uint64_t kLandmarkStream = 1000;

constexpr ModelKind kAllModels[] = {ModelKind::rf_kernel, ModelKind::xgb_kernel, ModelKind::rf,
                                    ModelKind::xgb};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!obj.is_object()) throw InvalidArgument(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw InvalidArgument("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get_as(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument("bad value for '" + std::string(key) + "' in " + where);
  }
}

std::optional<double> metric_value(const ReplicateRecord& r, const std::string& metric) {
  if (metric == "test_cc") return r.test_cc;
  if (metric == "test_mse") return r.test_mse;
  if (!r.alignment) return std::nullopt;
  if (metric == "align_first") return r.alignment->first;
  if (metric == "align_best") return r.alignment->best;
  if (metric == "align_top5") return r.alignment->top5_of_10;
  if (metric == "best_index") return static_cast<double>(r.alignment->best_index);
  for (const auto& lm : r.landmarks) {
    const std::string suffix = "_" + std::to_string(lm.n_landmarks);
    if (metric == "landmark_peak" + suffix) return lm.peak;
    if (metric == "landmark_cc" + suffix) return lm.test_cc;
    if (metric == "landmark_mse" + suffix) return lm.test_mse;
  }
  return std::nullopt;
}

std::vector<std::string> report_columns(const ExperimentConfig& config) {
  std::vector<std::string> cols = {"model",      "replicate",  "test_cc",    "test_mse",
                                   "align_first", "align_best", "align_top5", "best_index",
                                   "ridge"};
  for (std::size_t n : config.landmark_counts) {
    for (const char* m : {"landmark_peak_", "landmark_cc_", "landmark_mse_"})
      cols.push_back(m + std::to_string(n));
  }
  return cols;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed: " + path.string());
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("bad number '" + s + "' in " + where);
  }
}

}  // namespace

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::rf_kernel: return "RF_kernel";
    case ModelKind::xgb_kernel: return "XGB_kernel";
    case ModelKind::rf: return "RF";
    case ModelKind::xgb: return "XGB";
  }
  return "?";
}

ModelKind parse_model(std::string_view name) {
  for (ModelKind k : kAllModels)
    if (model_name(k) == name) return k;
  throw InvalidArgument("unknown model '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw InvalidArgument("replicates must be at least 1");
  if (models.empty()) throw InvalidArgument("no models selected");
  for (std::size_t i = 0; i < models.size(); ++i)
    for (std::size_t j = i + 1; j < models.size(); ++j)
      if (models[i] == models[j]) throw InvalidArgument("duplicate model");
  if (!train_size && !(train_fraction > 0.0 && train_fraction < 1.0))
    throw InvalidArgument("train_fraction must lie in (0, 1)");
  if (n_components < 10) throw InvalidArgument("n_components must be at least 10");
  for (std::size_t n : landmark_counts)
    if (n == 0) throw InvalidArgument("landmark counts must be positive");
  if (rf_trees == 0) throw InvalidArgument("rf trees must be positive");
  if (xgb_rounds == 0) throw InvalidArgument("xgb rounds must be positive");
  xgb.validate();
  if (const auto* s = std::get_if<ScenarioSpec>(&source)) s->validate();
}

void apply_preset(ExperimentConfig& config, std::string_view preset) {
  if (preset == "desk") {
    config.replicates = 20;
    config.rf_trees = 200;
  } else if (preset == "full") {
    config.replicates = 200;
    config.rf_trees = 500;
  } else {
    throw InvalidArgument("unknown preset '" + std::string(preset) + "'");
  }
}

ExperimentConfig config_from_json(const json& doc, const std::filesystem::path& base_dir) {
  reject_unknown_keys(doc,
                      {"name", "preset", "scenario", "csv", "models", "replicates",
                       "train_fraction", "train_size", "landmark_counts", "n_components",
                       "master_seed", "output_dir", "threads", "rf", "xgb"},
                      "config");
  ExperimentConfig c;
  const std::string where = "config";
  if (doc.contains("preset")) apply_preset(c, get_as<std::string>(doc, "preset", where));
  if (doc.contains("name")) c.name = get_as<std::string>(doc, "name", where);

  if (doc.contains("scenario") == doc.contains("csv"))
    throw InvalidArgument("config needs exactly one of 'scenario' or 'csv'");
  if (doc.contains("scenario")) {
    const json& s = doc["scenario"];
    reject_unknown_keys(s, {"family", "n", "p", "noise_sd"}, "scenario");
    ScenarioSpec spec;
    spec.family = parse_family(get_as<std::string>(s, "family", "scenario"));
    spec.n = get_as<std::size_t>(s, "n", "scenario");
    spec.p = get_as<std::size_t>(s, "p", "scenario");
    if (s.contains("noise_sd")) spec.noise_sd = get_as<double>(s, "noise_sd", "scenario");
    c.source = spec;
  } else {
    const json& s = doc["csv"];
    reject_unknown_keys(s, {"path", "schema", "schema_path", "subsample"}, "csv");
    CsvSource src;
    src.path = get_as<std::string>(s, "path", "csv");
    if (src.path.is_relative() && !base_dir.empty()) src.path = base_dir / src.path;
    if (s.contains("schema") && s.contains("schema_path"))
      throw InvalidArgument("csv takes 'schema' or 'schema_path', not both");
    if (s.contains("schema")) src.schema = schema_from_json(s["schema"]);
    if (s.contains("schema_path")) {
      std::filesystem::path sp = get_as<std::string>(s, "schema_path", "csv");
      if (sp.is_relative() && !base_dir.empty()) sp = base_dir / sp;
      src.schema = load_schema(sp);
    }
    if (s.contains("subsample")) src.subsample = get_as<std::size_t>(s, "subsample", "csv");
    c.source = src;
  }

  if (doc.contains("models")) {
    c.models.clear();
    for (const auto& m : get_as<std::vector<std::string>>(doc, "models", where))
      c.models.push_back(parse_model(m));
  }
  if (doc.contains("replicates")) c.replicates = get_as<std::size_t>(doc, "replicates", where);
  if (doc.contains("train_fraction"))
    c.train_fraction = get_as<double>(doc, "train_fraction", where);
  if (doc.contains("train_size")) c.train_size = get_as<std::size_t>(doc, "train_size", where);
  if (doc.contains("landmark_counts"))
    c.landmark_counts = get_as<std::vector<std::size_t>>(doc, "landmark_counts", where);
  if (doc.contains("n_components"))
    c.n_components = get_as<std::size_t>(doc, "n_components", where);
  if (doc.contains("master_seed")) c.master_seed = get_as<std::uint64_t>(doc, "master_seed", where);
  if (doc.contains("output_dir")) c.output_dir = get_as<std::string>(doc, "output_dir", where);
  if (doc.contains("threads")) c.threads = get_as<unsigned>(doc, "threads", where);

  if (doc.contains("rf")) {
    const json& r = doc["rf"];
    reject_unknown_keys(r, {"trees", "mtry", "min_node_size", "max_depth"}, "rf");
    if (r.contains("trees")) c.rf_trees = get_as<std::size_t>(r, "trees", "rf");
    if (r.contains("mtry")) c.rf_mtry = get_as<std::size_t>(r, "mtry", "rf");
    if (r.contains("min_node_size"))
      c.rf_min_node_size = get_as<std::size_t>(r, "min_node_size", "rf");
    if (r.contains("max_depth")) c.rf_max_depth = get_as<int>(r, "max_depth", "rf");
  }
  if (doc.contains("xgb")) {
    const json& x = doc["xgb"];
    reject_unknown_keys(x, {"rounds", "eta", "max_depth", "lambda", "gamma", "min_node_size",
                            "subsample", "colsample"},
                        "xgb");
    if (x.contains("rounds")) c.xgb_rounds = get_as<std::size_t>(x, "rounds", "xgb");
    if (x.contains("eta")) c.xgb.learning_rate = get_as<double>(x, "eta", "xgb");
    if (x.contains("max_depth")) c.xgb.max_depth = get_as<int>(x, "max_depth", "xgb");
    if (x.contains("lambda")) c.xgb.reg_lambda = get_as<double>(x, "lambda", "xgb");
    if (x.contains("gamma")) c.xgb.reg_gamma = get_as<double>(x, "gamma", "xgb");
    if (x.contains("min_node_size"))
      c.xgb.min_node_size = get_as<std::size_t>(x, "min_node_size", "xgb");
    if (x.contains("subsample")) c.xgb.subsample = get_as<double>(x, "subsample", "xgb");
    if (x.contains("colsample")) c.xgb.colsample = get_as<double>(x, "colsample", "xgb");
  }
  c.validate();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json doc;
  doc["name"] = c.name;
  if (const auto* s = std::get_if<ScenarioSpec>(&c.source)) {
    doc["scenario"] = {{"family", family_name(s->family)},
                       {"n", s->n},
                       {"p", s->p},
                       {"noise_sd", s->resolved_noise_sd()}};
  } else {
    const auto& src = std::get<CsvSource>(c.source);
    json csv = {{"path", src.path.generic_string()}, {"schema", schema_to_json(src.schema)}};
    if (src.subsample) csv["subsample"] = *src.subsample;
    doc["csv"] = csv;
  }
  json models = json::array();
  for (ModelKind m : c.models) models.push_back(model_name(m));
  doc["models"] = models;
  doc["replicates"] = c.replicates;
  if (c.train_size) {
    doc["train_size"] = *c.train_size;
  } else {
    doc["train_fraction"] = c.train_fraction;
  }
  doc["landmark_counts"] = c.landmark_counts;
  doc["n_components"] = c.n_components;
  doc["master_seed"] = c.master_seed;
  json rf = {{"trees", c.rf_trees}, {"min_node_size", c.rf_min_node_size},
             {"max_depth", c.rf_max_depth}};
  if (c.rf_mtry) rf["mtry"] = *c.rf_mtry;
  doc["rf"] = rf;
  doc["xgb"] = {{"rounds", c.xgb_rounds},         {"eta", c.xgb.learning_rate},
                {"max_depth", c.xgb.max_depth},   {"lambda", c.xgb.reg_lambda},
                {"gamma", c.xgb.reg_gamma},       {"min_node_size", c.xgb.min_node_size},
                {"subsample", c.xgb.subsample},   {"colsample", c.xgb.colsample}};
  return doc;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("malformed config " + path.string() + ": " + e.what());
  }
  return config_from_json(doc, path.parent_path());
}

const MetricSummary* ExperimentReport::find(std::string_view model, std::string_view metric) const {
  for (const auto& a : aggregates)
    if (a.model == model && a.metric == metric) return &a;
  return nullptr;
}

std::vector<std::string> metric_names(ModelKind kind, const ExperimentConfig& config) {
  std::vector<std::string> names = {"test_cc", "test_mse"};
  if (!is_kernel_model(kind)) return names;
  for (const char* m : {"align_first", "align_best", "align_top5", "best_index"}) names.push_back(m);
  for (std::size_t n : config.landmark_counts) {
    const std::string suffix = std::to_string(n);
    names.push_back("landmark_peak_" + suffix);
    names.push_back("landmark_cc_" + suffix);
    names.push_back("landmark_mse_" + suffix);
  }
  return names;
}

Experiment::Experiment(ExperimentConfig config) : config_(std::move(config)) {
  config_.validate();
  if (const auto* src = std::get_if<CsvSource>(&config_.source)) {
    csv_data_ = load_csv(src->path, src->schema);
    if (src->subsample && *src->subsample > csv_data_->n())
      throw InvalidArgument("subsample larger than the data set");
  }
}

Dataset Experiment::replicate_data(std::uint64_t seed) const {
  if (const auto* spec = std::get_if<ScenarioSpec>(&config_.source)) {
    ScenarioSpec s = *spec;
    s.seed = derive_seed(seed, kDataStream);
    return generate(s);
  }
  const auto& src = std::get<CsvSource>(config_.source);
  if (!src.subsample) return *csv_data_;
  Rng rng(derive_seed(seed, kDataStream));
  return subsample(*csv_data_, *src.subsample, rng);
}

std::vector<ReplicateRecord> Experiment::run_replicate(std::size_t index) const {
  const ExperimentConfig& c = config_;
  const std::uint64_t seed = derive_seed(c.master_seed, index);
  const Dataset data = replicate_data(seed);

  Rng split_rng(derive_seed(seed, kSplitStream));
  const TrainTestSplit split = c.train_size ? split_train_test_sized(data, *c.train_size, split_rng)
                                            : split_train_test(data, c.train_fraction, split_rng);
  const Dataset& train = split.train;
  const Dataset& test = split.test;
  if (train.n() < c.n_components)
    throw InvalidArgument("training set smaller than n_components");
  if (test.n() < 2) throw InvalidArgument("test set needs at least two rows");

  auto wants = [&](ModelKind a, ModelKind b) {
    return std::find(c.models.begin(), c.models.end(), a) != c.models.end() ||
           std::find(c.models.begin(), c.models.end(), b) != c.models.end();
  };

  std::optional<RandomForest> forest;
  if (wants(ModelKind::rf, ModelKind::rf_kernel)) {
    TreeConfig tc = TreeConfig::random_forest(train.p());
    if (c.rf_mtry) tc.mtry = *c.rf_mtry;
    tc.min_node_size = c.rf_min_node_size;
    tc.max_depth = c.rf_max_depth;
    forest = fit_rf(train, c.rf_trees, tc, derive_seed(seed, kForestStream), 1);
  }
  std::optional<GbtModel> boost;
  if (wants(ModelKind::xgb, ModelKind::xgb_kernel))
    boost = fit_gbt(train, c.xgb_rounds, c.xgb, derive_seed(seed, kBoostStream));

  std::vector<ReplicateRecord> records;
  for (ModelKind kind : c.models) {
    ReplicateRecord rec;
    rec.model = kind;
    rec.replicate = index;
    if (!is_kernel_model(kind)) {
      const Vector pred = kind == ModelKind::rf ? predict_rf(*forest, test) : predict_gbt(*boost, test);
      rec.test_cc = pearson(pred, test.y);
      rec.test_mse = mean_squared_error(pred, test.y);
      records.push_back(std::move(rec));
      continue;
    }
    const std::span<const Tree> trees =
        kind == ModelKind::rf_kernel ? std::span<const Tree>(forest->trees)
                                     : std::span<const Tree>(boost->trees);
    const KernelMatrix k = kernel_matrix(trees, train, 1);
    const EigenDecomposition eig =
        sym_eig_leading(k.values, c.n_components, EigenRoute::lapack_leading);
    rec.spectrum = alignment_spectrum(eig.vectors, eig.values, train.y, c.n_components);
    rec.alignment = summarize_alignment(rec.spectrum);

    const KrrModel krr = fit_krr(k, train.y);
    rec.ridge = krr.lambda;
    const CrossKernel kx = cross_kernel(trees, test, train, 1);
    const Vector pred = predict_krr(krr, kx);
    rec.test_cc = pearson(pred, test.y);
    rec.test_mse = mean_squared_error(pred, test.y);

    for (std::size_t n_l : c.landmark_counts) {
      if (n_l > train.n()) continue;
      // Same landmark rows for every kernel model of a replicate.
      Rng lrng(derive_seed(seed, kLandmarkStream + n_l));
      const auto landmarks = select_landmarks(train.n(), n_l, lrng);
      const LandmarkDesign design = make_landmark_design(k.values, landmarks);
      LandmarkRecord lm;
      lm.n_landmarks = n_l;
      lm.spectrum = landmark_alignment(design, train.y, std::min(c.n_components, n_l),
                                       EigenRoute::lapack_leading);
      lm.peak = *std::max_element(lm.spectrum.alignment.begin(), lm.spectrum.alignment.end());
      const Vector coef = landmark_fit(design, train.y);
      const Vector lpred =
          landmark_predict(make_landmark_design(kx.values, landmarks).similarities, coef);
      lm.test_cc = pearson(lpred, test.y);
      lm.test_mse = mean_squared_error(lpred, test.y);
      rec.landmarks.push_back(std::move(lm));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<ReplicateRecord> Experiment::run_all(unsigned threads) const {
  const unsigned workers = resolve_threads(threads ? threads : config_.threads);
  std::vector<std::vector<ReplicateRecord>> per(config_.replicates);
  parallel_for(config_.replicates, workers, [&](std::size_t r) { per[r] = run_replicate(r); });
  std::vector<ReplicateRecord> all;
  for (auto& v : per)
    for (auto& rec : v) all.push_back(std::move(rec));
  return all;
}

ExperimentReport Experiment::run(unsigned threads) const {
  return aggregate(config_, run_all(threads));
}

ExperimentReport aggregate(const ExperimentConfig& config, std::vector<ReplicateRecord> records) {
  if (records.empty()) throw InvalidArgument("no records to aggregate");
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.replicate < b.replicate;
  });
  ExperimentReport report;
  report.config = config;

  for (ModelKind kind : config.models) {
    const std::string name(model_name(kind));
    std::vector<const ReplicateRecord*> mine;
    for (const auto& r : records)
      if (r.model == kind) mine.push_back(&r);
    if (mine.empty()) continue;

    for (const auto& metric : metric_names(kind, config)) {
      Vector v;
      for (const auto* r : mine)
        if (auto x = metric_value(*r, metric)) v.push_back(*x);
      if (v.empty()) continue;
      MetricSummary s;
      s.model = name;
      s.metric = metric;
      s.mean = mean(v);
      s.sd = sample_sd(v);
      s.min = *std::min_element(v.begin(), v.end());
      s.max = *std::max_element(v.begin(), v.end());
      s.count = v.size();
      report.aggregates.push_back(s);
    }

    if (!is_kernel_model(kind)) continue;
    auto mean_of = [&](auto pick) {
      MeanSpectrum ms;
      ms.model = name;
      std::size_t count = 0;
      for (const auto* r : mine) {
        const AlignmentSpectrum* s = pick(*r);
        if (!s) continue;
        if (ms.values.empty()) {
          ms.values.assign(s->values.size(), 0.0);
          ms.alignment.assign(s->alignment.size(), 0.0);
        }
        for (std::size_t i = 0; i < ms.values.size(); ++i) {
          ms.values[i] += s->values[i];
          ms.alignment[i] += s->alignment[i];
        }
        ++count;
      }
      for (double& x : ms.values) x /= static_cast<double>(count);
      for (double& x : ms.alignment) x /= static_cast<double>(count);
      return std::make_pair(ms, count);
    };
    auto full = mean_of([](const ReplicateRecord& r) { return &r.spectrum; });
    report.spectra.push_back(full.first);
    for (std::size_t n_l : config.landmark_counts) {
      auto lm = mean_of([n_l](const ReplicateRecord& r) -> const AlignmentSpectrum* {
        for (const auto& l : r.landmarks)
          if (l.n_landmarks == n_l) return &l.spectrum;
        return nullptr;
      });
      if (lm.second == 0) continue;
      lm.first.n_landmarks = n_l;
      report.spectra.push_back(lm.first);
    }
  }
  report.records = std::move(records);
  return report;
}

std::string summary_json(const ExperimentReport& report) {
  json doc;
  doc["config"] = config_to_json(report.config);
  doc["records"] = report.records.size();
  json aggs = json::array();
  for (const auto& a : report.aggregates)
    aggs.push_back({{"model", a.model},
                    {"metric", a.metric},
                    {"mean", a.mean},
                    {"sd", a.sd},
                    {"min", a.min},
                    {"max", a.max},
                    {"count", a.count}});
  doc["aggregates"] = aggs;
  json spectra = json::array();
  for (const auto& s : report.spectra) {
    json e = {{"model", s.model}, {"values", s.values}, {"alignment", s.alignment}};
    e["n_landmarks"] = s.n_landmarks ? json(*s.n_landmarks) : json(nullptr);
    spectra.push_back(e);
  }
  doc["spectra"] = spectra;
  return doc.dump(2) + "\n";
}

std::string spectrum_plot_svg(const ExperimentReport& report, std::string_view model) {
  svg::LinePlot plot;
  plot.title = "Alignment spectrum, " + std::string(model);
  plot.x_label = "component";
  plot.y_label = "alignment |cor(u_i, y)|";
  std::vector<double> ticks;
  for (std::size_t i = 1; i <= report.config.n_components; ++i) ticks.push_back(static_cast<double>(i));
  plot.x_ticks = ticks;
  for (const auto& s : report.spectra) {
    if (s.model != model) continue;
    svg::Series series;
    series.label = s.n_landmarks ? "nProto=" + std::to_string(*s.n_landmarks) : "full kernel";
    for (std::size_t i = 0; i < s.alignment.size(); ++i) {
      series.x.push_back(static_cast<double>(i + 1));
      series.y.push_back(s.alignment[i]);
    }
    plot.series.push_back(std::move(series));
  }
  return svg::render_line_plot(plot);
}

std::string scatter_plot_svg(const ExperimentReport& report) {
  std::vector<svg::ScatterPanel> panels;
  const std::pair<const char*, double AlignmentSummary::*> axes[] = {
      {"align_first", &AlignmentSummary::first},
      {"align_best", &AlignmentSummary::best},
      {"align_top5", &AlignmentSummary::top5_of_10}};
  for (const auto& [label, field] : axes) {
    svg::ScatterPanel panel;
    panel.title = label;
    panel.x_label = label;
    panel.y_label = "test cc";
    for (ModelKind kind : report.config.models) {
      if (!is_kernel_model(kind)) continue;
      svg::Series g;
      g.label = std::string(model_name(kind));
      for (const auto& r : report.records) {
        if (r.model != kind || !r.alignment) continue;
        g.x.push_back((*r.alignment).*field);
        g.y.push_back(r.test_cc);
      }
      panel.groups.push_back(std::move(g));
    }
    panels.push_back(std::move(panel));
  }
  return svg::render_scatter_panels(panels, "Training alignment vs test correlation");
}

void render_plots(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
  bool any_kernel = false;
  for (ModelKind kind : report.config.models) {
    if (!is_kernel_model(kind)) continue;
    any_kernel = true;
    write_text(dir / ("spectrum_" + std::string(model_name(kind)) + ".svg"),
               spectrum_plot_svg(report, model_name(kind)));
  }
  if (any_kernel) write_text(dir / "alignment_vs_cc.svg", scatter_plot_svg(report));
}

void emit_outputs(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());

  const auto cols = report_columns(report.config);
  std::ostringstream csv;
  for (std::size_t i = 0; i < cols.size(); ++i) csv << (i ? "," : "") << cols[i];
  csv << '\n';
  for (const auto& r : report.records) {
    csv << model_name(r.model) << ',' << r.replicate;
    for (std::size_t i = 2; i < cols.size(); ++i) {
      csv << ',';
      if (cols[i] == "ridge") {
        if (r.alignment) csv << format_double(r.ridge);
      } else if (auto v = metric_value(r, cols[i])) {
        csv << (cols[i] == "best_index" ? std::to_string(r.alignment->best_index)
                                        : format_double(*v));
      }
    }
    csv << '\n';
  }
  write_text(dir / "report.csv", csv.str());

  std::ostringstream spectra;
  spectra << "model,n_landmarks,component,value,alignment\n";
  for (const auto& s : report.spectra) {
    for (std::size_t i = 0; i < s.alignment.size(); ++i) {
      spectra << s.model << ',' << (s.n_landmarks ? std::to_string(*s.n_landmarks) : "") << ','
              << i + 1 << ',' << format_double(s.values[i]) << ','
              << format_double(s.alignment[i]) << '\n';
    }
  }
  write_text(dir / "spectra.csv", spectra.str());
  write_text(dir / "summary.json", summary_json(report));
  render_plots(report, dir);
}

ExperimentReport load_report(const std::filesystem::path& dir) {
  std::ifstream in(dir / "summary.json");
  if (!in) throw DataError("no summary.json in " + dir.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed summary.json: ") + e.what());
  }
  ExperimentReport report;
  try {
    report.config = config_from_json(doc.at("config"));
    for (const auto& a : doc.at("aggregates")) {
      report.aggregates.push_back({a.at("model").get<std::string>(),
                                   a.at("metric").get<std::string>(), a.at("mean").get<double>(),
                                   a.at("sd").get<double>(), a.at("min").get<double>(),
                                   a.at("max").get<double>(), a.at("count").get<std::size_t>()});
    }
    for (const auto& s : doc.at("spectra")) {
      MeanSpectrum ms;
      ms.model = s.at("model").get<std::string>();
      if (!s.at("n_landmarks").is_null()) ms.n_landmarks = s.at("n_landmarks").get<std::size_t>();
      ms.values = s.at("values").get<Vector>();
      ms.alignment = s.at("alignment").get<Vector>();
      report.spectra.push_back(std::move(ms));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed summary.json: ") + e.what());
  }

  std::ifstream rin(dir / "report.csv");
  if (!rin) throw DataError("no report.csv in " + dir.string());
  std::string line;
  std::getline(rin, line);
  const auto header = split_line(line);
  std::size_t line_no = 1;
  while (std::getline(rin, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_line(line);
    const std::string where = "report.csv line " + std::to_string(line_no);
    if (cells.size() != header.size()) throw DataError("wrong field count in " + where);
    ReplicateRecord r;
    r.model = parse_model(cells[0]);
    r.replicate = static_cast<std::size_t>(parse_double(cells[1], where));
    std::map<std::string, double> values;
    for (std::size_t i = 2; i < cells.size(); ++i)
      if (!cells[i].empty()) values[header[i]] = parse_double(cells[i], where);
    r.test_cc = values.at("test_cc");
    r.test_mse = values.at("test_mse");
    if (values.count("align_first")) {
      AlignmentSummary a;
      a.first = values["align_first"];
      a.best = values["align_best"];
      a.top5_of_10 = values["align_top5"];
      a.best_index = static_cast<std::size_t>(values["best_index"]);
      r.alignment = a;
      r.ridge = values["ridge"];
    }
    for (std::size_t n : report.config.landmark_counts) {
      const std::string suffix = std::to_string(n);
      if (!values.count("landmark_peak_" + suffix)) continue;
      LandmarkRecord lm;
      lm.n_landmarks = n;
      lm.peak = values["landmark_peak_" + suffix];
      lm.test_cc = values["landmark_cc_" + suffix];
      lm.test_mse = values["landmark_mse_" + suffix];
      r.landmarks.push_back(lm);
    }
    report.records.push_back(std::move(r));
  }
  return report;
}

}  // namespace treekta
