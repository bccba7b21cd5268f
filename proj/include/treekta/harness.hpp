#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "treekta/alignment.hpp"
#include "treekta/dataio.hpp"
#include "treekta/dataset.hpp"
#include "treekta/gbt.hpp"
#include "treekta/simgen.hpp"

namespace treekta {

enum class ModelKind { rf_kernel, xgb_kernel, rf, xgb };

/// "RF_kernel", "XGB_kernel", "RF", "XGB".
std::string_view model_name(ModelKind kind);
ModelKind parse_model(std::string_view name);
inline bool is_kernel_model(ModelKind kind) {
  return kind == ModelKind::rf_kernel || kind == ModelKind::xgb_kernel;
}

struct CsvSource {
  std::filesystem::path path;
  DatasetSchema schema;
  /// Rows drawn (without replacement) from the file for every replicate.
  std::optional<std::size_t> subsample;
};

struct ExperimentConfig {
  std::string name = "experiment";
  /// For simulated data the spec's seed is ignored; each replicate derives its own.
  std::variant<ScenarioSpec, CsvSource> source = ScenarioSpec{Family::friedman, 800, 20, {}, 0};
  std::vector<ModelKind> models = {ModelKind::rf_kernel, ModelKind::xgb_kernel};
  std::size_t replicates = 200;
  double train_fraction = 0.75;
  /// Overrides train_fraction when set.
  std::optional<std::size_t> train_size;
  std::vector<std::size_t> landmark_counts = {100, 200, 300};
  std::size_t n_components = kDefaultComponents;
  std::uint64_t master_seed = 1;
  std::filesystem::path output_dir = "treekta-out";
  /// 0 means one worker per hardware thread.
  unsigned threads = 0;

  std::size_t rf_trees = 500;
  /// Defaults to floor(sqrt(p)).
  std::optional<std::size_t> rf_mtry;
  std::size_t rf_min_node_size = 5;
  int rf_max_depth = 0;

  std::size_t xgb_rounds = 100;
  GbtParams xgb;

  void validate() const;
};

/// "desk": 20 replicates, 200 forest trees. "full": 200 replicates, 500 trees.
void apply_preset(ExperimentConfig& config, std::string_view preset);

/// Keys mirror the struct; relative CSV paths resolve against base_dir.
/// A "preset" key is applied before the remaining keys.
ExperimentConfig config_from_json(const nlohmann::json& doc,
                                  const std::filesystem::path& base_dir = {});
/// Leaves out output_dir and threads, which do not affect results.
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

struct LandmarkRecord {
  std::size_t n_landmarks = 0;
  AlignmentSpectrum spectrum;
  double peak = 0.0;
  double test_cc = 0.0;
  double test_mse = 0.0;
};

struct ReplicateRecord {
  ModelKind model = ModelKind::rf_kernel;
  std::size_t replicate = 0;
  double test_cc = 0.0;
  double test_mse = 0.0;
  /// Kernel models only.
  std::optional<AlignmentSummary> alignment;
  AlignmentSpectrum spectrum;
  double ridge = 0.0;
  std::vector<LandmarkRecord> landmarks;
};

struct MetricSummary {
  std::string model;
  std::string metric;
  double mean = 0.0;
  /// Sample sd (n-1); 0 for a single record.
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

/// Component-wise mean of the spectra of one model; n_landmarks empty for
/// the full kernel.
struct MeanSpectrum {
  std::string model;
  std::optional<std::size_t> n_landmarks;
  Vector values;
  Vector alignment;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReplicateRecord> records;
  std::vector<MetricSummary> aggregates;
  std::vector<MeanSpectrum> spectra;

  const MetricSummary* find(std::string_view model, std::string_view metric) const;
};

/// Names of the aggregated metrics for one model under a config.
std::vector<std::string> metric_names(ModelKind kind, const ExperimentConfig& config);

/// Runs replicates of one config. CSV data is loaded once at construction.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }

  /// Deterministic in (master_seed, index). One record per configured model.
  std::vector<ReplicateRecord> run_replicate(std::size_t index) const;

  /// All replicates on `threads` workers (config threads when 0); records
  /// ordered by replicate then model.
  std::vector<ReplicateRecord> run_all(unsigned threads = 0) const;

  ExperimentReport run(unsigned threads = 0) const;

 private:
  Dataset replicate_data(std::uint64_t seed) const;

  ExperimentConfig config_;
  std::optional<Dataset> csv_data_;
};

ExperimentReport aggregate(const ExperimentConfig& config, std::vector<ReplicateRecord> records);

/// report.csv, spectra.csv, summary.json, spectrum_<model>.svg and
/// alignment_vs_cc.svg.
void emit_outputs(const ExperimentReport& report, const std::filesystem::path& dir);

/// summary.json text exactly as emit_outputs writes it.
std::string summary_json(const ExperimentReport& report);

/// SVG files only, from a report (possibly one read back by load_report).
void render_plots(const ExperimentReport& report, const std::filesystem::path& dir);

/// Rebuilds config, aggregates, mean spectra and per-replicate metrics from
/// a directory written by emit_outputs. Per-replicate spectra are not kept.
ExperimentReport load_report(const std::filesystem::path& dir);

std::string spectrum_plot_svg(const ExperimentReport& report, std::string_view model);
std::string scatter_plot_svg(const ExperimentReport& report);

}  // namespace treekta
