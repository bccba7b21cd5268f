// treekta command-line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treekta/alignment.hpp"
#include "treekta/dataio.hpp"
#include "treekta/error.hpp"
#include "treekta/gbt.hpp"
#include "treekta/harness.hpp"
#include "treekta/kernel.hpp"
#include "treekta/landmark.hpp"
#include "treekta/linalg.hpp"
#include "treekta/rf.hpp"
#include "treekta/simgen.hpp"
#include "treekta/stats.hpp"

namespace fs = std::filesystem;
using namespace treekta;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

Vector read_target(const fs::path& path) {
  const Matrix m = read_matrix_csv(path);
  if (m.cols() != 1) throw DataError(path.string() + ": target file must have one column");
  return m.column(0);
}

void write_target(const fs::path& path, const Vector& y) {
  write_matrix_csv(path, Matrix(y.size(), 1, y));
}

void print_summary(const AlignmentSpectrum& s) {
  const AlignmentSummary a = summarize_alignment(s);
  std::printf("align_first %.6f\nalign_best %.6f\nbest_index %zu\nalign_top5 %.6f\n", a.first,
              a.best, a.best_index, a.top5_of_10);
}

void write_spectrum(const fs::path& path, const AlignmentSpectrum& s) {
  if (path.empty()) {
    write_spectrum_csv(std::cout, s);
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_spectrum_csv(out, s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree-ensemble kernels and kernel-target alignment"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Draw a simulated data set");
  std::string family = "friedman";
  std::size_t sim_n = 800, sim_p = 20;
  std::uint64_t sim_seed = 1;
  std::optional<double> noise_sd;
  std::string sim_out;
  sim->add_option("--family", family, "friedman|checkerboard|vanderlaan|meier1|meier2")->required();
  sim->add_option("--n", sim_n, "rows");
  sim->add_option("--p", sim_p, "features");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--noise-sd", noise_sd, "noise standard deviation");
  sim->add_option("--out", sim_out, "output CSV")->required();

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a replicated experiment");
  std::string config_path, preset, exp_out;
  unsigned threads = 0;
  std::optional<std::size_t> replicates;
  exp->add_option("--config", config_path, "JSON config")->required();
  exp->add_option("--preset", preset, "desk|full (overrides the config)");
  exp->add_option("--threads", threads, "worker threads (0 = all)");
  exp->add_option("--replicates", replicates, "override replicate count");
  exp->add_option("--out", exp_out, "override output directory");

  // kernel
  auto* ker = app.add_subcommand("kernel", "Fit an ensemble on a CSV and write its kernel");
  std::string data_path, schema_path, model = "rf", kernel_out, target_out;
  std::size_t trees = 500;
  std::uint64_t ker_seed = 1;
  ker->add_option("--data", data_path, "input CSV")->required();
  ker->add_option("--schema", schema_path, "JSON schema sidecar");
  ker->add_option("--model", model, "rf|xgb")->check(CLI::IsMember({"rf", "xgb"}));
  ker->add_option("--trees", trees, "trees or boosting rounds");
  ker->add_option("--seed", ker_seed, "RNG seed");
  ker->add_option("--out", kernel_out, "kernel CSV")->required();
  ker->add_option("--target-out", target_out, "also write the target column");

  // align
  auto* align = app.add_subcommand("align", "Alignment spectrum of a kernel");
  std::string kernel_path, target_path, align_out;
  std::size_t components = kDefaultComponents;
  align->add_option("--kernel", kernel_path, "headerless kernel CSV")->required();
  align->add_option("--target", target_path, "headerless one-column target CSV")->required();
  align->add_option("--components", components, "number of components");
  align->add_option("--out", align_out, "spectrum CSV (stdout when omitted)");

  // landmark
  auto* land = app.add_subcommand("landmark", "Landmark alignment spectra");
  std::string land_kernel, land_target, land_out;
  std::vector<std::size_t> nproto = {100, 200, 300};
  std::size_t land_components = kDefaultComponents;
  std::uint64_t land_seed = 1;
  land->add_option("--kernel", land_kernel, "headerless kernel CSV")->required();
  land->add_option("--target", land_target, "headerless one-column target CSV")->required();
  land->add_option("--nproto", nproto, "landmark counts")->delimiter(',');
  land->add_option("--components", land_components, "number of components");
  land->add_option("--seed", land_seed, "RNG seed for landmark selection");
  land->add_option("--out", land_out, "spectra CSV (stdout when omitted)");

  // plot
  auto* plot = app.add_subcommand("plot", "Re-render the SVG plots of a report directory");
  std::string report_dir;
  plot->add_option("--report", report_dir, "directory written by experiment")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) {
      ScenarioSpec spec{parse_family(family), sim_n, sim_p, noise_sd, sim_seed};
      write_csv(sim_out, generate(spec));
    } else if (*exp) {
      ExperimentConfig config = load_config(config_path);
      if (!preset.empty()) apply_preset(config, preset);
      if (replicates) config.replicates = *replicates;
      if (!exp_out.empty()) config.output_dir = exp_out;
      config.validate();
      const Experiment experiment(config);
      const ExperimentReport report = experiment.run(threads);
      emit_outputs(report, config.output_dir);
      for (const auto& a : report.aggregates)
        std::printf("%-10s %-18s %12.6f (%.6f)\n", a.model.c_str(), a.metric.c_str(), a.mean, a.sd);
    } else if (*ker) {
      const DatasetSchema schema = schema_path.empty() ? DatasetSchema{} : load_schema(schema_path);
      const Dataset data = load_csv(data_path, schema);
      KernelMatrix k;
      if (model == "rf") {
        k = kernel_matrix(fit_rf(data, trees, TreeConfig::random_forest(data.p()), ker_seed), data);
      } else {
        k = kernel_matrix(fit_gbt(data, trees, GbtParams{}, ker_seed), data);
      }
      write_matrix_csv(kernel_out, k.values);
      if (!target_out.empty()) write_target(target_out, data.y);
    } else if (*align) {
      const Matrix k = read_matrix_csv(kernel_path);
      const Vector y = read_target(target_path);
      if (y.size() != k.rows()) throw DataError("target length does not match the kernel");
      const EigenDecomposition eig = sym_eig_leading(k, components, EigenRoute::lapack_leading);
      const AlignmentSpectrum s = alignment_spectrum(eig.vectors, eig.values, y, components);
      write_spectrum(align_out, s);
      if (!align_out.empty()) print_summary(s);
    } else if (*land) {
      const Matrix k = read_matrix_csv(land_kernel);
      const Vector y = read_target(land_target);
      if (y.size() != k.rows()) throw DataError("target length does not match the kernel");
      std::ostringstream out;
      out << "n_landmarks,component,value,alignment\n";
      for (std::size_t n_l : nproto) {
        if (n_l > k.rows()) throw InvalidArgument("more landmarks than rows: " + std::to_string(n_l));
        Rng rng(derive_seed(land_seed, n_l));
        const LandmarkDesign design = make_landmark_design(k, select_landmarks(k.rows(), n_l, rng));
        const AlignmentSpectrum s = landmark_alignment(design, y, std::min(land_components, n_l),
                                                       EigenRoute::lapack_leading);
        for (std::size_t i = 0; i < s.size(); ++i) {
          char buf[96];
          std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", n_l, i + 1, s.values[i],
                        s.alignment[i]);
          out << buf;
        }
      }
      if (land_out.empty()) {
        std::cout << out.str();
      } else {
        std::ofstream f(land_out);
        if (!f) throw DataError("cannot write " + land_out);
        f << out.str();
      }
    } else if (*plot) {
      render_plots(load_report(report_dir), report_dir);
    }
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kData;
  }
  return kOk;
}
