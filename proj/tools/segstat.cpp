// segstat: segmentation performance metrics and the statistical precision of
// their means: parametric and bootstrap confidence intervals, subsample
// sweeps, Gaussian CI tables, sample-size planning and coverage simulation.

#include <CLI11.hpp>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "segstat/csv.hpp"
#include "segstat/errors.hpp"
#include "segstat/metrics.hpp"
#include "segstat/nifti.hpp"
#include "segstat/planner.hpp"
#include "segstat/report.hpp"
#include "segstat/simulate.hpp"
#include "segstat/subsample.hpp"

namespace fs = std::filesystem;
using namespace segstat;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) fail(errc::bad_arguments, "cannot write " + path.string());
}

void emit(const std::optional<std::string>& out_path, const std::string& content) {
  if (out_path)
    write_file(*out_path, content);
  else
    std::cout << content;
}

// ---------------------------------------------------------------- metrics --

struct MetricsArgs {
  std::string gt_dir;
  std::string pred_dir;
  std::vector<std::int32_t> labels{1};
  std::string out_csv;
  std::optional<std::string> long_csv;
  bool serial = false;
};

std::optional<std::string> subject_id_of(const fs::path& path) {
  const std::string name = path.filename().string();
  for (const char* ext : {".nii.gz", ".nii"}) {
    if (name.size() > std::strlen(ext) && name.ends_with(ext))
      return name.substr(0, name.size() - std::strlen(ext));
  }
  return std::nullopt;
}

int run_metrics(const MetricsArgs& args) {
  std::vector<fs::path> gt_files;
  for (const auto& entry : fs::directory_iterator(args.gt_dir))
    if (entry.is_regular_file() && subject_id_of(entry.path())) gt_files.push_back(entry.path());
  std::sort(gt_files.begin(), gt_files.end());
  if (gt_files.empty()) fail(errc::bad_arguments, "no .nii/.nii.gz files in " + args.gt_dir);

  const Hd95Options hd_opts{NnStrategy::Auto, args.serial ? RunMode::Serial : RunMode::Parallel};

  MetricsCsv table;
  for (std::int32_t label : args.labels) {
    table.columns.push_back("dice_L" + std::to_string(label));
    table.columns.push_back("hd95_L" + std::to_string(label));
  }

  std::string long_csv = "subject_id,label,dice,hd95,flags\n";
  std::size_t failures = 0, undefined_hd = 0;

  for (const fs::path& gt_path : gt_files) {
    const std::string subject = *subject_id_of(gt_path);
    const fs::path pred_path = fs::path(args.pred_dir) / gt_path.filename();
    try {
      if (!fs::exists(pred_path))
        fail(errc::missing_pair, "no prediction for subject '" + subject + "'");
      const NiftiFile gt = read_nifti_file(gt_path);
      const NiftiFile pred = read_nifti_file(pred_path);
      for (const std::string& w : gt.warnings)
        std::cerr << "warning: " << gt_path.filename().string() << ": " << w << "\n";
      for (const std::string& w : pred.warnings)
        std::cerr << "warning: " << pred_path.filename().string() << ": " << w << "\n";

      MetricsCsv::Row row;
      row.subject_id = subject;
      for (std::int32_t label : args.labels) {
        const SubjectMetrics m = evaluate_pair(gt.volume, pred.volume, label, hd_opts);
        row.cells.emplace_back(m.dice);
        if (m.hd95) {
          row.cells.emplace_back(*m.hd95);
        } else {
          row.cells.emplace_back();
          ++undefined_hd;
          std::cerr << "warning: subject '" << subject << "' label " << label
                    << ": hd95 undefined (one empty mask), cell left empty\n";
        }
        std::string flags;
        if (m.both_empty) flags = "both_empty";
        if (!m.hd95) flags += flags.empty() ? "hd95_undefined" : ";hd95_undefined";
        long_csv += subject + "," + std::to_string(label) + "," + format_double(m.dice) + ",";
        if (m.hd95) long_csv += format_double(*m.hd95);
        long_csv += "," + flags + "\n";
      }
      table.rows.push_back(std::move(row));
    } catch (const Error& e) {
      ++failures;
      std::cerr << "error: subject '" << subject << "': " << e.what() << "\n";
    }
  }

  write_file(args.out_csv, write_metrics_csv(table));
  if (args.long_csv) write_file(*args.long_csv, long_csv);
  std::cout << "subjects: " << table.rows.size() << " ok, " << failures << " failed; "
            << "labels per subject: " << args.labels.size()
            << "; undefined hd95 cells: " << undefined_hd << "\n";
  return failures == 0 ? 0 : 2;
}

// --------------------------------------------------------------------- ci --

struct CiArgs {
  std::string input;
  std::string column;
  std::string method = "both";
  std::size_t m = 15000;
  double level = 0.95;
  std::uint64_t seed = 0;
  std::string out_json;
  std::optional<std::string> means_csv;
  bool serial = false;
};

int run_ci(const CiArgs& args) {
  const MetricsCsv table = read_metrics_csv(args.input);
  std::size_t skipped = 0;
  const MetricSeries series = table.column_series(args.column, &skipped);
  if (skipped > 0)
    std::cerr << "warning: column '" << args.column << "': skipped " << skipped
              << " undefined cells\n";

  std::optional<CiReport> par;
  std::optional<BootstrapReport> boot;
  if (args.method == "parametric" || args.method == "both")
    par = parametric_ci(series, ParametricOptions{args.level, false, {}});
  if (args.method == "bootstrap" || args.method == "both") {
    BootstrapOptions opts;
    opts.m = args.m;
    opts.level = args.level;
    opts.seed = args.seed;
    opts.keep_means = args.means_csv.has_value();
    opts.mode = args.serial ? RunMode::Serial : RunMode::Parallel;
    boot = bootstrap_ci(series, opts);
  }

  Json j = ci_report_json(args.column, series.n(), args.level, par ? &*par : nullptr,
                          boot ? &*boot : nullptr);
  j["method"] = args.method;
  j["skipped_undefined"] = skipped;
  write_file(args.out_json, to_text(j));

  if (args.means_csv && boot) {
    std::string csv = "resample,mean\n";
    for (std::size_t i = 0; i < boot->resample_means.size(); ++i)
      csv += std::to_string(i) + "," + format_double(boot->resample_means[i]) + "\n";
    write_file(*args.means_csv, csv);
  }
  return 0;
}

// -------------------------------------------------------------- subsample --

struct SubsampleArgs {
  std::string input;
  std::string column;
  std::vector<std::size_t> sizes;
  std::size_t repeats = 100;
  std::size_t m = 15000;
  double level = 0.95;
  std::uint64_t seed = 0;
  std::string out_csv;
  std::optional<std::string> out_json;
  std::optional<std::string> drawings_csv;
  bool with_replacement = false;
  bool serial = false;
};

int run_subsample(const SubsampleArgs& args) {
  const MetricsCsv table = read_metrics_csv(args.input);
  std::size_t skipped = 0;
  const MetricSeries series = table.column_series(args.column, &skipped);
  if (skipped > 0)
    std::cerr << "warning: column '" << args.column << "': skipped " << skipped
              << " undefined cells\n";

  SweepConfig config;
  config.sizes = args.sizes;
  std::sort(config.sizes.begin(), config.sizes.end());
  config.repeats = args.repeats;
  config.m = args.m;
  config.level = args.level;
  config.seed = args.seed;
  config.with_replacement = args.with_replacement;
  config.mode = args.serial ? RunMode::Serial : RunMode::Parallel;

  const SubsampleSweepResult result = run_sweep(series, config);
  write_file(args.out_csv, sweep_rows_csv(result));
  if (args.out_json) {
    Json j = sweep_report_json(result);
    j["column"] = args.column;
    j["n"] = series.n();
    write_file(*args.out_json, to_text(j));
  }
  if (args.drawings_csv) write_file(*args.drawings_csv, sweep_drawings_csv(result));
  return 0;
}

// ------------------------------------------------------------ table, plan --

struct TableArgs {
  std::vector<double> sigmas;
  std::vector<std::size_t> sizes;
  double level = 0.95;
  std::string format = "md";
  std::optional<std::string> out;
};

int run_table(const TableArgs& args) {
  TableSpec spec = default_table_spec();
  if (!args.sigmas.empty()) spec.sigmas = args.sigmas;
  if (!args.sizes.empty()) spec.sizes = args.sizes;
  spec.level = args.level;
  const GaussianTable table = gaussian_table(spec);
  if (args.format == "md")
    emit(args.out, render_table_markdown(table));
  else if (args.format == "csv")
    emit(args.out, render_table_csv(table));
  else
    emit(args.out, to_text(table_json(table)));
  return 0;
}

struct PlanArgs {
  double sigma = 0.0;
  double width = 0.0;
  double level = 0.95;
  std::optional<std::string> out;
};

int run_plan(const PlanArgs& args) {
  const PlanResult plan = plan_sample_size(args.sigma, args.width, args.level);
  emit(args.out, to_text(plan_json(plan)));
  return 0;
}

// --------------------------------------------------------------- coverage --

struct CoverageArgs {
  std::string dist;
  std::size_t n = 100;
  std::size_t trials = 1000;
  std::size_t m = 0;
  double level = 0.95;
  std::uint64_t seed = 0;
  std::string out_json;
  std::optional<std::string> trials_csv;
  bool serial = false;
};

int run_coverage_cmd(const CoverageArgs& args) {
  const SyntheticDistribution dist = parse_distribution(args.dist);
  CoverageConfig config;
  config.n = args.n;
  config.trials = args.trials;
  config.m = args.m;
  config.level = args.level;
  config.seed = args.seed;
  config.mode = args.serial ? RunMode::Serial : RunMode::Parallel;
  const CoverageReport report = run_coverage(dist, config);
  write_file(args.out_json, to_text(coverage_report_json(report)));
  if (args.trials_csv) write_file(*args.trials_csv, coverage_trials_csv(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"segmentation metric statistics: Dice/HD95 from NIfTI volumes, "
               "confidence intervals, subsample sweeps, CI tables, sample-size "
               "planning and coverage simulation"};
  app.set_version_flag("--version", "segstat 0.1.0");
  app.require_subcommand(1);

  MetricsArgs metrics;
  CLI::App* cmd_metrics = app.add_subcommand("metrics", "compute per-subject dice and hd95");
  cmd_metrics->add_option("--gt", metrics.gt_dir, "ground-truth directory")->required();
  cmd_metrics->add_option("--pred", metrics.pred_dir, "prediction directory")->required();
  cmd_metrics->add_option("--labels", metrics.labels, "label ids")->delimiter(',');
  cmd_metrics->add_option("--out", metrics.out_csv, "output metrics CSV")->required();
  cmd_metrics->add_option("--long-csv", metrics.long_csv, "per-(subject,label) CSV with flags");
  cmd_metrics->add_flag("--serial", metrics.serial, "disable parallel kernels");

  CiArgs ci;
  CLI::App* cmd_ci = app.add_subcommand("ci", "confidence intervals for one metric column");
  cmd_ci->add_option("--input", ci.input, "metrics CSV")->required();
  cmd_ci->add_option("--column", ci.column, "column name, e.g. dice_L1")->required();
  cmd_ci->add_option("--method", ci.method, "parametric|bootstrap|both")
      ->check(CLI::IsMember({"parametric", "bootstrap", "both"}));
  cmd_ci->add_option("--m", ci.m, "bootstrap resamples");
  cmd_ci->add_option("--level", ci.level, "confidence level");
  cmd_ci->add_option("--seed", ci.seed, "bootstrap seed");
  cmd_ci->add_option("--out", ci.out_json, "output JSON report")->required();
  cmd_ci->add_option("--resample-means-csv", ci.means_csv, "dump resample means");
  cmd_ci->add_flag("--serial", ci.serial, "disable parallel kernels");

  SubsampleArgs subsample;
  CLI::App* cmd_subsample = app.add_subcommand("subsample", "repeated-subsample precision sweep");
  cmd_subsample->add_option("--input", subsample.input, "metrics CSV")->required();
  cmd_subsample->add_option("--column", subsample.column, "column name")->required();
  cmd_subsample->add_option("--sizes", subsample.sizes, "subsample sizes")
      ->required()
      ->delimiter(',');
  cmd_subsample->add_option("--repeats", subsample.repeats, "drawings per size");
  cmd_subsample->add_option("--m", subsample.m, "bootstrap resamples per drawing");
  cmd_subsample->add_option("--level", subsample.level, "confidence level");
  cmd_subsample->add_option("--seed", subsample.seed, "seed");
  cmd_subsample->add_option("--out", subsample.out_csv, "per-size CSV")->required();
  cmd_subsample->add_option("--json", subsample.out_json, "JSON report");
  cmd_subsample->add_option("--drawings-csv", subsample.drawings_csv, "per-drawing CSV");
  cmd_subsample->add_flag("--with-replacement", subsample.with_replacement,
                          "draw subsamples with replacement");
  cmd_subsample->add_flag("--serial", subsample.serial, "disable parallel kernels");

  TableArgs table;
  CLI::App* cmd_table = app.add_subcommand("table", "Gaussian SEM/CI lookup table");
  cmd_table->add_option("--sigmas", table.sigmas, "sigma rows")->delimiter(',');
  cmd_table->add_option("--sizes", table.sizes, "size columns")->delimiter(',');
  cmd_table->add_option("--level", table.level, "confidence level");
  cmd_table->add_option("--format", table.format, "md|csv|json")
      ->check(CLI::IsMember({"md", "csv", "json"}));
  cmd_table->add_option("--out", table.out, "output path (default stdout)");

  PlanArgs plan;
  CLI::App* cmd_plan = app.add_subcommand("plan", "minimal test-set size for a CI width");
  cmd_plan->add_option("--sigma", plan.sigma, "expected metric spread")->required();
  cmd_plan->add_option("--width", plan.width, "target CI width")->required();
  cmd_plan->add_option("--level", plan.level, "confidence level");
  cmd_plan->add_option("--out", plan.out, "output path (default stdout)");

  CoverageArgs coverage;
  CLI::App* cmd_coverage = app.add_subcommand("coverage", "Monte Carlo CI coverage validation");
  cmd_coverage
      ->add_option("--dist", coverage.dist, "distribution, e.g. gaussian:mu=89.7,sigma=2.8")
      ->required();
  cmd_coverage->add_option("--n", coverage.n, "samples per trial");
  cmd_coverage->add_option("--trials", coverage.trials, "number of trials");
  cmd_coverage->add_option("--m", coverage.m, "bootstrap resamples (0 = parametric only)");
  cmd_coverage->add_option("--level", coverage.level, "confidence level");
  cmd_coverage->add_option("--seed", coverage.seed, "seed");
  cmd_coverage->add_option("--out", coverage.out_json, "output JSON report")->required();
  cmd_coverage->add_option("--trials-csv", coverage.trials_csv, "per-trial width ratios");
  cmd_coverage->add_flag("--serial", coverage.serial, "disable parallel kernels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_metrics->parsed()) return run_metrics(metrics);
    if (cmd_ci->parsed()) return run_ci(ci);
    if (cmd_subsample->parsed()) return run_subsample(subsample);
    if (cmd_table->parsed()) return run_table(table);
    if (cmd_plan->parsed()) return run_plan(plan);
    if (cmd_coverage->parsed()) return run_coverage_cmd(coverage);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
