/**
 * ratecast — rate-window forecasting and walk-forward backtesting CLI.
 *
 * Subcommands: forecast, backtest, seasonal, compare, sweep-delta,
 * sweep-alpha, stockscore.
 *
 * Exit codes: 0 success (and --help), 1 input/parse problems, 2 usage
 * errors, 3 computational errors (math or data-shape).
 *
 * Every JSON report embeds the fully resolved configuration under "config";
 * feeding that report (or just its config object) back through --config
 * reproduces the run byte for byte.  Reports carry no wall-clock state.
 */
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ratecast/csv.hpp"
#include "ratecast/models.hpp"
#include "ratecast/parallel.hpp"
#include "ratecast/seasonal.hpp"
#include "ratecast/selector.hpp"
#include "ratecast/series.hpp"
#include "ratecast/stockscore.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// Usage problem detected after CLI11 parsing; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string absolute_path(const std::string& path) {
  return fs::absolute(fs::path(path)).lexically_normal().string();
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    ratecast::csvio::write_text_atomic(out, text);
  }
}

/// Load --config: either a bare config object or a full report, in which
/// case its embedded "config" object is used.
json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ratecast::csvio::IoError("cannot open " + path);
  }
  json parsed;
  try {
    in >> parsed;
  } catch (const json::exception& e) {
    throw ratecast::csvio::ParseError(path + ": " + e.what());
  }
  if (parsed.is_object() && parsed.contains("config")) {
    return parsed.at("config");
  }
  return parsed;
}

/// Copy a config value into `value` unless the flag was given explicitly.
template <typename T>
void merge_key(const json& cfg, const char* key, const CLI::Option* opt,
               T& value) {
  if (opt != nullptr && opt->count() > 0) {
    return;
  }
  if (!cfg.contains(key)) {
    return;
  }
  try {
    value = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ratecast::csvio::ParseError(std::string("config key '") + key +
                                      "': " + e.what());
  }
}

std::vector<ratecast::Shape> parse_shapes(const std::string& spec) {
  if (spec == "all") {
    return {ratecast::Shape::Sharp, ratecast::Shape::Flat,
            ratecast::Shape::Natural};
  }
  if (spec == "sharp") {
    return {ratecast::Shape::Sharp};
  }
  if (spec == "flat") {
    return {ratecast::Shape::Flat};
  }
  if (spec == "natural") {
    return {ratecast::Shape::Natural};
  }
  throw UsageError("unknown shape '" + spec +
                   "' (expected sharp, flat, natural or all)");
}

std::vector<int> parse_kappas(const std::string& spec) {
  if (spec == "all") {
    return {1, 2, 3, 4, 5, 6, 7, 8};
  }
  std::vector<int> kappas;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    const std::string token =
        spec.substr(start, comma == std::string::npos ? comma : comma - start);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value < 1 ||
        value > 8) {
      throw UsageError("criterion '" + token + "' is not in 1..8");
    }
    kappas.push_back(value);
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  if (kappas.empty()) {
    throw UsageError("no criteria selected");
  }
  return kappas;
}

/// Options shared by every series-driven subcommand.
struct SeriesArgs {
  std::string input;
  std::string column;
  std::size_t frequency = 1;
  std::string shape = "all";
  std::string kappa = "all";
  std::string config_path;
  std::string out;

  CLI::Option* input_opt = nullptr;
  CLI::Option* column_opt = nullptr;
  CLI::Option* frequency_opt = nullptr;
  CLI::Option* shape_opt = nullptr;
  CLI::Option* kappa_opt = nullptr;

  void add_to(CLI::App& cmd) {
    input_opt = cmd.add_option("--input", input, "CSV file with the series");
    column_opt = cmd.add_option(
        "--column", column,
        "value column: header name or 1-based index (default: the last "
        "numeric column)");
    frequency_opt = cmd.add_option("--freq,--frequency", frequency,
                                   "observations per period")
                        ->check(CLI::PositiveNumber);
    shape_opt = cmd.add_option("--shape", shape, "sharp, flat, natural or all")
                    ->check(CLI::IsMember({"sharp", "flat", "natural", "all"}));
    kappa_opt = cmd.add_option("--kappa", kappa,
                               "criterion 1..8, a comma list, or all");
    cmd.add_option("--config", config_path,
                   "JSON config (or a previously emitted report) to rerun");
    cmd.add_option("--out", out, "write the output here (atomically)");
  }

  void merge_config(const json& cfg) {
    merge_key(cfg, "input", input_opt, input);
    merge_key(cfg, "column", column_opt, column);
    merge_key(cfg, "frequency", frequency_opt, frequency);
    merge_key(cfg, "shape", shape_opt, shape);
    merge_key(cfg, "kappa", kappa_opt, kappa);
  }

  json config_json(const char* command) const {
    return json{{"command", command}, {"input", absolute_path(input)},
                {"column", column},   {"frequency", frequency},
                {"shape", shape},     {"kappa", kappa}};
  }

  ratecast::TimeSeries load() const {
    if (input.empty()) {
      throw UsageError("--input is required (directly or via --config)");
    }
    return ratecast::csvio::read_series(input, column, frequency);
  }
};

json step_json(const ratecast::StepRecord& step) {
  return json{{"index", step.index},
              {"actual", step.actual},
              {"forecast", step.forecast},
              {"residual", step.residual},
              {"family", ratecast::to_string(step.family_used)},
              {"lambda_star", step.lambda_star},
              {"alpha", step.alpha_used}};
}

json report_json(const ratecast::BacktestReport& report) {
  json steps = json::array();
  for (const ratecast::StepRecord& step : report.steps) {
    steps.push_back(step_json(step));
  }
  return json{{"skipped", report.skipped},
              {"sae", report.sae},
              {"sse", report.sse},
              {"steps", std::move(steps)}};
}

/// Walk-forward backtest of the fixed-exponent model over every feasible
/// prefix (targets 5..n), mirroring the unpowered backtest's schedule.
ratecast::BacktestReport fixed_alpha_backtest(ratecast::Shape shape,
                                              const ratecast::TimeSeries& x,
                                              int kappa, double alpha) {
  if (x.size() < 5) {
    throw ratecast::InsufficientData(
        "walk-forward backtest needs at least 5 observations");
  }
  ratecast::BacktestReport report;
  report.skipped = {3, 4};
  for (std::size_t i = 4; i < x.size(); ++i) {
    const ratecast::ForecastDecision fc = ratecast::alpha_power_forecast(
        shape, ratecast::truncate(x, i), ratecast::truncate(x, i), kappa,
        alpha);
    ratecast::StepRecord step;
    step.index = i + 1;
    step.actual = x.at(i + 1);
    step.forecast = fc.value;
    step.residual = fc.value - step.actual;
    step.family_used = fc.family_used;
    step.lambda_star = fc.lambda_star;
    step.alpha_used = alpha;
    report.sae += std::fabs(step.residual);
    report.sse += step.residual * step.residual;
    report.steps.push_back(std::move(step));
  }
  return report;
}

// ---------------------------------------------------------------- forecast

struct ForecastArgs {
  SeriesArgs series;
  std::string format = "json";
};

int run_forecast(ForecastArgs& args) {
  if (!args.series.config_path.empty()) {
    args.series.merge_config(load_config(args.series.config_path));
  }
  const auto shapes = parse_shapes(args.series.shape);
  const auto kappas = parse_kappas(args.series.kappa);
  const ratecast::TimeSeries x = args.series.load();

  struct Cell {
    ratecast::Shape shape;
    int kappa;
    ratecast::ForecastDecision decision;
  };
  std::vector<Cell> cells;
  cells.reserve(shapes.size() * kappas.size());
  for (const ratecast::Shape shape : shapes) {
    for (const int kappa : kappas) {
      cells.push_back({shape, kappa, ratecast::balanced_forecast(shape, x, x, kappa)});
    }
  }

  if (args.format == "csv") {
    std::string text =
        "shape,kappa,value,family,lambda_star,least_sum,lambda_max,nu\n";
    for (const Cell& cell : cells) {
      text += ratecast::to_string(cell.shape) + "," +
              std::to_string(cell.kappa) + "," +
              format_double(cell.decision.value) + "," +
              ratecast::to_string(cell.decision.family_used) + "," +
              std::to_string(cell.decision.lambda_star) + "," +
              format_double(cell.decision.least_sum) + "," +
              std::to_string(cell.decision.lambda_max) + "," +
              std::to_string(cell.decision.nu) + "\n";
    }
    emit(args.series.out, text);
    return 0;
  }

  json results = json::array();
  for (const Cell& cell : cells) {
    results.push_back(json{{"shape", ratecast::to_string(cell.shape)},
                           {"kappa", cell.kappa},
                           {"value", cell.decision.value},
                           {"family", ratecast::to_string(cell.decision.family_used)},
                           {"lambda_star", cell.decision.lambda_star},
                           {"least_sum", cell.decision.least_sum},
                           {"lambda_max", cell.decision.lambda_max},
                           {"nu", cell.decision.nu}});
  }
  const json report = {{"command", "forecast"},
                       {"config", args.series.config_json("forecast")},
                       {"results", std::move(results)}};
  emit(args.series.out, report.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- backtest

struct BacktestArgs {
  SeriesArgs series;
  std::string power_mode = "none";
  double alpha = 1.0;
  CLI::Option* power_mode_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
};

int run_backtest(BacktestArgs& args) {
  bool have_alpha = args.alpha_opt->count() > 0;
  if (!args.series.config_path.empty()) {
    const json cfg = load_config(args.series.config_path);
    args.series.merge_config(cfg);
    merge_key(cfg, "power_mode", args.power_mode_opt, args.power_mode);
    if (!have_alpha && cfg.contains("alpha")) {
      merge_key(cfg, "alpha", args.alpha_opt, args.alpha);
      have_alpha = true;
    }
  }
  const bool fixed = args.power_mode == "fixed";
  if (fixed && !have_alpha) {
    throw UsageError("--power-mode fixed needs an explicit --alpha");
  }
  const auto shapes = parse_shapes(args.series.shape);
  const auto kappas = parse_kappas(args.series.kappa);
  const ratecast::TimeSeries x = args.series.load();

  json config = args.series.config_json("backtest");
  config["power_mode"] = args.power_mode;
  if (fixed) {
    config["alpha"] = args.alpha;
  }

  json results = json::array();
  for (const ratecast::Shape shape : shapes) {
    for (const int kappa : kappas) {
      json cell;
      if (args.power_mode == "none") {
        cell = report_json(ratecast::backtest_balanced(shape, x, x, kappa));
      } else if (fixed) {
        cell = report_json(fixed_alpha_backtest(shape, x, kappa, args.alpha));
        cell["alpha"] = args.alpha;
      } else {
        const ratecast::PowerMode mode = args.power_mode == "mean-opt"
                                             ? ratecast::PowerMode::MeanOptimized
                                             : ratecast::PowerMode::LatestOptimized;
        const ratecast::AlphaBacktestResult result =
            ratecast::backtest_alpha_optimized(shape, x, x, kappa, mode);
        cell = report_json(result.report);
        cell["alpha_trace"] = result.trace.alphas;
      }
      cell["shape"] = ratecast::to_string(shape);
      cell["kappa"] = kappa;
      cell["power_mode"] = args.power_mode;
      results.push_back(std::move(cell));
    }
  }
  const json report = {{"command", "backtest"},
                       {"config", std::move(config)},
                       {"results", std::move(results)}};
  emit(args.series.out, report.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- seasonal

struct SeasonalArgs {
  SeriesArgs series;
  std::string power_mode = "stochastic";
  std::size_t draws = 100;
  std::uint64_t seed = 0;
  CLI::Option* power_mode_opt = nullptr;
  CLI::Option* draws_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

int run_seasonal(SeasonalArgs& args) {
  if (!args.series.config_path.empty()) {
    const json cfg = load_config(args.series.config_path);
    args.series.merge_config(cfg);
    merge_key(cfg, "power_mode", args.power_mode_opt, args.power_mode);
    merge_key(cfg, "draws", args.draws_opt, args.draws);
    merge_key(cfg, "seed", args.seed_opt, args.seed);
  }
  const auto shapes = parse_shapes(args.series.shape);
  const auto kappas = parse_kappas(args.series.kappa);
  const ratecast::TimeSeries x = args.series.load();

  json config = args.series.config_json("seasonal");
  config["power_mode"] = args.power_mode;
  config["draws"] = args.draws;
  config["seed"] = args.seed;

  json results = json::array();
  for (const ratecast::Shape shape : shapes) {
    for (const int kappa : kappas) {
      const ratecast::SeasonalBacktestReport report =
          args.power_mode == "stochastic"
              ? ratecast::seasonal_stochastic_backtest(shape, kappa, x, x,
                                                       args.draws, args.seed)
              : ratecast::seasonal_fixed_backtest(
                    shape, kappa, x, x,
                    ratecast::SeasonalAlpha::ones(x.frequency));
      json steps = json::array();
      for (const ratecast::SeasonalStep& step : report.steps) {
        steps.push_back(json{{"period", step.period},
                             {"season", step.season},
                             {"index", step.index},
                             {"actual", step.actual},
                             {"forecast", step.forecast},
                             {"residual", step.residual}});
      }
      json period_sae = json::array();
      for (const auto& [period, value] : report.period_sae) {
        period_sae.push_back(json::array({period, value}));
      }
      json period_sse = json::array();
      for (const auto& [period, value] : report.period_sse) {
        period_sse.push_back(json::array({period, value}));
      }
      json alphas = json::array();
      for (const auto& [period, tuple] : report.alphas_used) {
        alphas.push_back(json::array({period, json(tuple.values)}));
      }
      results.push_back(json{{"shape", ratecast::to_string(shape)},
                             {"kappa", kappa},
                             {"skipped_periods", report.skipped_periods},
                             {"sae", report.sae},
                             {"sse", report.sse},
                             {"period_sae", std::move(period_sae)},
                             {"period_sse", std::move(period_sse)},
                             {"alphas", std::move(alphas)},
                             {"steps", std::move(steps)}});
    }
  }
  const json report = {{"command", "seasonal"},
                       {"config", std::move(config)},
                       {"results", std::move(results)}};
  emit(args.series.out, report.dump(2) + "\n");
  return 0;
}

// ----------------------------------------------------------------- compare

struct CompareArgs {
  SeriesArgs series;
  std::vector<std::string> baselines;
  CLI::Option* baselines_opt = nullptr;
};

int run_compare(CompareArgs& args) {
  std::map<std::string, std::string> baselines;
  if (!args.series.config_path.empty()) {
    const json cfg = load_config(args.series.config_path);
    args.series.merge_config(cfg);
    if (args.baselines_opt->count() == 0 && cfg.contains("baselines")) {
      for (const auto& [name, path] : cfg.at("baselines").items()) {
        baselines[name] = path.get<std::string>();
      }
    }
  }
  for (const std::string& spec : args.baselines) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw UsageError("baseline '" + spec + "' is not of the form name=path");
    }
    baselines[spec.substr(0, eq)] = spec.substr(eq + 1);
  }
  const auto shapes = parse_shapes(args.series.shape);
  const auto kappas = parse_kappas(args.series.kappa);
  if (shapes.size() != 1 || kappas.size() != 1) {
    throw UsageError("compare needs exactly one --shape and one --kappa");
  }
  if (baselines.empty()) {
    throw UsageError("compare needs at least one --baseline name=path");
  }
  const ratecast::TimeSeries x = args.series.load();

  const ratecast::BacktestReport model =
      ratecast::backtest_balanced(shapes[0], x, x, kappas[0]);
  std::vector<double> actuals;
  std::vector<std::pair<std::string, std::vector<double>>> contenders;
  std::vector<double> model_forecasts;
  actuals.reserve(model.steps.size());
  model_forecasts.reserve(model.steps.size());
  for (const ratecast::StepRecord& step : model.steps) {
    actuals.push_back(step.actual);
    model_forecasts.push_back(step.forecast);
  }
  contenders.emplace_back("model", std::move(model_forecasts));

  json contenders_json = json::array();
  contenders_json.push_back(
      json{{"name", "model"}, {"sae", model.sae}, {"sse", model.sse}});

  for (const auto& [name, path] : baselines) {
    std::map<std::size_t, double> by_index;
    for (const auto& [index, value] : ratecast::csvio::read_baseline(path)) {
      by_index[index] = value;
    }
    std::vector<double> forecasts;
    forecasts.reserve(model.steps.size());
    double sae = 0.0;
    double sse = 0.0;
    for (const ratecast::StepRecord& step : model.steps) {
      const auto hit = by_index.find(step.index);
      if (hit == by_index.end()) {
        throw ratecast::AlignmentError("baseline '" + name +
                                       "' is missing target index " +
                                       std::to_string(step.index));
      }
      forecasts.push_back(hit->second);
      const double residual = hit->second - step.actual;
      sae += std::fabs(residual);
      sse += residual * residual;
    }
    contenders.emplace_back(name, std::move(forecasts));
    contenders_json.push_back(json{{"name", name}, {"sae", sae}, {"sse", sse}});
  }

  const std::map<std::string, std::size_t> wins =
      ratecast::win_counts(contenders, actuals);

  json config = args.series.config_json("compare");
  json baselines_cfg = json::object();
  for (const auto& [name, path] : baselines) {
    baselines_cfg[name] = absolute_path(path);
  }
  config["baselines"] = std::move(baselines_cfg);

  const json report = {{"command", "compare"},
                       {"config", std::move(config)},
                       {"contenders", std::move(contenders_json)},
                       {"wins", wins}};
  emit(args.series.out, report.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------------ sweeps

struct SweepDeltaArgs {
  SeriesArgs series;
  std::size_t delta_min = 4;
  std::size_t delta_max = 0;
  std::size_t eval_steps = 0;
};

int run_sweep_delta(SweepDeltaArgs& args) {
  if (args.delta_max == 0) {
    throw UsageError("--delta-max is required");
  }
  if (args.delta_min < 4) {
    throw UsageError("--delta-min must be at least 4");
  }
  if (args.delta_max < args.delta_min) {
    throw UsageError("--delta-max must not be below --delta-min");
  }
  const auto shapes = parse_shapes(args.series.shape);
  const auto kappas = parse_kappas(args.series.kappa);
  const ratecast::TimeSeries x = args.series.load();

  std::string text = "delta,shape,kappa,sae,sse\n";
  for (std::size_t delta = args.delta_min; delta <= args.delta_max; ++delta) {
    for (const ratecast::Shape shape : shapes) {
      for (const int kappa : kappas) {
        const ratecast::BacktestReport report =
            ratecast::backtest_delta(shape, x, x, kappa, delta, args.eval_steps);
        text += std::to_string(delta) + "," + ratecast::to_string(shape) +
                "," + std::to_string(kappa) + "," + format_double(report.sae) +
                "," + format_double(report.sse) + "\n";
      }
    }
  }
  emit(args.series.out, text);
  return 0;
}

struct SweepAlphaArgs {
  SeriesArgs series;
  std::string alpha_grid = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
};

int run_sweep_alpha(SweepAlphaArgs& args) {
  std::vector<double> grid;
  std::size_t start = 0;
  while (start <= args.alpha_grid.size()) {
    const std::size_t comma = args.alpha_grid.find(',', start);
    const std::string token = args.alpha_grid.substr(
        start, comma == std::string::npos ? comma : comma - start);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() ||
        !(value >= 0.0 && value <= 1.0)) {
      throw UsageError("grid exponent '" + token + "' is not in [0, 1]");
    }
    grid.push_back(value);
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  if (grid.empty()) {
    throw UsageError("--alpha-grid selects no exponents");
  }
  const auto shapes = parse_shapes(args.series.shape);
  const auto kappas = parse_kappas(args.series.kappa);
  const ratecast::TimeSeries x = args.series.load();

  std::string text = "alpha,shape,kappa,sae,sse\n";
  for (const double alpha : grid) {
    for (const ratecast::Shape shape : shapes) {
      for (const int kappa : kappas) {
        const ratecast::BacktestReport report =
            fixed_alpha_backtest(shape, x, kappa, alpha);
        text += format_double(alpha) + "," + ratecast::to_string(shape) + "," +
                std::to_string(kappa) + "," + format_double(report.sae) + "," +
                format_double(report.sse) + "\n";
      }
    }
  }
  emit(args.series.out, text);
  return 0;
}

// -------------------------------------------------------------- stockscore

struct StockScoreArgs {
  std::vector<std::string> inputs;
  std::size_t delta = 92;
  std::size_t eval_steps = 100;
  std::string out_dir;
};

const char* const kShapeNames[3] = {"sharp", "flat", "natural"};
const char* const kPairingNames[3] = {"cc", "co", "cm"};

int run_stockscore(StockScoreArgs& args) {
  if (args.inputs.empty()) {
    throw UsageError("--input is required");
  }
  if (args.out_dir.empty()) {
    throw UsageError("--out-dir is required");
  }
  if (args.delta < 4) {
    throw UsageError("--delta must be at least 4");
  }
  if (args.eval_steps < 1) {
    throw UsageError("--eval-steps must be at least 1");
  }
  std::vector<fs::path> files(args.inputs.begin(), args.inputs.end());
  ratecast::csvio::OhlcBatch batch = ratecast::csvio::read_ohlc_batch(files);

  // Score accepted tickers in parallel; a ticker whose history is too short
  // for the window is rejected rather than failing the batch.
  std::vector<std::optional<ratecast::ScoreMatrix>> scored(
      batch.accepted.size());
  std::vector<std::string> failures(batch.accepted.size());
  ratecast::parallel_for(batch.accepted.size(), [&](std::size_t k) {
    try {
      scored[k] =
          ratecast::score_matrix(batch.accepted[k], args.delta, args.eval_steps);
    } catch (const ratecast::InsufficientData& e) {
      failures[k] = e.what();
    }
  });
  std::vector<ratecast::ScoreMatrix> matrices;
  for (std::size_t k = 0; k < batch.accepted.size(); ++k) {
    if (scored[k]) {
      matrices.push_back(std::move(*scored[k]));
    } else {
      batch.rejected.push_back({batch.accepted[k].ticker, failures[k]});
    }
  }
  std::sort(batch.rejected.begin(), batch.rejected.end(),
            [](const ratecast::csvio::RejectedTicker& a,
               const ratecast::csvio::RejectedTicker& b) {
              return a.ticker < b.ticker;
            });

  // Per-ticker score table.
  std::string csv = "ticker";
  for (const char* shape : kShapeNames) {
    for (const char* pairing : kPairingNames) {
      for (int kappa = 1; kappa <= 8; ++kappa) {
        csv += std::string(",") + shape + "_" + pairing + "_k" +
               std::to_string(kappa);
      }
    }
  }
  for (int kappa = 1; kappa <= 8; ++kappa) {
    csv += ",best_k" + std::to_string(kappa);
  }
  csv += ",best\n";
  for (const ratecast::ScoreMatrix& matrix : matrices) {
    csv += matrix.ticker;
    for (const auto& by_pairing : matrix.scores) {
      for (const auto& by_kappa : by_pairing) {
        for (const int score : by_kappa) {
          csv += "," + std::to_string(score);
        }
      }
    }
    const ratecast::MaxScores best = ratecast::max_scores(matrix);
    for (const int score : best.per_kappa) {
      csv += "," + std::to_string(score);
    }
    csv += "," + std::to_string(best.overall) + "\n";
  }

  // Aggregate distribution summary and per-criterion winner tallies.
  json summary = json::object();
  json wins = json::object();
  if (!matrices.empty()) {
    for (std::size_t shape = 0; shape < 3; ++shape) {
      for (std::size_t pairing = 0; pairing < 3; ++pairing) {
        const std::string model_key =
            std::string(kShapeNames[shape]) + "_" + kPairingNames[pairing];
        json by_kappa = json::object();
        for (std::size_t k = 0; k < 8; ++k) {
          std::vector<double> sample;
          sample.reserve(matrices.size());
          for (const ratecast::ScoreMatrix& matrix : matrices) {
            sample.push_back(
                static_cast<double>(matrix.scores[shape][pairing][k]));
          }
          const ratecast::SummaryStats stats = ratecast::summarize(sample);
          by_kappa["k" + std::to_string(k + 1)] =
              json{{"min", stats.min}, {"q1", stats.q1},
                   {"median", stats.median}, {"mean", stats.mean},
                   {"q3", stats.q3},   {"max", stats.max},
                   {"sd", stats.sd}};
        }
        summary[model_key] = std::move(by_kappa);
        wins[model_key] = ratecast::criterion_wins(
            matrices, static_cast<ratecast::Shape>(shape), pairing);
      }
    }
  }

  json rejected = json::array();
  for (const ratecast::csvio::RejectedTicker& r : batch.rejected) {
    rejected.push_back(json{{"ticker", r.ticker}, {"reason", r.reason}});
  }
  json inputs = json::array();
  for (const std::string& input : args.inputs) {
    inputs.push_back(absolute_path(input));
  }
  const json aggregate = {
      {"command", "stockscore"},
      {"config", json{{"command", "stockscore"},
                      {"input", std::move(inputs)},
                      {"delta", args.delta},
                      {"eval_steps", args.eval_steps}}},
      {"rejected", std::move(rejected)},
      {"summary", std::move(summary)},
      {"criterion_wins", std::move(wins)}};

  fs::create_directories(args.out_dir);
  ratecast::csvio::write_text_atomic(fs::path(args.out_dir) / "scores.csv",
                                     csv);
  ratecast::csvio::write_text_atomic(fs::path(args.out_dir) / "aggregate.json",
                                     aggregate.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rate-window forecasting and walk-forward backtesting"};
  app.require_subcommand(1);

  ForecastArgs forecast_args;
  CLI::App* forecast_cmd = app.add_subcommand(
      "forecast", "one-step forecasts for a grid of shapes and criteria");
  forecast_args.series.add_to(*forecast_cmd);
  forecast_cmd->add_option("--format", forecast_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  BacktestArgs backtest_args;
  CLI::App* backtest_cmd = app.add_subcommand(
      "backtest", "walk-forward backtest over every feasible prefix");
  backtest_args.series.add_to(*backtest_cmd);
  backtest_args.power_mode_opt =
      backtest_cmd
          ->add_option("--power-mode", backtest_args.power_mode,
                       "none, fixed, mean-opt or latest-opt")
          ->check(CLI::IsMember({"none", "fixed", "mean-opt", "latest-opt"}));
  backtest_args.alpha_opt = backtest_cmd->add_option(
      "--alpha", backtest_args.alpha, "exponent in [0, 1] for --power-mode fixed");

  SeasonalArgs seasonal_args;
  CLI::App* seasonal_cmd = app.add_subcommand(
      "seasonal", "seasonal walk-forward backtest with exponent tuples");
  seasonal_args.series.add_to(*seasonal_cmd);
  seasonal_args.power_mode_opt =
      seasonal_cmd
          ->add_option("--power-mode", seasonal_args.power_mode,
                       "stochastic or none")
          ->check(CLI::IsMember({"stochastic", "none"}));
  seasonal_args.draws_opt = seasonal_cmd->add_option(
      "--draws", seasonal_args.draws, "stochastic candidates per target period");
  seasonal_args.seed_opt =
      seasonal_cmd->add_option("--seed", seasonal_args.seed, "random seed");

  CompareArgs compare_args;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "tally wins of one model against imported baselines");
  compare_args.series.add_to(*compare_cmd);
  compare_args.baselines_opt = compare_cmd->add_option(
      "--baseline", compare_args.baselines,
      "name=path of a baseline forecast CSV (repeatable)");

  SweepDeltaArgs sweep_delta_args;
  CLI::App* sweep_delta_cmd = app.add_subcommand(
      "sweep-delta", "trailing-window size sweep (CSV output)");
  sweep_delta_args.series.add_to(*sweep_delta_cmd);
  sweep_delta_cmd->add_option("--delta-min", sweep_delta_args.delta_min,
                              "smallest trailing window (>= 4)");
  sweep_delta_cmd->add_option("--delta-max", sweep_delta_args.delta_max,
                              "largest trailing window");
  sweep_delta_cmd->add_option("--eval-steps", sweep_delta_args.eval_steps,
                              "evaluate only the last N targets (0 = all)");

  SweepAlphaArgs sweep_alpha_args;
  CLI::App* sweep_alpha_cmd = app.add_subcommand(
      "sweep-alpha", "fixed-exponent sweep (CSV output)");
  sweep_alpha_args.series.add_to(*sweep_alpha_cmd);
  sweep_alpha_cmd->add_option("--alpha-grid", sweep_alpha_args.alpha_grid,
                              "comma-separated exponents in [0, 1]");

  StockScoreArgs stockscore_args;
  CLI::App* stockscore_cmd = app.add_subcommand(
      "stockscore", "interval hit scoring of daily-bar histories");
  stockscore_cmd->add_option("--input", stockscore_args.inputs,
                             "daily-bar CSV files (repeatable)");
  stockscore_cmd->add_option("--delta", stockscore_args.delta,
                             "trailing window in days");
  stockscore_cmd->add_option("--eval-steps", stockscore_args.eval_steps,
                             "evaluation days per ticker");
  stockscore_cmd->add_option("--out-dir", stockscore_args.out_dir,
                             "directory for scores.csv and aggregate.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (forecast_cmd->parsed()) {
      return run_forecast(forecast_args);
    }
    if (backtest_cmd->parsed()) {
      return run_backtest(backtest_args);
    }
    if (seasonal_cmd->parsed()) {
      return run_seasonal(seasonal_args);
    }
    if (compare_cmd->parsed()) {
      return run_compare(compare_args);
    }
    if (sweep_delta_cmd->parsed()) {
      return run_sweep_delta(sweep_delta_args);
    }
    if (sweep_alpha_cmd->parsed()) {
      return run_sweep_alpha(sweep_alpha_args);
    }
    if (stockscore_cmd->parsed()) {
      return run_stockscore(stockscore_args);
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ratecast::csvio::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ratecast::csvio::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ratecast::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
