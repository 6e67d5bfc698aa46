// loadcast command line: synthetic data generation, model training,
// forecasting and model comparison over hourly load series.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loadcast/loadcast.hpp"

namespace fs = std::filesystem;
using namespace loadcast;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_data = 2;
constexpr int exit_not_converged = 3;
constexpr int exit_io = 4;

std::int64_t parse_date_or_fail(const std::string& text, const char* what) {
  const auto day = parse_date(text);
  if (!day) raise(Errc::invalid_config, std::string(what) + ": bad date '" + text + "'");
  return *day;
}

LoadDataset load_dataset(const std::string& data_path, const std::string& holidays_path) {
  std::ifstream in(data_path, std::ios::binary);
  if (!in) raise(Errc::io_failure, "cannot open '" + data_path + "'");
  LoadDataset ds = parse_csv(in);
  if (!holidays_path.empty()) {
    std::ifstream hin(holidays_path, std::ios::binary);
    if (!hin) raise(Errc::io_failure, "cannot open '" + holidays_path + "'");
    ds.holidays = parse_holidays(hin);
  }
  return ds;
}

// Restrict the series to [first_day, last_day] full days (inclusive).
LoadDataset slice_days(const LoadDataset& ds, std::int64_t first_day, std::int64_t last_day) {
  LoadDataset out;
  out.holidays = ds.holidays;
  for (const HourlyRecord& r : ds.records) {
    const std::int64_t day = r.timestamp.day();
    if (day >= first_day && day <= last_day) out.records.push_back(r);
  }
  if (out.records.size() < min_dataset_hours)
    raise(Errc::dataset_too_short, "date range " + format_date(first_day) + ".." +
                                       format_date(last_day) + " leaves " +
                                       std::to_string(out.records.size()) + " hours");
  return out;
}

std::vector<Sample> scoped_samples(const LoadDataset& ds, int stride, const NormalizationSpec& norm,
                                   const WeatherNorms& weather, const std::string& scope) {
  std::vector<Sample> samples = build_samples(ds, stride, norm, weather);
  if (scope == "both") return samples;
  const DayType want = scope == "weekday" ? DayType::weekday : DayType::weekend;
  std::vector<Sample> kept;
  for (auto& s : samples)
    if (s.daytype == want) kept.push_back(std::move(s));
  return kept;
}

std::string trace_csv(const TrainTrace& trace) {
  std::string out = "epoch,mse\n";
  char buf[64];
  for (std::size_t i = 0; i < trace.epoch_mse.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i + 1, trace.epoch_mse[i]);
    out += buf;
  }
  return out;
}

struct TrainRange {
  std::int64_t start_day, end_day;
};

// Default split holds out the trailing year (or the trailing fifth of short
// series) for testing.
TrainRange default_train_range(const LoadDataset& ds) {
  const std::int64_t first = ds.records.front().timestamp.day();
  const std::int64_t last = ds.records.back().timestamp.day();
  const std::int64_t num_days = last - first + 1;
  const std::int64_t holdout = std::min<std::int64_t>(365, num_days / 5);
  return TrainRange{first, last - holdout};
}

int cmd_generate(const std::string& out_dir, int days, std::uint64_t seed,
                 const std::string& start, double base_peak, double weekend_dip,
                 double temp_coupling, double noise_std, bool czech) {
  SyntheticConfig cfg;
  cfg.start_day = parse_date_or_fail(start, "--start");
  cfg.num_days = days;
  cfg.base_peak = base_peak;
  cfg.weekend_dip = weekend_dip;
  cfg.temp_coupling = temp_coupling;
  cfg.noise_std = noise_std;
  cfg.seed = seed;
  if (czech) cfg.holiday_dates = czech_holidays(cfg.start_day, cfg.start_day + days - 1);

  const LoadDataset ds = generate_synthetic(cfg);
  fs::create_directories(out_dir);
  write_text_file((fs::path(out_dir) / "load.csv").string(), to_csv(ds));
  write_text_file((fs::path(out_dir) / "holidays.txt").string(), format_holidays(ds.holidays));
  std::cout << ds.records.size() << " rows written to " << out_dir << "/load.csv\n";
  return exit_ok;
}

int cmd_train(const std::string& data_path, const std::string& holidays_path,
              const std::string& kind, const std::string& scope, const std::string& out_dir,
              std::string train_start, std::string train_end, int hidden, int centers, int levels,
              const std::string& mf_name, const TrainConfig& cfg) {
  const LoadDataset full = load_dataset(data_path, holidays_path);
  TrainRange range = default_train_range(full);
  if (!train_start.empty()) range.start_day = parse_date_or_fail(train_start, "--train-start");
  if (!train_end.empty()) range.end_day = parse_date_or_fail(train_end, "--train-end");
  const LoadDataset ds = slice_days(full, range.start_day, range.end_day);

  const NormalizationSpec norm = fit_normalizer(ds);
  const WeatherNorms weather = fit_weather_norms(ds);
  const std::vector<Sample> samples = scoped_samples(ds, 1, norm, weather, scope);
  if (samples.empty()) raise(Errc::insufficient_samples, "no training samples in range");

  TrainingSet pairs;
  pairs.reserve(samples.size());
  for (const Sample& s : samples) pairs.emplace_back(s.input, s.target);

  ModelFile file;
  file.kind = kind;
  file.train_start_day = range.start_day;
  file.train_end_day = range.end_day;
  file.load_norm = norm;
  file.weather_norms = weather;
  file.train_config = cfg;

  fs::create_directories(out_dir);
  bool converged = true;
  if (kind == "mlp") {
    DenseNet net = DenseNet::init(static_cast<int>(input_width), hidden > 0 ? hidden : 24,
                                  static_cast<int>(target_width), cfg.seed);
    const TrainTrace trace = train_backprop(net, pairs, cfg);
    converged = trace.converged;
    file.dense = std::move(net);
    write_text_file((fs::path(out_dir) / "trace.csv").string(), trace_csv(trace));
  } else if (kind == "elman") {
    ElmanNet net = ElmanNet::init(static_cast<int>(input_width), hidden > 0 ? hidden : 60,
                                  static_cast<int>(target_width), cfg.seed);
    const TrainTrace trace = train_backprop(net, pairs, cfg);
    converged = trace.converged;
    file.elman = std::move(net);
    write_text_file((fs::path(out_dir) / "trace.csv").string(), trace_csv(trace));
  } else if (kind == "rbfn") {
    const int c = centers > 0 ? centers : std::min<int>(298, static_cast<int>(pairs.size()));
    file.rbf = rbf_train(pairs, c, cfg);
  } else if (kind == "hopfield") {
    file.hopfield = HopfieldForecaster::fit(samples, ThermoCodec{levels}, cfg.seed);
  } else if (kind == "fis") {
    FisConfig fis_cfg;
    fis_cfg.shape = mf_shape_from_name(mf_name);
    file.fis = fis_train(ds, samples, fis_cfg);
    write_text_file((fs::path(out_dir) / "rules.txt").string(), format_rules(file.fis->rules));
  } else if (kind == "fnn") {
    FnnConfig fnn_cfg;
    fnn_cfg.hidden = hidden > 0 ? hidden : 24;
    fnn_cfg.shape = mf_shape_from_name(mf_name);
    fnn_cfg.train = cfg;
    auto [model, trace] = fnn_train(samples, fnn_cfg, norm);
    converged = trace.converged;
    file.fnn = std::move(model);
    write_text_file((fs::path(out_dir) / "trace.csv").string(), trace_csv(trace));
  } else {
    raise(Errc::invalid_config, "unknown model kind '" + kind + "'");
  }

  const std::string model_path = (fs::path(out_dir) / "model.json").string();
  save_model_file(file, model_path);
  std::cout << kind << " trained on " << samples.size() << " samples ("
            << format_date(range.start_day) << ".." << format_date(range.end_day) << "), model at "
            << model_path << "\n";
  if (!converged) {
    std::cout << "training stopped at max_epochs without reaching error target\n";
    return exit_not_converged;
  }
  return exit_ok;
}

int cmd_forecast(const std::string& model_path, const std::string& data_path,
                 const std::string& holidays_path, const std::string& date,
                 const std::string& out_path) {
  const ModelFile file = load_model_file(model_path);
  const LoadDataset ds = load_dataset(data_path, holidays_path);
  const std::int64_t day = parse_date_or_fail(date, "--date");

  Sample sample;
  sample.target_start = HourStamp{day * 24};
  sample.input = encode_input(ds, sample.target_start, file.load_norm, file.weather_norms);
  sample.target.assign(target_width, 0.0);
  sample.daytype = day_type(day, ds.holidays);

  const auto forecaster = make_forecaster(file);
  const auto rows = forecaster->forecast_mw(ds, {sample});

  std::string csv = "timestamp,predicted_mw\n";
  char buf[64];
  for (std::size_t k = 0; k < rows[0].size(); ++k) {
    std::snprintf(buf, sizeof buf, "%s,%.6f\n",
                  format_hour(sample.target_start + static_cast<std::int64_t>(k)).c_str(),
                  rows[0][k]);
    csv += buf;
  }
  write_text_file(out_path, csv);
  std::cout << rows[0].size() << " hours forecast from " << format_date(day) << " written to "
            << out_path << "\n";
  return exit_ok;
}

struct EvalSpan {
  std::int64_t start_day, end_day;
};

ForecastReport evaluate_one(const ModelFile& file, const LoadDataset& full, const EvalSpan& span,
                            int stride, MapDenominator den) {
  if (span.start_day <= file.train_end_day && file.train_start_day <= span.end_day)
    raise(Errc::overlapping_ranges,
          "test range " + format_date(span.start_day) + ".." + format_date(span.end_day) +
              " overlaps training range " + format_date(file.train_start_day) + ".." +
              format_date(file.train_end_day));
  // Two leading history days so the first target day is span.start_day.
  const LoadDataset ds = slice_days(full, span.start_day - 2, span.end_day);
  const std::vector<Sample> samples =
      build_samples(ds, stride, file.load_norm, file.weather_norms);
  if (samples.empty()) raise(Errc::insufficient_samples, "no evaluation samples in range");
  const auto forecaster = make_forecaster(file);
  return evaluate_model(*forecaster, ds, samples, file.load_norm, den);
}

int cmd_evaluate(const std::vector<std::string>& model_paths, const std::string& data_path,
                 const std::string& holidays_path, const std::string& test_start,
                 const std::string& test_end, const std::string& out_dir, int stride,
                 const std::string& map_den, bool require_compare, bool sweep_mf,
                 const std::string& train_start, const std::string& train_end) {
  const LoadDataset full = load_dataset(data_path, holidays_path);
  const EvalSpan span{parse_date_or_fail(test_start, "--test-start"),
                      parse_date_or_fail(test_end, "--test-end")};
  const MapDenominator den =
      map_den == "actual" ? MapDenominator::actual : MapDenominator::predicted;
  fs::create_directories(out_dir);

  if (sweep_mf) {
    if (train_start.empty() || train_end.empty())
      raise(Errc::invalid_config, "--sweep-mf needs --train-start and --train-end");
    const TrainRange range{parse_date_or_fail(train_start, "--train-start"),
                           parse_date_or_fail(train_end, "--train-end")};
    const LoadDataset train_ds = slice_days(full, range.start_day, range.end_day);
    const NormalizationSpec norm = fit_normalizer(train_ds);
    const WeatherNorms weather = fit_weather_norms(train_ds);
    const std::vector<Sample> train_samples = scoped_samples(train_ds, 1, norm, weather, "both");

    std::string grid = "MF shape sweep: fuzzy inference system\n";
    grid += "Shape        Weekday MAPE (%)  Weekday MAP (%)  Weekend MAPE (%)  Weekend MAP (%)\n";
    for (MfShape shape : {MfShape::triangular, MfShape::trapezoidal, MfShape::gaussian,
                          MfShape::bell}) {
      FisConfig cfg;
      cfg.shape = shape;
      ModelFile file;
      file.kind = "fis";
      file.train_start_day = range.start_day;
      file.train_end_day = range.end_day;
      file.load_norm = norm;
      file.weather_norms = weather;
      file.fis = fis_train(train_ds, train_samples, cfg);
      const ForecastReport report = evaluate_one(file, full, span, stride, den);

      std::vector<double> wa, wp, ea, ep;
      for (std::size_t d = 0; d < report.per_day.size(); ++d) {
        const bool weekday = report.per_day[d].daytype == DayType::weekday;
        for (std::size_t i = d * 24; i < d * 24 + 24; ++i) {
          (weekday ? wa : ea).push_back(report.per_hour[i].actual_mw);
          (weekday ? wp : ep).push_back(report.per_hour[i].predicted_mw);
        }
      }
      char buf[160];
      auto cell = [](const std::vector<double>& a, const std::vector<double>& p, bool map_metric,
                     MapDenominator d) {
        return a.empty() ? std::string("-")
                         : detail::format_cell(map_metric ? map_err(a, p, d) : mape(a, p));
      };
      std::snprintf(buf, sizeof buf, "%-12s %17s %16s %17s %16s\n", mf_shape_name(shape),
                    cell(wa, wp, false, den).c_str(), cell(wa, wp, true, den).c_str(),
                    cell(ea, ep, false, den).c_str(), cell(ea, ep, true, den).c_str());
      grid += buf;
    }
    write_text_file((fs::path(out_dir) / "mf_sweep.txt").string(), grid);
    std::cout << grid;
    return exit_ok;
  }

  if (model_paths.empty()) raise(Errc::invalid_config, "no model files given");
  if (require_compare && model_paths.size() < 2)
    raise(Errc::invalid_config, "compare needs at least two model files");

  std::vector<ForecastReport> reports;
  for (const std::string& path : model_paths) {
    const ModelFile file = load_model_file(path);
    ForecastReport report = evaluate_one(file, full, span, stride, den);
    const std::string stem = fs::path(path).stem().string();
    const fs::path dir = fs::path(out_dir) / (stem == "model" ? report.model_name : stem);
    fs::create_directories(dir);
    write_text_file((dir / "report.json").string(), to_json(report).dump(2) + "\n");
    write_text_file((dir / "plot.csv").string(), report_plot_csv(report));
    std::cout << report.model_name << ": overall MAPE " << report.overall_mape << "%, MAP "
              << report.overall_map << "%\n";
    reports.push_back(std::move(report));
  }

  if (reports.size() >= 2) {
    const std::string text = comparison_to_text(compare_models(reports));
    write_text_file((fs::path(out_dir) / "comparison.txt").string(), text);
    std::cout << "\n" << text;
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loadcast: soft-computing short-term load forecasting toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");

  // generate
  std::string gen_out;
  int gen_days = 365;
  std::uint64_t gen_seed = 1;
  std::string gen_start = "1994-01-01";
  double gen_peak = 1000.0, gen_dip = 0.15, gen_coupling = 5.0, gen_noise = 8.0;
  bool gen_czech = true;
  auto* generate = app.add_subcommand("generate", "write a synthetic load/weather CSV");
  generate->add_option("--out", gen_out, "output directory")
      ->envname("LOADCAST_OUT_DIR")
      ->required();
  generate->add_option("--days", gen_days, "number of days (>= 4)");
  generate->add_option("--seed", gen_seed, "random seed");
  generate->add_option("--start", gen_start, "first day, YYYY-MM-DD");
  generate->add_option("--base-peak", gen_peak, "working-day peak in MW");
  generate->add_option("--weekend-dip", gen_dip, "weekend peak reduction in (0,1)");
  generate->add_option("--temp-coupling", gen_coupling, "MW per degC below 10 degC");
  generate->add_option("--noise-std", gen_noise, "load noise standard deviation, MW");
  generate->add_flag("--czech-holidays,!--no-czech-holidays", gen_czech,
                     "shape fixed-date Czech holidays like Sundays (default on)");

  // train
  std::string tr_data, tr_holidays, tr_kind, tr_scope = "both", tr_out;
  std::string tr_start, tr_end, tr_mf = "gaussian";
  int tr_hidden = 0, tr_centers = 0, tr_levels = 8;
  TrainConfig tr_cfg;
  auto* train = app.add_subcommand("train", "train one model and persist it");
  train->add_option("--data", tr_data, "load CSV")->required();
  train->add_option("--holidays", tr_holidays, "holiday list, one YYYY-MM-DD per line");
  train->add_option("--model", tr_kind, "mlp|elman|rbfn|hopfield|fis|fnn")->required();
  train->add_option("--daytype", tr_scope, "weekday|weekend|both (default both)")
      ->check(CLI::IsMember({"weekday", "weekend", "both"}));
  train->add_option("--out", tr_out, "output directory")
      ->envname("LOADCAST_OUT_DIR")
      ->required();
  train->add_option("--train-start", tr_start, "first training day (default: series start)");
  train->add_option("--train-end", tr_end,
                    "last training day (default: hold out the trailing year)");
  train->add_option("--hidden", tr_hidden, "hidden units (default 24 mlp/fnn, 60 elman)");
  train->add_option("--centers", tr_centers,
                    "rbfn centers (default min(298, sample count))");
  train->add_option("--levels", tr_levels, "hopfield thermometer levels per hour (default 8)");
  train->add_option("--lr", tr_cfg.learning_rate, "learning rate");
  train->add_option("--momentum", tr_cfg.momentum, "momentum in [0,1)");
  train->add_option("--epochs", tr_cfg.max_epochs, "epoch budget");
  train->add_option("--error-target", tr_cfg.error_target, "stop at this epoch MSE");
  train->add_option("--seed", tr_cfg.seed, "random seed");
  train->add_option("--mf", tr_mf, "membership shape: triangular|trapezoidal|gaussian|bell")
      ->check(CLI::IsMember({"triangular", "trapezoidal", "gaussian", "bell"}));

  // forecast
  std::string fc_model, fc_data, fc_holidays, fc_date, fc_out;
  auto* forecast = app.add_subcommand("forecast", "48-hour forecast from a model file");
  forecast->add_option("--model", fc_model, "model.json")->required();
  forecast->add_option("--data", fc_data, "load CSV with history")->required();
  forecast->add_option("--holidays", fc_holidays, "holiday list");
  forecast->add_option("--date", fc_date, "first forecast day, YYYY-MM-DD")->required();
  forecast->add_option("--out", fc_out, "output CSV path")->required();

  // evaluate / compare
  std::string ev_data, ev_holidays, ev_start, ev_end, ev_out, ev_den = "predicted";
  std::string ev_train_start, ev_train_end;
  std::vector<std::string> ev_models;
  int ev_stride = 2;
  bool ev_sweep = false;
  auto add_eval_options = [&](CLI::App* cmd) {
    cmd->add_option("--data", ev_data, "load CSV")->required();
    cmd->add_option("--holidays", ev_holidays, "holiday list");
    cmd->add_option("--test-start", ev_start, "first test day")->required();
    cmd->add_option("--test-end", ev_end, "last test day")->required();
    cmd->add_option("--out", ev_out, "output directory")
        ->envname("LOADCAST_OUT_DIR")
        ->required();
    cmd->add_option("--stride", ev_stride, "days between forecast starts (default 2)");
    cmd->add_option("--map-denominator", ev_den, "predicted|actual (default predicted)")
        ->check(CLI::IsMember({"predicted", "actual"}));
    cmd->add_option("models", ev_models, "model.json files");
  };
  auto* evaluate = app.add_subcommand("evaluate", "evaluate model files on a test range");
  add_eval_options(evaluate);
  auto* compare = app.add_subcommand("compare", "compare >= 2 models, or sweep FIS MF shapes");
  add_eval_options(compare);
  compare->add_flag("--sweep-mf", ev_sweep, "train/evaluate the FIS under every MF shape");
  compare->add_option("--train-start", ev_train_start, "training range for --sweep-mf");
  compare->add_option("--train-end", ev_train_end, "training range for --sweep-mf");

  try {
    app.parse(argc, argv);
    if (generate->parsed())
      return cmd_generate(gen_out, gen_days, gen_seed, gen_start, gen_peak, gen_dip, gen_coupling,
                          gen_noise, gen_czech);
    if (train->parsed())
      return cmd_train(tr_data, tr_holidays, tr_kind, tr_scope, tr_out, tr_start, tr_end,
                       tr_hidden, tr_centers, tr_levels, tr_mf, tr_cfg);
    if (forecast->parsed())
      return cmd_forecast(fc_model, fc_data, fc_holidays, fc_date, fc_out);
    if (evaluate->parsed())
      return cmd_evaluate(ev_models, ev_data, ev_holidays, ev_start, ev_end, ev_out, ev_stride,
                          ev_den, false, false, "", "");
    if (compare->parsed())
      return cmd_evaluate(ev_models, ev_data, ev_holidays, ev_start, ev_end, ev_out, ev_stride,
                          ev_den, !ev_sweep, ev_sweep, ev_train_start, ev_train_end);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::io_failure ? exit_io : exit_data;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_data;
  }
  return exit_usage;
}
