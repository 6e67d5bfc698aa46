#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "loadcast/eval.hpp"

namespace loadcast {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Building blocks

inline json to_json(const NormalizationSpec& n) {
  return json{{"p_min", n.p_min}, {"p_max", n.p_max}};
}

inline NormalizationSpec norm_from_json(const json& j) {
  return NormalizationSpec{j.at("p_min").get<double>(), j.at("p_max").get<double>()};
}

inline json to_json(const WeatherNorms& w) {
  return json{{"temperature", to_json(w.temperature)},
              {"humidity", to_json(w.humidity)},
              {"wind_speed", to_json(w.wind_speed)},
              {"wind_chill", to_json(w.wind_chill)}};
}

inline WeatherNorms weather_norms_from_json(const json& j) {
  return WeatherNorms{norm_from_json(j.at("temperature")), norm_from_json(j.at("humidity")),
                      norm_from_json(j.at("wind_speed")), norm_from_json(j.at("wind_chill"))};
}

inline json to_json(const TrainConfig& c) {
  return json{{"learning_rate", c.learning_rate},
              {"max_epochs", c.max_epochs},
              {"error_target", c.error_target},
              {"seed", c.seed},
              {"momentum", c.momentum}};
}

inline TrainConfig train_config_from_json(const json& j) {
  TrainConfig c;
  c.learning_rate = j.at("learning_rate").get<double>();
  c.max_epochs = j.at("max_epochs").get<int>();
  c.error_target = j.at("error_target").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.momentum = j.at("momentum").get<double>();
  return c;
}

inline json to_json(const DenseNet& n) {
  return json{{"in", n.in},
              {"hidden", n.hidden},
              {"out", n.out},
              {"hidden_activation",
               n.hidden_act == HiddenActivation::tanh_sigmoid ? "tanh" : "logsig"},
              {"output_activation", n.out_act == OutputActivation::linear ? "linear" : "logistic"},
              {"w1", n.w1},
              {"b1", n.b1},
              {"w2", n.w2},
              {"b2", n.b2}};
}

inline DenseNet dense_from_json(const json& j) {
  DenseNet n;
  n.in = j.at("in").get<int>();
  n.hidden = j.at("hidden").get<int>();
  n.out = j.at("out").get<int>();
  n.hidden_act = j.at("hidden_activation").get<std::string>() == "tanh"
                     ? HiddenActivation::tanh_sigmoid
                     : HiddenActivation::log_sigmoid;
  n.out_act = j.at("output_activation").get<std::string>() == "linear" ? OutputActivation::linear
                                                                       : OutputActivation::logistic;
  n.w1 = j.at("w1").get<std::vector<double>>();
  n.b1 = j.at("b1").get<std::vector<double>>();
  n.w2 = j.at("w2").get<std::vector<double>>();
  n.b2 = j.at("b2").get<std::vector<double>>();
  return n;
}

inline json to_json(const ElmanNet& n) {
  return json{{"in", n.in},   {"hidden", n.hidden}, {"out", n.out}, {"w1", n.w1}, {"b1", n.b1},
              {"wc", n.wc},   {"w2", n.w2},         {"b2", n.b2}};
}

inline ElmanNet elman_from_json(const json& j) {
  ElmanNet n;
  n.in = j.at("in").get<int>();
  n.hidden = j.at("hidden").get<int>();
  n.out = j.at("out").get<int>();
  n.w1 = j.at("w1").get<std::vector<double>>();
  n.b1 = j.at("b1").get<std::vector<double>>();
  n.wc = j.at("wc").get<std::vector<double>>();
  n.w2 = j.at("w2").get<std::vector<double>>();
  n.b2 = j.at("b2").get<std::vector<double>>();
  return n;
}

inline json to_json(const RbfNet& n) {
  return json{{"in", n.in},           {"num_centers", n.num_centers},
              {"out", n.out},         {"centers", n.centers},
              {"widths", n.widths},   {"w", n.w},
              {"b", n.b},             {"ridge_rescued", n.ridge_rescued}};
}

inline RbfNet rbf_from_json(const json& j) {
  RbfNet n;
  n.in = j.at("in").get<int>();
  n.num_centers = j.at("num_centers").get<int>();
  n.out = j.at("out").get<int>();
  n.centers = j.at("centers").get<std::vector<double>>();
  n.widths = j.at("widths").get<std::vector<double>>();
  n.w = j.at("w").get<std::vector<double>>();
  n.b = j.at("b").get<std::vector<double>>();
  n.ridge_rescued = j.at("ridge_rescued").get<bool>();
  return n;
}

// The Hopfield weight matrix is a pure function of the stored patterns, so
// only the patterns and codec are persisted.
inline json to_json(const HopfieldForecaster& h) {
  return json{{"levels", h.codec.levels}, {"seed", h.seed}, {"patterns", h.stored}};
}

inline HopfieldForecaster hopfield_from_json(const json& j) {
  HopfieldForecaster h;
  h.codec.levels = j.at("levels").get<int>();
  h.seed = j.at("seed").get<std::uint64_t>();
  h.stored = j.at("patterns").get<std::vector<std::vector<int>>>();
  h.net = hopfield_store(h.stored);
  return h;
}

inline json to_json(const MembershipFunction& mf) {
  if (const auto* t = std::get_if<Triangular>(&mf))
    return json{{"shape", "triangular"}, {"params", {t->a, t->b, t->c}}};
  if (const auto* t = std::get_if<Trapezoidal>(&mf))
    return json{{"shape", "trapezoidal"}, {"params", {t->a, t->b, t->c, t->d}}};
  if (const auto* g = std::get_if<Gaussian>(&mf))
    return json{{"shape", "gaussian"}, {"params", {g->center, g->sigma}}};
  const auto& b = std::get<Bell>(mf);
  return json{{"shape", "bell"}, {"params", {b.center, b.width, b.slope}}};
}

inline MembershipFunction mf_from_json(const json& j) {
  const std::string shape = j.at("shape").get<std::string>();
  const auto p = j.at("params").get<std::vector<double>>();
  MembershipFunction mf;
  if (shape == "triangular")
    mf = Triangular{p.at(0), p.at(1), p.at(2)};
  else if (shape == "trapezoidal")
    mf = Trapezoidal{p.at(0), p.at(1), p.at(2), p.at(3)};
  else if (shape == "gaussian")
    mf = Gaussian{p.at(0), p.at(1)};
  else if (shape == "bell")
    mf = Bell{p.at(0), p.at(1), p.at(2)};
  else
    raise(Errc::schema_mismatch, "unknown membership shape '" + shape + "'");
  validate_mf(mf);
  return mf;
}

inline json to_json(const LinguisticVariable& v) {
  json terms = json::array();
  for (const auto& [label, mf] : v.terms) {
    json t = to_json(mf);
    t["label"] = label;
    terms.push_back(std::move(t));
  }
  return json{{"name", v.name}, {"lo", v.lo}, {"hi", v.hi}, {"terms", std::move(terms)}};
}

inline LinguisticVariable variable_from_json(const json& j) {
  LinguisticVariable v;
  v.name = j.at("name").get<std::string>();
  v.lo = j.at("lo").get<double>();
  v.hi = j.at("hi").get<double>();
  for (const json& t : j.at("terms"))
    v.terms.emplace_back(t.at("label").get<std::string>(), mf_from_json(t));
  return v;
}

inline MfShape mf_shape_from_name(const std::string& name) {
  if (name == "triangular") return MfShape::triangular;
  if (name == "trapezoidal") return MfShape::trapezoidal;
  if (name == "gaussian") return MfShape::gaussian;
  if (name == "bell") return MfShape::bell;
  raise(Errc::invalid_config, "unknown membership shape '" + name + "'");
}

inline json to_json(const FisModel& m) {
  json vars = json::array();
  for (const auto& v : m.input_vars) vars.push_back(to_json(v));
  json rules = json::array();
  for (const auto& r : m.rules) rules.push_back(format_rule(r));
  return json{{"shape", mf_shape_name(m.shape)},
              {"input_vars", std::move(vars)},
              {"output_var", to_json(m.output_load)},
              {"rules", std::move(rules)}};
}

inline FisModel fis_from_json(const json& j) {
  FisModel m;
  m.shape = mf_shape_from_name(j.at("shape").get<std::string>());
  for (const json& v : j.at("input_vars")) m.input_vars.push_back(variable_from_json(v));
  m.output_load = variable_from_json(j.at("output_var"));
  std::string text;
  for (const json& r : j.at("rules")) {
    text += r.get<std::string>();
    text += '\n';
  }
  m.rules = parse_rules(text).mamdani;
  return m;
}

inline json to_json(const FnnModel& m) {
  json vars = json::array();
  for (const auto& v : m.feature_vars) vars.push_back(to_json(v));
  return json{{"feature_vars", std::move(vars)},
              {"core", to_json(m.core)},
              {"load_norm", to_json(m.load_norm)}};
}

inline FnnModel fnn_from_json(const json& j) {
  FnnModel m;
  for (const json& v : j.at("feature_vars")) m.feature_vars.push_back(variable_from_json(v));
  m.core = dense_from_json(j.at("core"));
  m.load_norm = norm_from_json(j.at("load_norm"));
  return m;
}

// ---------------------------------------------------------------------------
// Model file

struct ModelFile {
  std::string kind;  // mlp | elman | rbfn | hopfield | fis | fnn
  std::int64_t train_start_day = 0;
  std::int64_t train_end_day = 0;  // inclusive
  NormalizationSpec load_norm;
  WeatherNorms weather_norms;
  TrainConfig train_config;
  std::optional<DenseNet> dense;
  std::optional<ElmanNet> elman;
  std::optional<RbfNet> rbf;
  std::optional<HopfieldForecaster> hopfield;
  std::optional<FisModel> fis;
  std::optional<FnnModel> fnn;
};

inline json to_json(const ModelFile& f) {
  json model;
  if (f.kind == "mlp")
    model = to_json(*f.dense);
  else if (f.kind == "elman")
    model = to_json(*f.elman);
  else if (f.kind == "rbfn")
    model = to_json(*f.rbf);
  else if (f.kind == "hopfield")
    model = to_json(*f.hopfield);
  else if (f.kind == "fis")
    model = to_json(*f.fis);
  else if (f.kind == "fnn")
    model = to_json(*f.fnn);
  else
    raise(Errc::invalid_config, "unknown model kind '" + f.kind + "'");
  return json{{"format", "loadcast-model"},
              {"version", 1},
              {"kind", f.kind},
              {"train_range", {{"start", format_date(f.train_start_day)},
                               {"end", format_date(f.train_end_day)}}},
              {"load_norm", to_json(f.load_norm)},
              {"weather_norms", to_json(f.weather_norms)},
              {"train_config", to_json(f.train_config)},
              {"model", std::move(model)}};
}

inline ModelFile model_file_from_json(const json& j) {
  if (j.at("format").get<std::string>() != "loadcast-model")
    raise(Errc::schema_mismatch, "not a loadcast model file");
  if (j.at("version").get<int>() != 1)
    raise(Errc::schema_mismatch, "unsupported model file version");
  ModelFile f;
  f.kind = j.at("kind").get<std::string>();
  const auto start = parse_date(j.at("train_range").at("start").get<std::string>());
  const auto end = parse_date(j.at("train_range").at("end").get<std::string>());
  if (!start || !end) raise(Errc::schema_mismatch, "bad train_range dates");
  f.train_start_day = *start;
  f.train_end_day = *end;
  f.load_norm = norm_from_json(j.at("load_norm"));
  f.weather_norms = weather_norms_from_json(j.at("weather_norms"));
  f.train_config = train_config_from_json(j.at("train_config"));
  const json& model = j.at("model");
  if (f.kind == "mlp")
    f.dense = dense_from_json(model);
  else if (f.kind == "elman")
    f.elman = elman_from_json(model);
  else if (f.kind == "rbfn")
    f.rbf = rbf_from_json(model);
  else if (f.kind == "hopfield")
    f.hopfield = hopfield_from_json(model);
  else if (f.kind == "fis")
    f.fis = fis_from_json(model);
  else if (f.kind == "fnn")
    f.fnn = fnn_from_json(model);
  else
    raise(Errc::schema_mismatch, "unknown model kind '" + f.kind + "'");
  return f;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::io_failure, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) raise(Errc::io_failure, "write to '" + path + "' failed");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_failure, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void save_model_file(const ModelFile& f, const std::string& path) {
  write_text_file(path, to_json(f).dump(2) + "\n");
}

inline ModelFile load_model_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    raise(Errc::schema_mismatch, std::string("model file parse error: ") + e.what());
  }
  return model_file_from_json(j);
}

inline std::unique_ptr<Forecaster> make_forecaster(const ModelFile& f) {
  if (f.kind == "mlp") return std::make_unique<MlpForecaster>(*f.dense, f.load_norm);
  if (f.kind == "elman") return std::make_unique<ElmanForecaster>(*f.elman, f.load_norm);
  if (f.kind == "rbfn") return std::make_unique<RbfForecaster>(*f.rbf, f.load_norm);
  if (f.kind == "hopfield") return std::make_unique<HopfieldWrapper>(*f.hopfield, f.load_norm);
  if (f.kind == "fis") return std::make_unique<FisForecaster>(*f.fis);
  if (f.kind == "fnn") return std::make_unique<FnnForecaster>(*f.fnn);
  raise(Errc::invalid_config, "unknown model kind '" + f.kind + "'");
}

// ---------------------------------------------------------------------------
// Report JSON

inline json to_json(const ForecastReport& r) {
  json hours = json::array();
  for (const HourRow& h : r.per_hour)
    hours.push_back(json{{"timestamp", format_hour(h.timestamp)},
                         {"actual_mw", h.actual_mw},
                         {"predicted_mw", h.predicted_mw}});
  json days = json::array();
  for (const DayRow& d : r.per_day)
    days.push_back(json{{"date", format_date(d.day)},
                        {"daytype", daytype_name(d.daytype)},
                        {"mape_pct", d.mape_pct},
                        {"map_pct", d.map_pct}});
  return json{{"model", r.model_name},
              {"map_denominator",
               r.map_denominator == MapDenominator::predicted ? "predicted" : "actual"},
              {"per_hour", std::move(hours)},
              {"per_day", std::move(days)},
              {"overall", {{"mape_pct", r.overall_mape}, {"map_pct", r.overall_map}}}};
}

}  // namespace loadcast
