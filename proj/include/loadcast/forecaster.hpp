#pragma once

#include <memory>
#include <string>
#include <vector>

#include "loadcast/elman.hpp"
#include "loadcast/fis.hpp"
#include "loadcast/fnn.hpp"
#include "loadcast/hopfield.hpp"
#include "loadcast/mlp.hpp"
#include "loadcast/rbf.hpp"

namespace loadcast {

// Common surface over the six model kinds: 48 hourly MW values per sample.
// Samples are presented in order; recurrent models may carry state across
// them, so one call covers one evaluation sequence.
class Forecaster {
 public:
  virtual ~Forecaster() = default;
  virtual std::string name() const = 0;
  virtual std::vector<std::vector<double>> forecast_mw(
      const LoadDataset& ds, const std::vector<Sample>& samples) const = 0;
};

namespace detail {

// Raw network outputs are clipped into the normalization range before the
// strict de-normalization.
inline double denorm_clamped(const NormalizationSpec& norm, double v) {
  return denormalize(norm, std::clamp(v, 0.0, 1.0));
}

}  // namespace detail

class MlpForecaster final : public Forecaster {
 public:
  MlpForecaster(DenseNet net, NormalizationSpec norm) : net_(std::move(net)), norm_(norm) {}

  std::string name() const override { return "mlp"; }

  std::vector<std::vector<double>> forecast_mw(
      const LoadDataset&, const std::vector<Sample>& samples) const override {
    std::vector<std::vector<double>> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) {
      std::vector<double> y = mlp_forward(net_, s.input);
      for (double& v : y) v = detail::denorm_clamped(norm_, v);
      out.push_back(std::move(y));
    }
    return out;
  }

  const DenseNet& net() const { return net_; }

 private:
  DenseNet net_;
  NormalizationSpec norm_;
};

class ElmanForecaster final : public Forecaster {
 public:
  ElmanForecaster(ElmanNet net, NormalizationSpec norm) : net_(std::move(net)), norm_(norm) {}

  std::string name() const override { return "elman"; }

  std::vector<std::vector<double>> forecast_mw(
      const LoadDataset&, const std::vector<Sample>& samples) const override {
    std::vector<std::vector<double>> xs;
    xs.reserve(samples.size());
    for (const Sample& s : samples) xs.push_back(s.input);
    std::vector<std::vector<double>> out = elman_forward(net_, xs);
    for (auto& y : out)
      for (double& v : y) v = detail::denorm_clamped(norm_, v);
    return out;
  }

  const ElmanNet& net() const { return net_; }

 private:
  ElmanNet net_;
  NormalizationSpec norm_;
};

class RbfForecaster final : public Forecaster {
 public:
  RbfForecaster(RbfNet net, NormalizationSpec norm) : net_(std::move(net)), norm_(norm) {}

  std::string name() const override { return "rbfn"; }

  std::vector<std::vector<double>> forecast_mw(
      const LoadDataset&, const std::vector<Sample>& samples) const override {
    std::vector<std::vector<double>> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) {
      std::vector<double> y = rbf_forward(net_, s.input);
      for (double& v : y) v = detail::denorm_clamped(norm_, v);
      out.push_back(std::move(y));
    }
    return out;
  }

  const RbfNet& net() const { return net_; }

 private:
  RbfNet net_;
  NormalizationSpec norm_;
};

class HopfieldWrapper final : public Forecaster {
 public:
  HopfieldWrapper(HopfieldForecaster model, NormalizationSpec norm)
      : model_(std::move(model)), norm_(norm) {}

  std::string name() const override { return "hopfield"; }

  std::vector<std::vector<double>> forecast_mw(
      const LoadDataset&, const std::vector<Sample>& samples) const override {
    std::vector<std::vector<double>> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) {
      std::vector<double> y = model_.forecast_normalized(s);
      for (double& v : y) v = detail::denorm_clamped(norm_, v);
      out.push_back(std::move(y));
    }
    return out;
  }

  const HopfieldForecaster& model() const { return model_; }

 private:
  HopfieldForecaster model_;
  NormalizationSpec norm_;
};

class FisForecaster final : public Forecaster {
 public:
  explicit FisForecaster(FisModel model) : model_(std::move(model)) {}

  std::string name() const override { return "fis"; }

  std::vector<std::vector<double>> forecast_mw(
      const LoadDataset& ds, const std::vector<Sample>& samples) const override {
    std::vector<std::vector<double>> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) out.push_back(fis_forecast_mw(model_, ds, s.target_start));
    return out;
  }

  const FisModel& model() const { return model_; }

 private:
  FisModel model_;
};

class FnnForecaster final : public Forecaster {
 public:
  explicit FnnForecaster(FnnModel model) : model_(std::move(model)) {}

  std::string name() const override { return "fnn"; }

  std::vector<std::vector<double>> forecast_mw(
      const LoadDataset&, const std::vector<Sample>& samples) const override {
    std::vector<std::vector<double>> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) out.push_back(fnn_forecast_mw(model_, s));
    return out;
  }

  const FnnModel& model() const { return model_; }

 private:
  FnnModel model_;
};

}  // namespace loadcast
