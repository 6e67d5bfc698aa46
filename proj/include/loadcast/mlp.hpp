#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "loadcast/errors.hpp"
#include "loadcast/rng.hpp"

namespace loadcast {

enum class HiddenActivation { tanh_sigmoid, log_sigmoid };
enum class OutputActivation { linear, logistic };

inline double logsig(double z) { return 1.0 / (1.0 + std::exp(-z)); }

inline double apply_hidden(HiddenActivation a, double z) {
  return a == HiddenActivation::tanh_sigmoid ? std::tanh(z) : logsig(z);
}

// Derivative expressed through the activation value.
inline double hidden_derivative(HiddenActivation a, double h) {
  return a == HiddenActivation::tanh_sigmoid ? 1.0 - h * h : h * (1.0 - h);
}

// Single-hidden-layer feedforward network. Weight matrices are stored
// row-major: w1[j*in + i] feeds hidden j from input i, w2[o*hidden + j]
// feeds output o from hidden j.
struct DenseNet {
  int in = 62;
  int hidden = 24;
  int out = 48;
  HiddenActivation hidden_act = HiddenActivation::tanh_sigmoid;
  OutputActivation out_act = OutputActivation::linear;
  std::vector<double> w1, b1, w2, b2;

  static DenseNet init(int in, int hidden, int out, std::uint64_t seed,
                       HiddenActivation act = HiddenActivation::tanh_sigmoid,
                       OutputActivation oact = OutputActivation::linear) {
    if (in < 1 || hidden < 1 || out < 1) raise(Errc::invalid_config, "layer sizes must be >= 1");
    DenseNet net;
    net.in = in;
    net.hidden = hidden;
    net.out = out;
    net.hidden_act = act;
    net.out_act = oact;
    Rng rng(seed);
    const double r1 = 1.0 / std::sqrt(static_cast<double>(in));
    const double r2 = 1.0 / std::sqrt(static_cast<double>(hidden));
    net.w1.resize(static_cast<std::size_t>(hidden) * in);
    net.b1.resize(hidden);
    net.w2.resize(static_cast<std::size_t>(out) * hidden);
    net.b2.resize(out);
    for (double& w : net.w1) w = rng.uniform(-r1, r1);
    for (double& w : net.b1) w = rng.uniform(-r1, r1);
    for (double& w : net.w2) w = rng.uniform(-r2, r2);
    for (double& w : net.b2) w = rng.uniform(-r2, r2);
    return net;
  }

  std::size_t parameter_count() const {
    return w1.size() + b1.size() + w2.size() + b2.size();
  }

  void hidden_layer(const std::vector<double>& x, std::vector<double>& h) const {
    h.assign(hidden, 0.0);
    for (int j = 0; j < hidden; ++j) {
      double z = b1[j];
      const double* row = &w1[static_cast<std::size_t>(j) * in];
      for (int i = 0; i < in; ++i) z += row[i] * x[i];
      h[j] = apply_hidden(hidden_act, z);
    }
  }

  void output_layer(const std::vector<double>& h, std::vector<double>& y) const {
    y.assign(out, 0.0);
    for (int o = 0; o < out; ++o) {
      double z = b2[o];
      const double* row = &w2[static_cast<std::size_t>(o) * hidden];
      for (int j = 0; j < hidden; ++j) z += row[j] * h[j];
      y[o] = out_act == OutputActivation::linear ? z : logsig(z);
    }
  }
};

inline std::vector<double> mlp_forward(const DenseNet& net, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != net.in)
    raise(Errc::layout_mismatch, "input size " + std::to_string(x.size()) + " != " +
                                     std::to_string(net.in));
  std::vector<double> h, y;
  net.hidden_layer(x, h);
  net.output_layer(h, y);
  return y;
}

}  // namespace loadcast
