#pragma once

#include <vector>

#include "loadcast/mlp.hpp"

namespace loadcast {

// Elman simple recurrent network: the context layer is an untrained
// unit-weight copy of the previous step's hidden activations. wc[j*hidden+k]
// feeds hidden j from context k. Hidden units are log-sigmoid, outputs
// linear.
struct ElmanNet {
  int in = 62;
  int hidden = 60;
  int out = 48;
  std::vector<double> w1, b1, wc, w2, b2;

  static ElmanNet init(int in, int hidden, int out, std::uint64_t seed) {
    if (in < 1 || hidden < 1 || out < 1) raise(Errc::invalid_config, "layer sizes must be >= 1");
    ElmanNet net;
    net.in = in;
    net.hidden = hidden;
    net.out = out;
    Rng rng(seed);
    const double r1 = 1.0 / std::sqrt(static_cast<double>(in));
    const double rc = 1.0 / std::sqrt(static_cast<double>(hidden));
    net.w1.resize(static_cast<std::size_t>(hidden) * in);
    net.b1.resize(hidden);
    net.wc.resize(static_cast<std::size_t>(hidden) * hidden);
    net.w2.resize(static_cast<std::size_t>(out) * hidden);
    net.b2.resize(out);
    for (double& w : net.w1) w = rng.uniform(-r1, r1);
    for (double& w : net.b1) w = rng.uniform(-r1, r1);
    for (double& w : net.wc) w = rng.uniform(-rc, rc);
    for (double& w : net.w2) w = rng.uniform(-rc, rc);
    for (double& w : net.b2) w = rng.uniform(-rc, rc);
    return net;
  }

  std::size_t parameter_count() const {
    return w1.size() + b1.size() + wc.size() + w2.size() + b2.size();
  }

  std::vector<double> zero_context() const { return std::vector<double>(hidden, 0.0); }

  void hidden_layer(const std::vector<double>& x, const std::vector<double>& context,
                    std::vector<double>& h) const {
    h.assign(hidden, 0.0);
    for (int j = 0; j < hidden; ++j) {
      double z = b1[j];
      const double* row = &w1[static_cast<std::size_t>(j) * in];
      for (int i = 0; i < in; ++i) z += row[i] * x[i];
      const double* crow = &wc[static_cast<std::size_t>(j) * hidden];
      for (int k = 0; k < hidden; ++k) z += crow[k] * context[k];
      h[j] = logsig(z);
    }
  }

  void output_layer(const std::vector<double>& h, std::vector<double>& y) const {
    y.assign(out, 0.0);
    for (int o = 0; o < out; ++o) {
      double z = b2[o];
      const double* row = &w2[static_cast<std::size_t>(o) * hidden];
      for (int j = 0; j < hidden; ++j) z += row[j] * h[j];
      y[o] = z;
    }
  }
};

// One step from an explicit context; the caller copies hidden into the
// context afterwards (the copy links are fixed at weight one).
inline std::vector<double> elman_step(const ElmanNet& net, const std::vector<double>& x,
                                      const std::vector<double>& context,
                                      std::vector<double>& hidden_out) {
  if (static_cast<int>(x.size()) != net.in)
    raise(Errc::layout_mismatch, "input size " + std::to_string(x.size()) + " != " +
                                     std::to_string(net.in));
  std::vector<double> y;
  net.hidden_layer(x, context, hidden_out);
  net.output_layer(hidden_out, y);
  return y;
}

inline std::vector<std::vector<double>> elman_forward(const ElmanNet& net,
                                                      const std::vector<std::vector<double>>& xs) {
  std::vector<std::vector<double>> ys;
  ys.reserve(xs.size());
  std::vector<double> context = net.zero_context();
  std::vector<double> hidden;
  for (const auto& x : xs) {
    ys.push_back(elman_step(net, x, context, hidden));
    context = hidden;
  }
  return ys;
}

}  // namespace loadcast
