#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>
#include <vector>

#include "loadcast/elman.hpp"
#include "loadcast/mlp.hpp"

namespace loadcast {

struct TrainConfig {
  double learning_rate = 0.01;
  int max_epochs = 10000;
  double error_target = 1e-4;  // epoch mean squared error, normalized units
  std::uint64_t seed = 1;
  double momentum = 0.9;
};

struct TrainTrace {
  std::vector<double> epoch_mse;
  bool converged = false;
  int epochs = 0;
};

using TrainingPair = std::pair<std::vector<double>, std::vector<double>>;
using TrainingSet = std::vector<TrainingPair>;

inline std::vector<double*> parameters(DenseNet& net) {
  std::vector<double*> p;
  p.reserve(net.parameter_count());
  for (auto* block : {&net.w1, &net.b1, &net.w2, &net.b2})
    for (double& w : *block) p.push_back(&w);
  return p;
}

inline std::vector<double*> parameters(ElmanNet& net) {
  std::vector<double*> p;
  p.reserve(net.parameter_count());
  for (auto* block : {&net.w1, &net.b1, &net.wc, &net.w2, &net.b2})
    for (double& w : *block) p.push_back(&w);
  return p;
}

namespace detail {

inline void check_pair(int in, int out, const TrainingPair& pair) {
  if (static_cast<int>(pair.first.size()) != in || static_cast<int>(pair.second.size()) != out)
    raise(Errc::layout_mismatch, "training pair does not match network dimensions");
}

// Per-sample loss: mean squared error over the output vector.
inline double output_loss(const std::vector<double>& y, const std::vector<double>& t) {
  double sum = 0.0;
  for (std::size_t o = 0; o < y.size(); ++o) {
    const double e = y[o] - t[o];
    sum += e * e;
  }
  return sum / static_cast<double>(y.size());
}

// Shared output/hidden deltas; returns the sample loss. `scale` multiplies
// the gradient contribution (1/S for batch averaging).
struct DenseGrad {
  std::vector<double> w1, b1, w2, b2;

  explicit DenseGrad(const DenseNet& n)
      : w1(n.w1.size(), 0.0), b1(n.b1.size(), 0.0), w2(n.w2.size(), 0.0), b2(n.b2.size(), 0.0) {}
};

struct ElmanGrad {
  std::vector<double> w1, b1, wc, w2, b2;

  explicit ElmanGrad(const ElmanNet& n)
      : w1(n.w1.size(), 0.0), b1(n.b1.size(), 0.0), wc(n.wc.size(), 0.0), w2(n.w2.size(), 0.0),
        b2(n.b2.size(), 0.0) {}
};

inline double accumulate_sample(const DenseNet& net, const TrainingPair& pair, double scale,
                                DenseGrad& g, std::vector<double>& h, std::vector<double>& y,
                                std::vector<double>& delta_out) {
  const auto& x = pair.first;
  const auto& t = pair.second;
  net.hidden_layer(x, h);
  net.output_layer(h, y);

  delta_out.assign(net.out, 0.0);
  const double inv_out = 1.0 / static_cast<double>(net.out);
  for (int o = 0; o < net.out; ++o) {
    double d = 2.0 * (y[o] - t[o]) * inv_out;
    if (net.out_act == OutputActivation::logistic) d *= y[o] * (1.0 - y[o]);
    delta_out[o] = d;
    g.b2[o] += scale * d;
    double* grow = &g.w2[static_cast<std::size_t>(o) * net.hidden];
    for (int j = 0; j < net.hidden; ++j) grow[j] += scale * d * h[j];
  }
  for (int j = 0; j < net.hidden; ++j) {
    double back = 0.0;
    for (int o = 0; o < net.out; ++o)
      back += delta_out[o] * net.w2[static_cast<std::size_t>(o) * net.hidden + j];
    const double dh = back * hidden_derivative(net.hidden_act, h[j]);
    g.b1[j] += scale * dh;
    double* grow = &g.w1[static_cast<std::size_t>(j) * net.in];
    for (int i = 0; i < net.in; ++i) grow[i] += scale * dh * x[i];
  }
  return output_loss(y, t);
}

// The context enters as a constant input: truncated backpropagation, no
// gradient through time.
inline double accumulate_sample(const ElmanNet& net, const TrainingPair& pair,
                                const std::vector<double>& context, double scale, ElmanGrad& g,
                                std::vector<double>& h, std::vector<double>& y,
                                std::vector<double>& delta_out) {
  const auto& x = pair.first;
  const auto& t = pair.second;
  net.hidden_layer(x, context, h);
  net.output_layer(h, y);

  delta_out.assign(net.out, 0.0);
  const double inv_out = 1.0 / static_cast<double>(net.out);
  for (int o = 0; o < net.out; ++o) {
    const double d = 2.0 * (y[o] - t[o]) * inv_out;
    delta_out[o] = d;
    g.b2[o] += scale * d;
    double* grow = &g.w2[static_cast<std::size_t>(o) * net.hidden];
    for (int j = 0; j < net.hidden; ++j) grow[j] += scale * d * h[j];
  }
  for (int j = 0; j < net.hidden; ++j) {
    double back = 0.0;
    for (int o = 0; o < net.out; ++o)
      back += delta_out[o] * net.w2[static_cast<std::size_t>(o) * net.hidden + j];
    const double dh = back * h[j] * (1.0 - h[j]);
    g.b1[j] += scale * dh;
    double* grow = &g.w1[static_cast<std::size_t>(j) * net.in];
    for (int i = 0; i < net.in; ++i) grow[i] += scale * dh * x[i];
    double* crow = &g.wc[static_cast<std::size_t>(j) * net.hidden];
    for (int k = 0; k < net.hidden; ++k) crow[k] += scale * dh * context[k];
  }
  return output_loss(y, t);
}

inline void apply_momentum(std::vector<double>& w, std::vector<double>& v,
                           const std::vector<double>& g, double lr, double momentum) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    v[i] = momentum * v[i] - lr * g[i];
    w[i] += v[i];
  }
}

}  // namespace detail

// Full-batch gradient descent with momentum. Stops when the epoch MSE
// reaches cfg.error_target or max_epochs elapse; reports divergence with the
// offending epoch when the MSE stops being finite.
inline TrainTrace train_backprop(DenseNet& net, const TrainingSet& samples,
                                 const TrainConfig& cfg) {
  if (samples.empty()) raise(Errc::empty_input, "training set is empty");
  for (const auto& pair : samples) detail::check_pair(net.in, net.out, pair);

  detail::DenseGrad vel(net);
  std::vector<double> h, y, delta;
  TrainTrace trace;
  const double scale = 1.0 / static_cast<double>(samples.size());

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    detail::DenseGrad grad(net);
    double mse = 0.0;
    for (const auto& pair : samples)
      mse += detail::accumulate_sample(net, pair, scale, grad, h, y, delta);
    mse *= scale;

    trace.epoch_mse.push_back(mse);
    trace.epochs = epoch;
    if (!std::isfinite(mse))
      raise(Errc::divergence, "epoch " + std::to_string(epoch) + " MSE is not finite");
    if (mse <= cfg.error_target) {
      trace.converged = true;
      return trace;
    }
    detail::apply_momentum(net.w1, vel.w1, grad.w1, cfg.learning_rate, cfg.momentum);
    detail::apply_momentum(net.b1, vel.b1, grad.b1, cfg.learning_rate, cfg.momentum);
    detail::apply_momentum(net.w2, vel.w2, grad.w2, cfg.learning_rate, cfg.momentum);
    detail::apply_momentum(net.b2, vel.b2, grad.b2, cfg.learning_rate, cfg.momentum);
  }
  return trace;
}

// Elman variant: samples are taken in the given (chronological) order, the
// context starts at zero each epoch and copies the hidden state after every
// sample, matching inference with a zeroed context at sequence start.
inline TrainTrace train_backprop(ElmanNet& net, const TrainingSet& samples,
                                 const TrainConfig& cfg) {
  if (samples.empty()) raise(Errc::empty_input, "training set is empty");
  for (const auto& pair : samples) detail::check_pair(net.in, net.out, pair);

  detail::ElmanGrad vel(net);
  std::vector<double> h, y, delta;
  TrainTrace trace;
  const double scale = 1.0 / static_cast<double>(samples.size());

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    detail::ElmanGrad grad(net);
    std::vector<double> context = net.zero_context();
    double mse = 0.0;
    for (const auto& pair : samples) {
      mse += detail::accumulate_sample(net, pair, context, scale, grad, h, y, delta);
      context = h;
    }
    mse *= scale;

    trace.epoch_mse.push_back(mse);
    trace.epochs = epoch;
    if (!std::isfinite(mse))
      raise(Errc::divergence, "epoch " + std::to_string(epoch) + " MSE is not finite");
    if (mse <= cfg.error_target) {
      trace.converged = true;
      return trace;
    }
    detail::apply_momentum(net.w1, vel.w1, grad.w1, cfg.learning_rate, cfg.momentum);
    detail::apply_momentum(net.b1, vel.b1, grad.b1, cfg.learning_rate, cfg.momentum);
    detail::apply_momentum(net.wc, vel.wc, grad.wc, cfg.learning_rate, cfg.momentum);
    detail::apply_momentum(net.w2, vel.w2, grad.w2, cfg.learning_rate, cfg.momentum);
    detail::apply_momentum(net.b2, vel.b2, grad.b2, cfg.learning_rate, cfg.momentum);
  }
  return trace;
}

inline double sample_loss(const DenseNet& net, const TrainingPair& pair) {
  return detail::output_loss(mlp_forward(net, pair.first), pair.second);
}

inline double sample_loss(const ElmanNet& net, const TrainingPair& pair,
                          const std::vector<double>& context) {
  std::vector<double> h;
  return detail::output_loss(elman_step(net, pair.first, context, h), pair.second);
}

// Analytic gradient of the single-sample loss, flattened in parameter order.
inline std::vector<double> analytic_gradient(const DenseNet& net, const TrainingPair& pair) {
  detail::check_pair(net.in, net.out, pair);
  detail::DenseGrad g(net);
  std::vector<double> h, y, delta;
  detail::accumulate_sample(net, pair, 1.0, g, h, y, delta);
  std::vector<double> flat;
  flat.reserve(net.parameter_count());
  for (const auto* block : {&g.w1, &g.b1, &g.w2, &g.b2})
    flat.insert(flat.end(), block->begin(), block->end());
  return flat;
}

inline std::vector<double> analytic_gradient(const ElmanNet& net, const TrainingPair& pair,
                                             const std::vector<double>& context) {
  detail::check_pair(net.in, net.out, pair);
  detail::ElmanGrad g(net);
  std::vector<double> h, y, delta;
  detail::accumulate_sample(net, pair, context, 1.0, g, h, y, delta);
  std::vector<double> flat;
  flat.reserve(net.parameter_count());
  for (const auto* block : {&g.w1, &g.b1, &g.wc, &g.w2, &g.b2})
    flat.insert(flat.end(), block->begin(), block->end());
  return flat;
}

namespace detail {

template <typename LossFn>
std::vector<double> central_differences(std::vector<double*>& params, double eps, LossFn loss) {
  std::vector<double> g(params.size(), 0.0);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = *params[i];
    *params[i] = saved + eps;
    const double up = loss();
    *params[i] = saved - eps;
    const double down = loss();
    *params[i] = saved;
    g[i] = (up - down) / (2.0 * eps);
  }
  return g;
}

inline double max_relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double mag = std::max({std::fabs(a[i]), std::fabs(b[i]), 1e-5});
    worst = std::max(worst, std::fabs(a[i] - b[i]) / mag);
  }
  return worst;
}

inline double clamp_epsilon(double eps) {
  assert(eps >= 1e-7 && eps <= 1e-3);
  return std::clamp(eps, 1e-7, 1e-3);
}

}  // namespace detail

inline std::vector<double> numeric_gradient(DenseNet net, const TrainingPair& pair, double eps) {
  auto params = parameters(net);
  return detail::central_differences(params, detail::clamp_epsilon(eps),
                                     [&] { return sample_loss(net, pair); });
}

inline std::vector<double> numeric_gradient(ElmanNet net, const TrainingPair& pair,
                                            const std::vector<double>& context, double eps) {
  auto params = parameters(net);
  return detail::central_differences(params, detail::clamp_epsilon(eps),
                                     [&] { return sample_loss(net, pair, context); });
}

inline double gradient_check(const DenseNet& net, const TrainingPair& pair, double eps) {
  return detail::max_relative_error(analytic_gradient(net, pair),
                                    numeric_gradient(net, pair, eps));
}

// Elman check runs a single step against a frozen context.
inline double gradient_check(const ElmanNet& net, const TrainingPair& pair,
                             const std::vector<double>& context, double eps) {
  return detail::max_relative_error(analytic_gradient(net, pair, context),
                                    numeric_gradient(net, pair, context, eps));
}

}  // namespace loadcast
