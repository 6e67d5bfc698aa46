#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "loadcast/errors.hpp"
#include "loadcast/rng.hpp"
#include "loadcast/train.hpp"

namespace loadcast {

// Gaussian radial basis network: linear output layer over exp(-|x-c|^2/2s^2)
// hidden units. centers is C x in row-major, w is out x C row-major.
struct RbfNet {
  int in = 62;
  int num_centers = 298;
  int out = 48;
  std::vector<double> centers;
  std::vector<double> widths;
  std::vector<double> w;
  std::vector<double> b;
  bool ridge_rescued = false;  // set when plain normal equations were singular

  void basis(const std::vector<double>& x, std::vector<double>& phi) const {
    phi.assign(num_centers, 0.0);
    for (int c = 0; c < num_centers; ++c) {
      const double* center = &centers[static_cast<std::size_t>(c) * in];
      double d2 = 0.0;
      for (int i = 0; i < in; ++i) {
        const double d = x[i] - center[i];
        d2 += d * d;
      }
      phi[c] = std::exp(-d2 / (2.0 * widths[c] * widths[c]));
    }
  }
};

inline std::vector<double> rbf_forward(const RbfNet& net, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != net.in)
    raise(Errc::layout_mismatch, "input size " + std::to_string(x.size()) + " != " +
                                     std::to_string(net.in));
  std::vector<double> phi;
  net.basis(x, phi);
  std::vector<double> y(net.out, 0.0);
  for (int o = 0; o < net.out; ++o) {
    double z = net.b[o];
    const double* row = &net.w[static_cast<std::size_t>(o) * net.num_centers];
    for (int c = 0; c < net.num_centers; ++c) z += row[c] * phi[c];
    y[o] = z;
  }
  return y;
}

namespace detail {

inline double sq_distance(const double* a, const double* b, int dim) {
  double d2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return d2;
}

// Lloyd iterations with k-means++ seeding. Empty clusters are re-seeded with
// the point farthest from its assigned center. Deterministic for a fixed
// seed.
inline std::vector<double> kmeans(const std::vector<std::vector<double>>& points, int k,
                                  std::uint64_t seed, int max_iters = 100) {
  const int n = static_cast<int>(points.size());
  const int dim = static_cast<int>(points.front().size());
  Rng rng(seed);

  std::vector<double> centers(static_cast<std::size_t>(k) * dim);
  std::vector<double> best_d2(n, std::numeric_limits<double>::max());
  {
    const int first = static_cast<int>(rng.uniform_int(0, n - 1));
    std::copy(points[first].begin(), points[first].end(), centers.begin());
    for (int c = 1; c < k; ++c) {
      double total = 0.0;
      for (int p = 0; p < n; ++p) {
        const double d2 = sq_distance(points[p].data(),
                                      &centers[static_cast<std::size_t>(c - 1) * dim], dim);
        best_d2[p] = std::min(best_d2[p], d2);
        total += best_d2[p];
      }
      int pick = 0;
      if (total > 0.0) {
        double r = rng.uniform() * total;
        for (int p = 0; p < n; ++p) {
          r -= best_d2[p];
          if (r <= 0.0) {
            pick = p;
            break;
          }
          pick = p;
        }
      }
      std::copy(points[pick].begin(), points[pick].end(),
                centers.begin() + static_cast<std::size_t>(c) * dim);
    }
  }

  std::vector<int> assign(n, 0);
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (int p = 0; p < n; ++p) {
      int best = 0;
      double best_dist = std::numeric_limits<double>::max();
      for (int c = 0; c < k; ++c) {
        const double d2 = sq_distance(points[p].data(),
                                      &centers[static_cast<std::size_t>(c) * dim], dim);
        if (d2 < best_dist) {
          best_dist = d2;
          best = c;
        }
      }
      if (assign[p] != best) {
        assign[p] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    std::vector<double> sums(static_cast<std::size_t>(k) * dim, 0.0);
    std::vector<int> counts(k, 0);
    for (int p = 0; p < n; ++p) {
      counts[assign[p]]++;
      double* srow = &sums[static_cast<std::size_t>(assign[p]) * dim];
      for (int i = 0; i < dim; ++i) srow[i] += points[p][i];
    }
    for (int c = 0; c < k; ++c) {
      double* crow = &centers[static_cast<std::size_t>(c) * dim];
      if (counts[c] > 0) {
        const double* srow = &sums[static_cast<std::size_t>(c) * dim];
        for (int i = 0; i < dim; ++i) crow[i] = srow[i] / counts[c];
      } else {
        int far = 0;
        double far_d2 = -1.0;
        for (int p = 0; p < n; ++p) {
          const double d2 = sq_distance(
              points[p].data(), &centers[static_cast<std::size_t>(assign[p]) * dim], dim);
          if (d2 > far_d2) {
            far_d2 = d2;
            far = p;
          }
        }
        std::copy(points[far].begin(), points[far].end(), crow);
        assign[far] = c;
      }
    }
  }
  return centers;
}

// In-place Cholesky of a symmetric positive definite matrix; returns false
// on a non-positive pivot.
inline bool cholesky_factor(std::vector<double>& a, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double l = a[static_cast<std::size_t>(j) * n + k];
      d -= l * l;
    }
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    a[static_cast<std::size_t>(j) * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        s -= a[static_cast<std::size_t>(i) * n + k] * a[static_cast<std::size_t>(j) * n + k];
      a[static_cast<std::size_t>(i) * n + j] = s / ljj;
    }
  }
  return true;
}

inline void cholesky_solve(const std::vector<double>& l, int n, std::vector<double>& rhs) {
  for (int i = 0; i < n; ++i) {
    double s = rhs[i];
    for (int k = 0; k < i; ++k) s -= l[static_cast<std::size_t>(i) * n + k] * rhs[k];
    rhs[i] = s / l[static_cast<std::size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = rhs[i];
    for (int k = i + 1; k < n; ++k) s -= l[static_cast<std::size_t>(k) * n + i] * rhs[k];
    rhs[i] = s / l[static_cast<std::size_t>(i) * n + i];
  }
}

}  // namespace detail

inline constexpr double rbf_ridge_lambda = 1e-8;

// Centers by seeded k-means (inputs verbatim when C equals the sample
// count), widths from the mean distance to the two nearest other centers,
// output weights by linear least squares. The normal equations are first
// solved plainly; a singular system is reported through ridge_rescued and
// re-solved with a small ridge term.
inline RbfNet rbf_train(const TrainingSet& samples, int num_centers, const TrainConfig& cfg) {
  if (samples.empty()) raise(Errc::empty_input, "training set is empty");
  if (num_centers < 1) raise(Errc::invalid_config, "need at least one center");
  const int n = static_cast<int>(samples.size());
  if (n < num_centers)
    raise(Errc::insufficient_samples, std::to_string(n) + " samples for " +
                                          std::to_string(num_centers) + " centers");
  const int in = static_cast<int>(samples.front().first.size());
  const int out = static_cast<int>(samples.front().second.size());
  for (const auto& pair : samples) detail::check_pair(in, out, pair);

  RbfNet net;
  net.in = in;
  net.num_centers = num_centers;
  net.out = out;

  std::vector<std::vector<double>> inputs;
  inputs.reserve(n);
  for (const auto& pair : samples) inputs.push_back(pair.first);

  if (num_centers == n) {
    net.centers.resize(static_cast<std::size_t>(num_centers) * in);
    for (int c = 0; c < n; ++c)
      std::copy(inputs[c].begin(), inputs[c].end(),
                net.centers.begin() + static_cast<std::size_t>(c) * in);
  } else {
    net.centers = detail::kmeans(inputs, num_centers, cfg.seed);
  }

  net.widths.assign(num_centers, 1.0);
  if (num_centers > 1) {
    for (int c = 0; c < num_centers; ++c) {
      double d1 = std::numeric_limits<double>::max();
      double d2 = std::numeric_limits<double>::max();
      for (int o = 0; o < num_centers; ++o) {
        if (o == c) continue;
        const double d = std::sqrt(detail::sq_distance(
            &net.centers[static_cast<std::size_t>(c) * in],
            &net.centers[static_cast<std::size_t>(o) * in], in));
        if (d < d1) {
          d2 = d1;
          d1 = d;
        } else if (d < d2) {
          d2 = d;
        }
      }
      const double mean = num_centers == 2 ? d1 : 0.5 * (d1 + d2);
      net.widths[c] = std::max(mean, 1e-6);
    }
  }

  // Design matrix with a trailing bias column.
  const int cols = num_centers + 1;
  std::vector<double> phi(static_cast<std::size_t>(n) * cols);
  std::vector<double> basis;
  for (int p = 0; p < n; ++p) {
    net.basis(inputs[p], basis);
    double* row = &phi[static_cast<std::size_t>(p) * cols];
    std::copy(basis.begin(), basis.end(), row);
    row[num_centers] = 1.0;
  }

  std::vector<double> gram(static_cast<std::size_t>(cols) * cols, 0.0);
  for (int p = 0; p < n; ++p) {
    const double* row = &phi[static_cast<std::size_t>(p) * cols];
    for (int i = 0; i < cols; ++i)
      for (int j = 0; j <= i; ++j)
        gram[static_cast<std::size_t>(i) * cols + j] += row[i] * row[j];
  }
  for (int i = 0; i < cols; ++i)
    for (int j = i + 1; j < cols; ++j)
      gram[static_cast<std::size_t>(i) * cols + j] = gram[static_cast<std::size_t>(j) * cols + i];

  std::vector<double> factor = gram;
  if (!detail::cholesky_factor(factor, cols)) {
    net.ridge_rescued = true;
    factor = gram;
    for (int i = 0; i < cols; ++i) factor[static_cast<std::size_t>(i) * cols + i] += rbf_ridge_lambda;
    if (!detail::cholesky_factor(factor, cols))
      raise(Errc::singular_system, "normal equations singular even with ridge term");
  }

  net.w.assign(static_cast<std::size_t>(out) * num_centers, 0.0);
  net.b.assign(out, 0.0);
  std::vector<double> rhs(cols);
  for (int o = 0; o < out; ++o) {
    std::fill(rhs.begin(), rhs.end(), 0.0);
    for (int p = 0; p < n; ++p) {
      const double* row = &phi[static_cast<std::size_t>(p) * cols];
      const double t = samples[p].second[o];
      for (int i = 0; i < cols; ++i) rhs[i] += row[i] * t;
    }
    detail::cholesky_solve(factor, cols, rhs);
    for (int c = 0; c < num_centers; ++c)
      net.w[static_cast<std::size_t>(o) * num_centers + c] = rhs[c];
    net.b[o] = rhs[num_centers];
  }
  return net;
}

}  // namespace loadcast
