#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "loadcast/rbf.hpp"
#include "loadcast/rng.hpp"

using namespace loadcast;

namespace {

TrainingSet random_set(Rng& rng, int n, int in, int out) {
  TrainingSet set;
  for (int s = 0; s < n; ++s) {
    TrainingPair p;
    p.first.resize(in);
    p.second.resize(out);
    for (double& v : p.first) v = rng.uniform();
    for (double& v : p.second) v = rng.uniform();
    set.push_back(std::move(p));
  }
  return set;
}

double training_mse(const RbfNet& net, const TrainingSet& set) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& [x, t] : set) {
    const auto y = rbf_forward(net, x);
    for (std::size_t o = 0; o < t.size(); ++o) {
      const double e = y[o] - t[o];
      sum += e * e;
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

}  // namespace

TEST_CASE("basis value is one at a center and vanishes far away") {
  RbfNet net;
  net.in = 3;
  net.num_centers = 1;
  net.out = 2;
  net.centers = {0.2, 0.4, 0.6};
  net.widths = {0.5};
  net.w = {2.5, -1.0};
  net.b = {0.0, 0.0};

  auto y = rbf_forward(net, {0.2, 0.4, 0.6});
  CHECK(y[0] == Catch::Approx(2.5));   // basis exactly 1 at the center
  CHECK(y[1] == Catch::Approx(-1.0));

  // 10 sigma away in one coordinate: exp(-50)
  y = rbf_forward(net, {0.2 + 5.0, 0.4, 0.6});
  CHECK(std::fabs(y[0]) < 1e-20);
  CHECK(std::fabs(y[1]) < 1e-20);
}

TEST_CASE("centers equal to the inputs interpolate the targets") {
  Rng rng(41);
  const TrainingSet set = random_set(rng, 30, 8, 4);
  TrainConfig cfg;
  cfg.seed = 7;
  const RbfNet net = rbf_train(set, 30, cfg);
  CHECK(training_mse(net, set) <= 1e-10);
}

TEST_CASE("a single center fits constant targets exactly") {
  Rng rng(42);
  TrainingSet set = random_set(rng, 10, 5, 3);
  for (auto& [x, t] : set) t = {0.75, 0.25, 0.5};
  TrainConfig cfg;
  const RbfNet net = rbf_train(set, 1, cfg);
  CHECK(training_mse(net, set) <= 1e-10);
}

TEST_CASE("coincident inputs trigger the ridge rescue") {
  Rng rng(43);
  TrainingSet set = random_set(rng, 6, 4, 2);
  set[1].first = set[0].first;  // duplicate center makes the system singular
  set[1].second = set[0].second;
  TrainConfig cfg;
  const RbfNet net = rbf_train(set, 6, cfg);
  CHECK(net.ridge_rescued);
  for (const auto& [x, t] : set) {
    const auto y = rbf_forward(net, x);
    for (double v : y) CHECK(std::isfinite(v));
  }
}

TEST_CASE("too few samples raise insufficient-samples") {
  Rng rng(44);
  const TrainingSet set = random_set(rng, 5, 4, 2);
  TrainConfig cfg;
  CHECK_THROWS_MATCHES(rbf_train(set, 6, cfg), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::insufficient_samples;
                       }));
}

TEST_CASE("k-means training generalizes on smooth data and is deterministic") {
  Rng rng(45);
  TrainingSet set;
  for (int s = 0; s < 60; ++s) {
    std::vector<double> x(3);
    for (double& v : x) v = rng.uniform();
    std::vector<double> t{std::sin(x[0] + x[1]) * 0.5 + 0.5, x[2] * 0.8};
    set.emplace_back(std::move(x), std::move(t));
  }
  TrainConfig cfg;
  cfg.seed = 9;
  const RbfNet a = rbf_train(set, 20, cfg);
  const RbfNet b = rbf_train(set, 20, cfg);
  CHECK(a.centers == b.centers);
  CHECK(a.w == b.w);
  CHECK(training_mse(a, set) < 1e-3);
  for (double w : a.widths) CHECK(w > 0.0);
}
