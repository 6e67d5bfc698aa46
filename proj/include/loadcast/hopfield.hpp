#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "loadcast/errors.hpp"
#include "loadcast/features.hpp"
#include "loadcast/rng.hpp"

namespace loadcast {

// Single-layer recurrent net with symmetric weights and zero diagonal.
struct HopfieldNet {
  int n = 0;
  std::vector<double> w;  // n x n row-major

  double at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
};

inline void check_bipolar(const std::vector<int>& v) {
  for (int s : v)
    if (s != 1 && s != -1) raise(Errc::non_bipolar_input, "entries must be +1 or -1");
}

// Hebbian storage: W = (1/n) * sum_p p p^T with the diagonal zeroed.
inline HopfieldNet hopfield_store(const std::vector<std::vector<int>>& patterns) {
  if (patterns.empty()) raise(Errc::empty_input, "no patterns to store");
  const int n = static_cast<int>(patterns.front().size());
  // one pattern is always admissible, beyond that the 0.1*n bound applies
  if (patterns.size() > 1 && static_cast<double>(patterns.size()) > 0.1 * n)
    raise(Errc::capacity_exceeded, std::to_string(patterns.size()) + " patterns exceed 0.1*n = " +
                                       std::to_string(0.1 * n));
  for (const auto& p : patterns) {
    if (static_cast<int>(p.size()) != n)
      raise(Errc::layout_mismatch, "patterns must share one length");
    check_bipolar(p);
  }

  HopfieldNet net;
  net.n = n;
  net.w.assign(static_cast<std::size_t>(n) * n, 0.0);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (const auto& p : patterns)
    for (int i = 0; i < n; ++i) {
      double* row = &net.w[static_cast<std::size_t>(i) * n];
      for (int j = 0; j < n; ++j) row[j] += inv_n * p[i] * p[j];
    }
  for (int i = 0; i < n; ++i) net.w[static_cast<std::size_t>(i) * n + i] = 0.0;
  return net;
}

inline double hopfield_energy(const HopfieldNet& net, const std::vector<int>& s) {
  double e = 0.0;
  for (int i = 0; i < net.n; ++i) {
    const double* row = &net.w[static_cast<std::size_t>(i) * net.n];
    for (int j = 0; j < net.n; ++j) e += row[j] * s[i] * s[j];
  }
  return -0.5 * e;
}

struct RecallResult {
  std::vector<int> state;
  int sweeps = 0;               // full passes, including the final verification sweep
  int flips = 0;
  std::vector<double> energy;   // energy at start and after every flip
};

// Asynchronous updates in fixed index order; a zero field keeps the current
// state. Terminates at a state unchanged by a full sweep. The energy trail
// is maintained incrementally (flipping unit i changes E by 2*s_i*h_i, which
// is negative whenever a flip actually happens).
inline RecallResult hopfield_recall(const HopfieldNet& net, const std::vector<int>& probe,
                                    int max_sweeps = 1000) {
  if (static_cast<int>(probe.size()) != net.n)
    raise(Errc::layout_mismatch, "probe length " + std::to_string(probe.size()) + " != n = " +
                                     std::to_string(net.n));
  check_bipolar(probe);

  RecallResult res;
  res.state = probe;
  double energy = hopfield_energy(net, res.state);
  res.energy.push_back(energy);

  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    res.sweeps = sweep;
    bool changed = false;
    for (int i = 0; i < net.n; ++i) {
      const double* row = &net.w[static_cast<std::size_t>(i) * net.n];
      double field = 0.0;
      for (int j = 0; j < net.n; ++j) field += row[j] * res.state[j];
      const int next = field > 0.0 ? 1 : (field < 0.0 ? -1 : res.state[i]);
      if (next != res.state[i]) {
        energy += 2.0 * res.state[i] * field;
        res.state[i] = next;
        res.flips++;
        res.energy.push_back(energy);
        changed = true;
      }
    }
    if (!changed) return res;
  }
  raise(Errc::max_iterations, "no stable state within " + std::to_string(max_sweeps) + " sweeps");
}

// Thermometer code: a value in [0,1] quantized to k of `levels` leading +1
// bits. Quantization error is at most 1/(2*levels).
struct ThermoCodec {
  int levels = 8;

  int quantize(double v) const {
    const double clamped = std::clamp(v, 0.0, 1.0);
    return static_cast<int>(std::llround(clamped * levels));
  }

  void encode_value(double v, int* bits) const {
    const int k = quantize(v);
    for (int b = 0; b < levels; ++b) bits[b] = b < k ? 1 : -1;
  }

  double decode_level(int k) const { return static_cast<double>(k) / levels; }

  // Nearest valid thermometer word in Hamming distance (ties take the lower
  // level). Returns the level; *exact is false when the word was corrupt.
  int nearest_level(const int* bits, bool* exact = nullptr) const {
    int best_k = 0;
    int best_cost = -1;
    for (int k = 0; k <= levels; ++k) {
      int cost = 0;
      for (int b = 0; b < levels; ++b) {
        const int want = b < k ? 1 : -1;
        if (bits[b] != want) ++cost;
      }
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best_k = k;
      }
    }
    if (exact) *exact = best_cost == 0;
    return best_k;
  }
};

inline std::vector<int> thermo_encode(const ThermoCodec& codec, const std::vector<double>& values) {
  std::vector<int> bits(values.size() * codec.levels);
  for (std::size_t i = 0; i < values.size(); ++i)
    codec.encode_value(values[i], &bits[i * codec.levels]);
  return bits;
}

inline std::vector<double> thermo_decode(const ThermoCodec& codec, const std::vector<int>& bits,
                                         int* corrupt_words = nullptr) {
  const std::size_t count = bits.size() / codec.levels;
  std::vector<double> values(count);
  int corrupt = 0;
  for (std::size_t i = 0; i < count; ++i) {
    bool exact = true;
    const int k = codec.nearest_level(&bits[i * codec.levels], &exact);
    if (!exact) ++corrupt;
    values[i] = codec.decode_level(k);
  }
  if (corrupt_words) *corrupt_words = corrupt;
  return values;
}

// Pattern-completion forecaster: day patterns are the concatenated
// (48h history, 48h target) normalized loads, thermometer coded. A forecast
// probes with the encoded history and a seeded random target half, recalls,
// and decodes the target half. When the training set exceeds the 0.1*n
// capacity bound, an evenly spaced subset of patterns is stored.
struct HopfieldForecaster {
  HopfieldNet net;
  ThermoCodec codec;
  std::uint64_t seed = 1;
  std::vector<std::vector<int>> stored;  // kept for persistence; W is derived

  static HopfieldForecaster fit(const std::vector<Sample>& samples, ThermoCodec codec,
                                std::uint64_t seed) {
    if (samples.empty()) raise(Errc::empty_input, "no samples");
    HopfieldForecaster model;
    model.codec = codec;
    model.seed = seed;

    const int n = static_cast<int>((history_hours + target_width) * codec.levels);
    const std::size_t capacity = static_cast<std::size_t>(0.1 * n);
    std::vector<std::size_t> picks;
    if (samples.size() <= capacity) {
      for (std::size_t i = 0; i < samples.size(); ++i) picks.push_back(i);
    } else {
      for (std::size_t k = 0; k < capacity; ++k)
        picks.push_back(k * samples.size() / capacity);
    }

    for (std::size_t idx : picks) {
      const Sample& s = samples[idx];
      std::vector<double> values(s.input.begin(), s.input.begin() + history_hours);
      values.insert(values.end(), s.target.begin(), s.target.end());
      model.stored.push_back(thermo_encode(codec, values));
    }
    model.net = hopfield_store(model.stored);
    return model;
  }

  // 48 normalized loads; corrupt decoded words are repaired to the nearest
  // valid code and counted in *decode_flags when given.
  std::vector<double> forecast_normalized(const Sample& sample, int* decode_flags = nullptr) const {
    std::vector<double> history(sample.input.begin(), sample.input.begin() + history_hours);
    std::vector<int> probe = thermo_encode(codec, history);
    probe.resize(static_cast<std::size_t>(net.n));

    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(sample.target_start.hours)));
    for (std::size_t i = history_hours * codec.levels; i < probe.size(); ++i)
      probe[i] = rng.uniform() < 0.5 ? -1 : 1;

    const RecallResult recall = hopfield_recall(net, probe);
    const std::vector<int> target_bits(recall.state.begin() + history_hours * codec.levels,
                                       recall.state.end());
    return thermo_decode(codec, target_bits, decode_flags);
  }
};

}  // namespace loadcast
