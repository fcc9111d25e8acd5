#pragma once

#include "tidd/tidd.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace tidd::testing {

/// validate() plus handle-level idempotence of reduce.
inline ::testing::AssertionResult healthy(Manager& m, const Tidd& f) {
  auto report = validate(f);
  if (!report.ok) return ::testing::AssertionFailure() << report.to_string();
  if (!equal(reduce(m, f), f)) return ::testing::AssertionFailure() << "reduce is not idempotent";
  return ::testing::AssertionSuccess();
}

/// Per-level state counts match the Myhill-Nerode class counts of the dense table.
inline ::testing::AssertionResult minimal(const Tidd& f) {
  auto d = oracle::dense_from_tidd(f);
  auto layers = layers_of(f.top);
  for (std::uint32_t i = 0; i <= f.level(); ++i) {
    const std::uint64_t have = i == f.level() ? f.values.size() : layers[i]->num_states;
    const std::uint64_t want = oracle::class_count_at_level(d, i);
    if (have != want)
      return ::testing::AssertionFailure() << "level " << i << ": " << have << " states, oracle says " << want;
  }
  return ::testing::AssertionSuccess();
}

inline Value small_int(std::mt19937_64& rng, int lo, int hi) {
  return Value(static_cast<long long>(lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1))));
}

inline std::vector<Value> random_table(std::mt19937_64& rng, std::uint32_t level, int lo = -2, int hi = 2) {
  std::vector<Value> t(std::size_t{1} << (std::size_t{1} << level));
  for (auto& v : t) v = small_int(rng, lo, hi);
  return t;
}

/// Dense statevector simulation, independent of the diagram code.
class DenseState {
 public:
  explicit DenseState(std::uint32_t qubits) : n_(qubits), amp_(std::size_t{1} << qubits) { amp_[0] = Value(1); }

  const std::vector<Value>& amplitudes() const { return amp_; }

  void apply(const quantum::GateSpec& g) {
    using quantum::GateKind;
    const Value h = Value::inv_sqrt2();
    auto bit = [&](std::size_t idx, std::uint32_t q) { return (idx >> (n_ - 1 - q)) & 1u; };
    auto flip = [&](std::size_t idx, std::uint32_t q) { return idx ^ (std::size_t{1} << (n_ - 1 - q)); };
    std::vector<Value> out(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      switch (g.kind) {
        case GateKind::I: out[i] = amp_[i]; break;
        case GateKind::X: out[i] = amp_[flip(i, g.targets[0])]; break;
        case GateKind::Z: out[i] = bit(i, g.targets[0]) ? -amp_[i] : amp_[i]; break;
        case GateKind::H: {
          const auto t = g.targets[0];
          const std::size_t i0 = bit(i, t) ? flip(i, t) : i;
          const std::size_t i1 = flip(i0, t);
          out[i] = bit(i, t) ? h * amp_[i0] - h * amp_[i1] : h * amp_[i0] + h * amp_[i1];
          break;
        }
        case GateKind::CNOT:
          out[i] = bit(i, g.targets[0]) ? amp_[flip(i, g.targets[1])] : amp_[i];
          break;
        case GateKind::CZ:
          out[i] = bit(i, g.targets[0]) && bit(i, g.targets[1]) ? -amp_[i] : amp_[i];
          break;
      }
    }
    amp_ = std::move(out);
  }

 private:
  std::uint32_t n_;
  std::vector<Value> amp_;
};

}  // namespace tidd::testing
