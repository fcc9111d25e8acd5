#pragma once

#include "tidd/core.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <memory>
#include <random>
#include <vector>

namespace tidd {

/// |L(q)| for every state, bottom-up. Depends only on the layers, so it is
/// cached per top layer in the manager.
inline std::shared_ptr<const PathCountAnnotation> path_counts(Manager& m, LayerHandle top) {
  auto& cache = m.caches().path_counts;
  if (auto it = cache.find(top); it != cache.end()) return it->second;
  auto ann = std::make_shared<PathCountAnnotation>();
  auto layers = layers_of(top);
  ann->counts.resize(layers.size());
  ann->counts[0] = layers[0]->is_fork() ? std::vector<BigInt>{1, 1} : std::vector<BigInt>{2};
  for (std::size_t lvl = 1; lvl < layers.size(); ++lvl) {
    const Layer& layer = *layers[lvl];
    const auto& below = ann->counts[lvl - 1];
    auto& here = ann->counts[lvl];
    here.assign(layer.num_states, BigInt(0));
    for (StateIndex a = 0; a < layer.table.side; ++a)
      for (StateIndex b = 0; b < layer.table.side; ++b) here[layer.at(a, b)] += below[a] * below[b];
  }
  cache.emplace(top, ann);
  return ann;
}

inline std::shared_ptr<const PathCountAnnotation> path_counts(Manager& m, const Tidd& f) { return path_counts(m, f.top); }

/// Draws assignments with probability proportional to their (nonnegative) value.
///
/// Top states are drawn by W(q) = V(q) |L(q)| using 128-bit binary floating point;
/// every lower draw picks an incoming transition (a, b) of the current state with
/// probability |L(a)| |L(b)| / |L(q)| using exact integers.
class Sampler {
 public:
  using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>>;

  Sampler(Manager& m, const Tidd& f) : f_(f), layers_(layers_of(f.top)), counts_(path_counts(m, f)) {
    const auto& top = counts_->top();
    Float total = 0;
    const Float root2 = boost::multiprecision::sqrt(Float(2));
    cumulative_.reserve(f.values.size());
    for (std::size_t q = 0; q < f.values.size(); ++q) {
      const Value& v = f.values[q];
      if (v.sign() < 0) throw NegativeWeight("value " + v.to_string() + " is negative");
      Float w = (Float(v.a()) + Float(v.b()) * root2) * Float(top[q]);
      w = ldexp(w, -static_cast<int>(v.k()));
      total += w;
      cumulative_.push_back(total);
    }
    if (total == 0) throw ZeroDistribution("all weights are zero");
    total_ = total;

    incoming_.resize(layers_.size());
    for (std::size_t lvl = 1; lvl < layers_.size(); ++lvl) {
      const Layer& layer = *layers_[lvl];
      incoming_[lvl].resize(layer.num_states);
      for (StateIndex a = 0; a < layer.table.side; ++a)
        for (StateIndex b = 0; b < layer.table.side; ++b) incoming_[lvl][layer.at(a, b)].push_back({a, b});
    }
  }

  template <class Rng>
  Assignment draw(Rng& rng) const {
    Float u = uniform_unit(rng) * total_;
    StateIndex q = 0;
    while (q < cumulative_.size() && !(u < cumulative_[q])) ++q;
    if (q == cumulative_.size()) {
      // rounding put u on the right edge
      q = static_cast<StateIndex>(cumulative_.size() - 1);
      while (!positive(q)) --q;
    }
    Assignment out(f_.num_variables());
    descend(rng, f_.level(), q, out, 0);
    return out;
  }

 private:
  bool positive(StateIndex q) const { return q == 0 ? cumulative_[0] > 0 : cumulative_[q] > cumulative_[q - 1]; }

  template <class Rng>
  static Float uniform_unit(Rng& rng) {
    std::uniform_int_distribution<std::uint64_t> dist;
    Float hi = Float(dist(rng));
    Float lo = Float(dist(rng));
    return ldexp(hi, -64) + ldexp(lo, -128);
  }

  /// Uniform integer in [0, n).
  template <class Rng>
  static BigInt uniform_below(Rng& rng, const BigInt& n) {
    const unsigned bits = static_cast<unsigned>(msb(n)) + 1;
    std::uniform_int_distribution<std::uint64_t> dist;
    while (true) {
      BigInt r = 0;
      for (unsigned got = 0; got < bits; got += 64) r = (r << 64) | BigInt(dist(rng));
      r &= (BigInt(1) << bits) - 1;
      if (r < n) return r;
    }
  }

  template <class Rng>
  void descend(Rng& rng, std::uint32_t level, StateIndex q, Assignment& out, std::size_t offset) const {
    if (level == 0) {
      if (layers_[0]->is_fork()) out[offset] = static_cast<std::uint8_t>(q);
      else out[offset] = static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 1)(rng));
      return;
    }
    const auto& below = counts_->counts[level - 1];
    BigInt u = uniform_below(rng, counts_->counts[level][q]);
    for (const auto& [a, b] : incoming_[level][q]) {
      BigInt c = below[a] * below[b];
      if (u < c) {
        const std::size_t half = std::size_t{1} << (level - 1);
        descend(rng, level - 1, a, out, offset);
        descend(rng, level - 1, b, out, offset + half);
        return;
      }
      u -= c;
    }
  }

  Tidd f_;
  std::vector<LayerHandle> layers_;
  std::shared_ptr<const PathCountAnnotation> counts_;
  std::vector<Float> cumulative_;
  Float total_;
  std::vector<std::vector<std::vector<std::pair<StateIndex, StateIndex>>>> incoming_;
};

template <class Rng>
Assignment sample(Manager& m, const Tidd& f, Rng& rng) {
  return Sampler(m, f).draw(rng);
}

}  // namespace tidd
