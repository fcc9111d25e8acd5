#pragma once

#include "tidd/constant.hpp"
#include "tidd/ops.hpp"
#include "tidd/reduce.hpp"

#include <bit>
#include <vector>

namespace tidd {

/// lambda x_0 ... x_{2^level - 1} . x_index, with values [false, true].
///
/// State j at level k is the bit at offset (index mod 2^k) of the block read so
/// far; each internal layer copies it from the half that holds that offset.
inline Tidd projection(Manager& m, std::uint32_t level, std::uint64_t index) {
  if (level >= 63 || index >= (std::uint64_t{1} << level))
    throw IndexOutOfRange("projection index " + std::to_string(index) + " at level " + std::to_string(level));
  LayerHandle l = m.fork();
  for (std::uint32_t k = 1; k <= level; ++k) {
    std::uint64_t offset = index & ((std::uint64_t{1} << k) - 1);
    bool in_left = offset < (std::uint64_t{1} << (k - 1));
    l = m.intern(l, in_left ? TransitionTable{{0, 0}, {1, 1}} : TransitionTable{{0, 1}, {0, 1}});
  }
  return Tidd{l, {Value::boolean(false), Value::boolean(true)}};
}

/// Canonical Tidd from the 2^(2^level) outputs indexed by big-endian assignment.
///
/// Builds the unminimized automaton whose level-i states are the substrings
/// themselves and reduces it.
inline Tidd from_truth_table(Manager& m, std::uint32_t level, std::span<const Value> outputs) {
  if (level > 4)
    throw TruthTableLengthMismatch("truth tables are limited to 16 variables, level " + std::to_string(level));
  const std::uint64_t expected = std::uint64_t{1} << (std::uint64_t{1} << level);
  if (outputs.size() != expected)
    throw TruthTableLengthMismatch("expected " + std::to_string(expected) + " outputs, got " +
                                   std::to_string(outputs.size()));
  std::vector<std::vector<StateIndex>> tables(level + 1);
  std::vector<RawLevelView> views(level + 1);
  views[0] = {2, {}};
  std::uint64_t states = 2;
  for (std::uint32_t i = 1; i <= level; ++i) {
    const auto side = static_cast<StateIndex>(states);
    tables[i].resize(static_cast<std::size_t>(side) * side);
    for (std::size_t e = 0; e < tables[i].size(); ++e) tables[i][e] = static_cast<StateIndex>(e);
    states = static_cast<std::uint64_t>(side) * side;
    views[i] = {static_cast<std::uint32_t>(states), tables[i]};
  }
  return reduce(m, views, outputs).tidd;
}

inline Tidd from_truth_table(Manager& m, std::uint32_t level, std::initializer_list<Value> outputs) {
  std::vector<Value> v(outputs);
  return from_truth_table(m, level, std::span<const Value>(v));
}

/// H_{2^i} over interleaved row/column bits: values [1, -1].
inline Tidd hadamard_family(Manager& m, std::uint32_t i) {
  if (i < 1) throw IndexOutOfRange("hadamard_family needs i >= 1");
  LayerHandle l = m.intern(m.fork(), TransitionTable{{0, 0}, {0, 1}});
  for (std::uint32_t j = 2; j <= i; ++j) l = m.intern(l, TransitionTable{{0, 1}, {1, 0}});
  return Tidd{l, {Value(1), Value(-1)}};
}

/// EQ_{2^l} over interleaved x/y bits: values [1, 0].
inline Tidd equality_relation(Manager& m, std::uint32_t l) {
  if (l < 1) throw IndexOutOfRange("equality_relation needs l >= 1");
  LayerHandle layer = m.intern(m.fork(), TransitionTable{{0, 1}, {1, 0}});
  for (std::uint32_t j = 2; j <= l; ++j) layer = m.intern(layer, TransitionTable{{0, 1}, {1, 1}});
  return Tidd{layer, {Value(1), Value(0)}};
}

inline std::uint32_t log2_exact(std::uint64_t n) {
  if (n == 0 || !std::has_single_bit(n)) throw NotPowerOfTwo(std::to_string(n) + " is not a power of two");
  return static_cast<std::uint32_t>(std::countr_zero(n));
}

/// The n factors f_i of h_n: "entry n-1-i of row i is 0", each over n^2 variables.
inline std::vector<Tidd> anti_diagonal_factors(Manager& m, std::uint64_t n) {
  std::uint32_t l = log2_exact(n);
  if (l < 1) throw NotPowerOfTwo("anti_diagonal needs n >= 2");
  const Tidd one = true_tidd(m, 2 * l);
  std::vector<Tidd> out;
  for (std::uint64_t i = 0; i < n; ++i)
    out.push_back(apply(m, ops::logical_xor(), projection(m, 2 * l, i * n + n - 1 - i), one));
  return out;
}

/// h_n: 1 iff every anti-diagonal entry of the row-major n x n bit matrix is 0.
inline Tidd anti_diagonal(Manager& m, std::uint64_t n) {
  auto factors = anti_diagonal_factors(m, n);
  Tidd acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) acc = apply(m, ops::logical_and(), acc, factors[i]);
  return acc;
}

enum class Family { Hadamard, Equality, AntiDiagonal };

struct FamilySpec {
  Family family = Family::Hadamard;
  std::uint64_t parameter = 1;  // exponent i for Hadamard/Equality, row count n for AntiDiagonal
};

inline Tidd build_family(Manager& m, const FamilySpec& spec) {
  switch (spec.family) {
    case Family::Hadamard: return hadamard_family(m, static_cast<std::uint32_t>(spec.parameter));
    case Family::Equality: return equality_relation(m, static_cast<std::uint32_t>(spec.parameter));
    case Family::AntiDiagonal: return anti_diagonal(m, spec.parameter);
  }
  throw IndexOutOfRange("unknown family");
}

}  // namespace tidd
