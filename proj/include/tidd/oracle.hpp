#pragma once

#include "tidd/core.hpp"

#include <cstdlib>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

namespace tidd::oracle {

/// Exhaustive reference semantics. Nothing here touches the reduction machinery;
/// tidd::evaluate is the only bridge from diagrams to tables.

inline constexpr std::uint64_t kMaxVariables = 20;

/// outputs[i] = f(bits of i read big-endian) over 2^level variables.
struct DenseFunction {
  std::uint32_t level = 0;
  std::vector<Value> outputs;

  std::uint64_t num_variables() const { return std::uint64_t{1} << level; }
};

inline void check_scale(std::uint32_t level, std::uint64_t limit = kMaxVariables) {
  if (level >= 63 || (std::uint64_t{1} << level) > limit)
    throw OracleScaleLimit(std::to_string(std::uint64_t{1} << std::min<std::uint32_t>(level, 62)) +
                           " variables exceed the oracle limit of " + std::to_string(limit));
}

inline DenseFunction tabulate(std::uint32_t level, const std::function<Value(std::span<const std::uint8_t>)>& fn) {
  check_scale(level);
  DenseFunction d{level, {}};
  const std::uint64_t vars = d.num_variables();
  const std::uint64_t size = std::uint64_t{1} << vars;
  d.outputs.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) d.outputs.push_back(fn(assignment_from_index(i, vars)));
  return d;
}

inline DenseFunction dense_from_tidd(const Tidd& f) {
  return tabulate(f.level(), [&](std::span<const std::uint8_t> a) { return evaluate(f, a); });
}

inline DenseFunction dense_apply(const std::function<Value(const Value&, const Value&)>& op, const DenseFunction& a,
                                 const DenseFunction& b) {
  if (a.level != b.level) throw ShapeMismatch("dense_apply on different levels");
  DenseFunction out{a.level, {}};
  out.outputs.reserve(a.outputs.size());
  for (std::size_t i = 0; i < a.outputs.size(); ++i) out.outputs.push_back(op(a.outputs[i], b.outputs[i]));
  return out;
}

// Matrices: level L means 2^L interleaved variables, n = 2^(L-1) qubits.

inline std::uint32_t dense_qubits(const DenseFunction& d) {
  if (d.level < 1) throw ShapeMismatch("a matrix needs at least two variables");
  return std::uint32_t{1} << (d.level - 1);
}

inline std::uint64_t interleave(std::uint32_t qubits, std::uint64_t row, std::uint64_t col) {
  std::uint64_t idx = 0;
  for (std::uint32_t j = 0; j < qubits; ++j) {
    idx = (idx << 1) | ((row >> (qubits - 1 - j)) & 1u);
    idx = (idx << 1) | ((col >> (qubits - 1 - j)) & 1u);
  }
  return idx;
}

inline const Value& dense_entry(const DenseFunction& d, std::uint64_t row, std::uint64_t col) {
  return d.outputs[interleave(dense_qubits(d), row, col)];
}

inline DenseFunction dense_matrix(std::uint32_t qubits, const std::function<Value(std::uint64_t, std::uint64_t)>& fn) {
  std::uint32_t level = 1;
  while ((std::uint32_t{1} << (level - 1)) < qubits) ++level;
  check_scale(level);
  DenseFunction d{level, std::vector<Value>(std::uint64_t{1} << (2 * qubits))};
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c) d.outputs[interleave(qubits, r, c)] = fn(r, c);
  return d;
}

inline DenseFunction dense_matmul(const DenseFunction& a, const DenseFunction& b) {
  if (a.level != b.level) throw ShapeMismatch("dense_matmul on different shapes");
  const std::uint32_t n = dense_qubits(a);
  const std::uint64_t dim = std::uint64_t{1} << n;
  return dense_matrix(n, [&](std::uint64_t r, std::uint64_t c) {
    Value s;
    for (std::uint64_t k = 0; k < dim; ++k) s += dense_entry(a, r, k) * dense_entry(b, k, c);
    return s;
  });
}

/// out(w || w') = a(w) * b(w').
inline DenseFunction dense_kron(const DenseFunction& a, const DenseFunction& b) {
  if (a.level != b.level) throw ShapeMismatch("dense_kron on different levels");
  check_scale(a.level + 1);
  DenseFunction out{a.level + 1, {}};
  out.outputs.reserve(a.outputs.size() * b.outputs.size());
  for (const auto& x : a.outputs)
    for (const auto& y : b.outputs) out.outputs.push_back(x * y);
  return out;
}

inline DenseFunction dense_transpose(const DenseFunction& a) {
  const std::uint32_t n = dense_qubits(a);
  return dense_matrix(n, [&](std::uint64_t r, std::uint64_t c) { return dense_entry(a, c, r); });
}

inline bool exhaustive_equiv(const Tidd& f, const DenseFunction& d) {
  check_scale(f.level());
  if (f.level() != d.level) throw ShapeMismatch("exhaustive_equiv on different levels");
  const std::uint64_t vars = f.num_variables();
  for (std::uint64_t i = 0; i < d.outputs.size(); ++i)
    if (evaluate(f, assignment_from_index(i, vars)) != d.outputs[i]) return false;
  return true;
}

namespace detail {

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h = hash_combine(h, x);
    return h;
  }
};

}  // namespace detail

/// Number of Myhill-Nerode classes among the 2^(2^i) strings of length 2^i:
/// two strings are equivalent iff plugging either into every aligned slot of
/// every context gives the same output.
inline std::uint64_t class_count_at_level(const DenseFunction& d, std::uint32_t i) {
  if (i > d.level) throw IndexOutOfRange("level " + std::to_string(i) + " above " + std::to_string(d.level));
  check_scale(d.level);
  // Outputs as small ids so signatures are plain integer vectors.
  std::unordered_map<Value, std::uint32_t, ValueHash> ids;
  std::vector<std::uint32_t> out(d.outputs.size());
  for (std::size_t k = 0; k < d.outputs.size(); ++k)
    out[k] = ids.try_emplace(d.outputs[k], static_cast<std::uint32_t>(ids.size())).first->second;

  const std::uint64_t total_bits = d.num_variables();
  const std::uint64_t block_bits = std::uint64_t{1} << i;
  const std::uint64_t slots = total_bits / block_bits;
  const std::uint64_t strings = std::uint64_t{1} << block_bits;
  const std::uint64_t context_bits = total_bits - block_bits;
  const std::uint64_t contexts = std::uint64_t{1} << context_bits;

  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::VectorHash> classes;
  std::vector<std::uint32_t> sig;
  for (std::uint64_t u = 0; u < strings; ++u) {
    sig.clear();
    sig.reserve(slots * contexts);
    for (std::uint64_t slot = 0; slot < slots; ++slot) {
      // Slot 0 holds the most significant block.
      const std::uint64_t shift = (slots - 1 - slot) * block_bits;
      for (std::uint64_t c = 0; c < contexts; ++c) {
        const std::uint64_t low = c & ((std::uint64_t{1} << shift) - 1);
        const std::uint64_t high = shift >= context_bits ? 0 : (c >> shift);
        const std::uint64_t idx = (high << (shift + block_bits)) | (u << shift) | low;
        sig.push_back(out[idx]);
      }
    }
    classes.try_emplace(sig, static_cast<std::uint32_t>(classes.size()));
  }
  return classes.size();
}

/// Class count at the block level for f(x) = AND_b g_b(block_b), where the
/// blocks are the aligned substrings of length 2^i and every g_b is satisfiable.
/// Then a block string's behavior is exactly its predicate vector (g_b(u))_b.
inline std::uint64_t class_count_of_block_conjunction(
    std::uint32_t i, const std::vector<std::function<bool(std::span<const std::uint8_t>)>>& predicates) {
  const std::uint64_t block_bits = std::uint64_t{1} << i;
  if (block_bits > 24) throw OracleScaleLimit("block strings too long");
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::VectorHash> classes;
  std::vector<std::uint32_t> sig(predicates.size());
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << block_bits); ++u) {
    Assignment bits = assignment_from_index(u, block_bits);
    for (std::size_t b = 0; b < predicates.size(); ++b) sig[b] = predicates[b](bits) ? 1 : 0;
    classes.try_emplace(sig, static_cast<std::uint32_t>(classes.size()));
  }
  return classes.size();
}

/// The h_n factors as row predicates: row i passes iff its entry n-1-i is 0.
inline std::vector<std::function<bool(std::span<const std::uint8_t>)>> anti_diagonal_row_predicates(
    std::uint64_t n, std::uint64_t factors) {
  std::vector<std::function<bool(std::span<const std::uint8_t>)>> preds;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i < factors) preds.push_back([n, i](std::span<const std::uint8_t> row) { return row[n - 1 - i] == 0; });
    else preds.push_back([](std::span<const std::uint8_t>) { return true; });
  }
  return preds;
}

/// Oracle limit from TIDD_ORACLE_MAX_VARS (default 16).
inline std::uint64_t max_vars_from_env() {
  if (const char* s = std::getenv("TIDD_ORACLE_MAX_VARS")) {
    try {
      auto v = std::stoull(s);
      if (v > 0) return std::min<std::uint64_t>(v, kMaxVariables);
    } catch (const std::exception&) {
    }
  }
  return 16;
}

}  // namespace tidd::oracle
