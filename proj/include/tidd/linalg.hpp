#pragma once

#include "tidd/builders.hpp"
#include "tidd/ops.hpp"
#include "tidd/reduce.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace tidd {

/// Square 2^qubits matrix over interleaved variables <x0, y0, ..., x_{n-1}, y_{n-1}>,
/// x = row bits and y = column bits, most significant first.
struct MatrixTidd {
  Tidd t;
  std::uint32_t qubits = 1;
};

/// Column-replicated vector: every column of the matrix equals the vector.
struct VectorTidd {
  MatrixTidd m;
};

inline std::uint32_t matrix_level(std::uint32_t qubits) { return 1 + log2_exact(qubits); }

inline MatrixTidd as_matrix(const Tidd& t) {
  if (t.level() < 1) throw ShapeMismatch("a matrix needs at least two variables");
  return MatrixTidd{t, std::uint32_t{1} << (t.level() - 1)};
}

inline bool equal(const MatrixTidd& a, const MatrixTidd& b) { return a.qubits == b.qubits && equal(a.t, b.t); }
inline bool equal(const VectorTidd& a, const VectorTidd& b) { return equal(a.m, b.m); }

/// Interleaved assignment for entry (row, col) of an n-qubit matrix.
inline Assignment matrix_assignment(std::uint32_t qubits, std::uint64_t row, std::uint64_t col) {
  Assignment a(2 * static_cast<std::size_t>(qubits));
  for (std::uint32_t j = 0; j < qubits; ++j) {
    a[2 * j] = static_cast<std::uint8_t>((row >> (qubits - 1 - j)) & 1u);
    a[2 * j + 1] = static_cast<std::uint8_t>((col >> (qubits - 1 - j)) & 1u);
  }
  return a;
}

inline Value entry(const MatrixTidd& a, std::uint64_t row, std::uint64_t col) {
  return evaluate(a.t, matrix_assignment(a.qubits, row, col));
}

// ---------------------------------------------------------------------------
// Weighted triple sums

/// Sorts by (q, p) and merges repeated pairs by adding weights.
inline TripleSum canonical_sum(std::vector<Triple> terms) {
  std::sort(terms.begin(), terms.end(), [](const Triple& x, const Triple& y) {
    return x.q != y.q ? x.q < y.q : x.p < y.p;
  });
  TripleSum out;
  for (auto& t : terms) {
    if (!out.terms.empty() && out.terms.back().q == t.q && out.terms.back().p == t.p) out.terms.back().w += t.w;
    else out.terms.push_back(std::move(t));
  }
  return out;
}

inline TripleSum operator+(const TripleSum& x, const TripleSum& y) {
  std::vector<Triple> all(x.terms);
  all.insert(all.end(), y.terms.begin(), y.terms.end());
  return canonical_sum(std::move(all));
}

namespace detail {

class TripleInterner {
 public:
  StateIndex intern(TripleSum s, TripleLevel& level) {
    auto [it, inserted] = index_.try_emplace(std::move(s), level.num_states);
    if (inserted) {
      level.meta.push_back(it->first);
      ++level.num_states;
    }
    return it->second;
  }

 private:
  std::unordered_map<TripleSum, StateIndex, TripleSumHash> index_;
};

}  // namespace detail

/// Levels of the product automaton for A * B whose states are triple sums.
/// Memoized per (layer of A, layer of B).
inline std::shared_ptr<const TripleLevel> matmul_levels(Manager& m, LayerHandle a, LayerHandle b) {
  auto key = std::make_pair(static_cast<const void*>(a), static_cast<const void*>(b));
  auto& cache = m.caches().triples;
  if (auto it = cache.find(key); it != cache.end()) {
    ++m.stats().triple_hits;
    return it->second;
  }
  ++m.stats().triple_misses;

  auto out = std::make_shared<TripleLevel>();
  out->level = a->level;
  if (a->is_level_zero()) {
    // Leaf symbols 0 and 1; the sums start one level up.
    out->num_states = 2;
    out->meta.resize(2);
  } else if (a->level == 1) {
    auto child = matmul_levels(m, a->child, b->child);
    // A DontCare leaf plays both roles q_0 and q_1.
    auto qa = [&](StateIndex bit) { return a->child->leaf(static_cast<std::uint8_t>(bit)); };
    auto pb = [&](StateIndex bit) { return b->child->leaf(static_cast<std::uint8_t>(bit)); };
    detail::TripleInterner interner;
    out->table.resize(4);
    for (StateIndex i = 0; i < 2; ++i) {
      for (StateIndex j = 0; j < 2; ++j) {
        std::vector<Triple> terms;
        for (StateIndex k = 0; k < 2; ++k) terms.push_back({a->at(qa(i), qa(k)), b->at(pb(k), pb(j)), BigInt(1)});
        out->table[2 * i + j] = interner.intern(canonical_sum(std::move(terms)), *out);
      }
    }
    out->child = std::move(child);
  } else {
    auto child = matmul_levels(m, a->child, b->child);
    const std::uint32_t n = child->num_states;
    detail::TripleInterner interner;
    out->table.resize(static_cast<std::size_t>(n) * n);
    std::vector<Triple> terms;
    for (StateIndex x = 0; x < n; ++x) {
      const auto& rx = child->meta[x].terms;
      for (StateIndex y = 0; y < n; ++y) {
        const auto& ry = child->meta[y].terms;
        terms.clear();
        terms.reserve(rx.size() * ry.size());
        for (const auto& u : rx)
          for (const auto& v : ry) terms.push_back({a->at(u.q, v.q), b->at(u.p, v.p), u.w * v.w});
        out->table[static_cast<std::size_t>(x) * n + y] = interner.intern(canonical_sum(terms), *out);
      }
    }
    out->child = std::move(child);
  }
  cache.emplace(key, out);
  return out;
}

/// A * B. Top triple sums resolve to sum V_A(q) V_B(p) w, then the stack is reduced.
inline MatrixTidd matmul(Manager& m, const MatrixTidd& a, const MatrixTidd& b) {
  if (a.qubits != b.qubits || a.t.level() != b.t.level())
    throw ShapeMismatch("matmul on " + std::to_string(a.qubits) + " and " + std::to_string(b.qubits) + " qubits");
  auto levels = matmul_levels(m, a.t.top, b.t.top);
  std::vector<Value> values;
  values.reserve(levels->num_states);
  for (const auto& sum : levels->meta) {
    Value v;
    for (const auto& t : sum.terms) v += a.t.values[t.q] * b.t.values[t.p] * t.w;
    values.push_back(std::move(v));
  }
  auto views = views_of(*levels);
  return MatrixTidd{reduce(m, views, values).tidd, a.qubits};
}

inline MatrixTidd identity_matrix(Manager& m, std::uint32_t qubits) {
  return MatrixTidd{equality_relation(m, matrix_level(qubits)), qubits};
}

/// Kronecker product of 2x2 factors on the given qubits, identity elsewhere.
/// Only subtrees holding a factor are rebuilt; the rest reuse identity stacks.
inline MatrixTidd tensor_with_identity(Manager& m, std::uint32_t qubits,
                                       std::span<const std::pair<std::uint32_t, Tidd>> factors) {
  const std::uint32_t top_level = matrix_level(qubits);
  std::map<std::uint32_t, Tidd> by_qubit;
  for (const auto& [q, t] : factors) {
    if (q >= qubits) throw ShapeMismatch("qubit " + std::to_string(q) + " out of range");
    if (t.level() != 1) throw ShapeMismatch("tensor factors must be single-qubit (level 1)");
    by_qubit.insert_or_assign(q, t);
  }
  auto build = [&](auto&& self, std::uint32_t level, std::uint32_t first) -> Tidd {
    const std::uint32_t count = std::uint32_t{1} << (level - 1);
    auto lo = by_qubit.lower_bound(first);
    if (lo == by_qubit.end() || lo->first >= first + count) return equality_relation(m, level);
    if (level == 1) return lo->second;
    Tidd left = self(self, level - 1, first);
    Tidd right = self(self, level - 1, first + count / 2);
    return kronecker(m, left, right);
  };
  return MatrixTidd{build(build, top_level, 0), qubits};
}

/// |bits><1...1|: entry(r, c) = [r == bits] for every column c.
inline VectorTidd vector_from_basis_state(Manager& m, std::uint32_t qubits, std::span<const std::uint8_t> bits) {
  if (bits.size() != qubits)
    throw ShapeMismatch("basis state has " + std::to_string(bits.size()) + " bits for " + std::to_string(qubits) + " qubits");
  matrix_level(qubits);
  const Tidd zero_row = from_truth_table(m, 1, {1, 1, 0, 0});
  const Tidd one_row = from_truth_table(m, 1, {0, 0, 1, 1});
  std::vector<Tidd> layer;
  layer.reserve(qubits);
  for (std::uint8_t b : bits) layer.push_back(b ? one_row : zero_row);
  while (layer.size() > 1) {
    std::vector<Tidd> next;
    next.reserve(layer.size() / 2);
    for (std::size_t i = 0; i < layer.size(); i += 2) next.push_back(kronecker(m, layer[i], layer[i + 1]));
    layer = std::move(next);
  }
  return VectorTidd{MatrixTidd{layer[0], qubits}};
}

/// A * (v 1^T) = (A v) 1^T, so the product stays column-replicated.
inline VectorTidd matvec(Manager& m, const MatrixTidd& a, const VectorTidd& v) {
  return VectorTidd{matmul(m, a, v.m)};
}

}  // namespace tidd
