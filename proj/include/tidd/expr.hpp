#pragma once

#include "tidd/builders.hpp"
#include "tidd/oracle.hpp"
#include "tidd/ops.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace tidd::expr {

/// A random expression over projections, built twice: once through the diagram
/// operations and once pointwise on dense tables.
struct Expression {
  Tidd tidd;
  oracle::DenseFunction dense;
  std::string text;
};

namespace detail {

struct Builder {
  Manager& m;
  std::uint32_t level;
  std::mt19937_64 rng;
  bool with_dense;
  std::vector<oracle::DenseFunction> projections;  // dense projection tables, built lazily

  std::uint64_t pick(std::uint64_t n) { return rng() % n; }

  const oracle::DenseFunction& dense_projection(std::uint64_t index) {
    if (projections.empty()) projections.resize(std::uint64_t{1} << level);
    auto& d = projections[index];
    if (d.outputs.empty())
      d = oracle::tabulate(level, [index](std::span<const std::uint8_t> a) { return Value::boolean(a[index]); });
    return d;
  }

  Expression leaf() {
    const std::uint64_t index = pick(std::uint64_t{1} << level);
    Expression e{projection(m, level, index), {}, "x" + std::to_string(index)};
    if (with_dense) e.dense = dense_projection(index);
    return e;
  }

  Expression combine(const BinaryOp& op, Expression a, Expression b) {
    Expression e{apply(m, op, a.tidd, b.tidd), {}, "(" + a.text + " " + op.id + " " + b.text + ")"};
    if (with_dense) e.dense = oracle::dense_apply(op.fn, a.dense, b.dense);
    return e;
  }

  /// Boolean subtrees use AND/OR/XOR; numeric ones PLUS/TIMES over either kind.
  Expression boolean(int depth) {
    if (depth == 0 || pick(4) == 0) return leaf();
    static const BinaryOp kOps[] = {ops::logical_and(), ops::logical_or(), ops::logical_xor()};
    const auto& op = kOps[pick(3)];
    auto a = boolean(depth - 1);
    auto b = boolean(depth - 1);
    return combine(op, std::move(a), std::move(b));
  }

  Expression numeric(int depth) {
    if (depth == 0) return leaf();
    if (pick(3) == 0) return boolean(depth);
    static const BinaryOp kOps[] = {ops::plus(), ops::times()};
    const auto& op = kOps[pick(2)];
    auto a = numeric(depth - 1);
    auto b = numeric(depth - 1);
    return combine(op, std::move(a), std::move(b));
  }
};

}  // namespace detail

/// Seeded random expression over the 2^level projections. The dense side is
/// only built when `with_dense` is set and the level is within oracle scale.
inline Expression random_expression(Manager& m, std::uint32_t level, std::uint64_t seed, int depth = 4,
                                    bool with_dense = true) {
  if (with_dense) oracle::check_scale(level);
  detail::Builder b{m, level, std::mt19937_64(seed), with_dense, {}};
  return b.numeric(depth);
}

/// Terms of a seeded random function: `count` random expressions of the given depth.
inline std::vector<Tidd> random_terms(Manager& m, std::uint32_t level, std::uint64_t seed, std::size_t count,
                                      int depth = 2) {
  std::vector<Tidd> terms;
  for (std::size_t i = 0; i < count; ++i)
    terms.push_back(random_expression(m, level, seed * 1000003u + i, depth, false).tidd);
  return terms;
}

/// ((t0 op t1) op t2) op ...
inline Tidd fold_left(Manager& m, const BinaryOp& op, const std::vector<Tidd>& terms) {
  Tidd acc = terms.at(0);
  for (std::size_t i = 1; i < terms.size(); ++i) acc = apply(m, op, acc, terms[i]);
  return acc;
}

/// Shuffles the terms, then combines random adjacent pairs until one remains.
/// `op` must be associative and commutative for this to agree with fold_left.
inline Tidd fold_shuffled(Manager& m, const BinaryOp& op, std::vector<Tidd> terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = terms.size(); i > 1; --i) std::swap(terms[i - 1], terms[rng() % i]);
  while (terms.size() > 1) {
    const std::size_t at = rng() % (terms.size() - 1);
    terms[at] = apply(m, op, terms[at + 1], terms[at]);
    terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(at) + 1);
  }
  return terms.at(0);
}

}  // namespace tidd::expr
