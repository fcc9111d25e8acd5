#pragma once

#include "tidd/constant.hpp"
#include "tidd/reduce.hpp"

#include <functional>
#include <string>

namespace tidd {

/// Pointwise value operation. `id` keys the apply memo table, so `fn` must be pure
/// and two ops with the same id must compute the same function.
struct BinaryOp {
  std::string id;
  std::function<Value(const Value&, const Value&)> fn;
};

namespace ops {

namespace detail {
inline void require_boolean(const Value& x, const Value& y, const char* op) {
  if (!x.is_boolean() || !y.is_boolean())
    throw ValueDomainError(std::string(op) + " needs boolean operands, got " + x.to_string() + " and " + y.to_string());
}
}  // namespace detail

inline BinaryOp plus() {
  return {"PLUS", [](const Value& x, const Value& y) { return x + y; }};
}
inline BinaryOp times() {
  return {"TIMES", [](const Value& x, const Value& y) { return x * y; }};
}
inline BinaryOp minus() {
  return {"MINUS", [](const Value& x, const Value& y) { return x - y; }};
}
inline BinaryOp logical_and() {
  return {"AND", [](const Value& x, const Value& y) {
            detail::require_boolean(x, y, "AND");
            return Value::boolean(x.as_bool() && y.as_bool());
          }};
}
inline BinaryOp logical_or() {
  return {"OR", [](const Value& x, const Value& y) {
            detail::require_boolean(x, y, "OR");
            return Value::boolean(x.as_bool() || y.as_bool());
          }};
}
inline BinaryOp logical_xor() {
  return {"XOR", [](const Value& x, const Value& y) {
            detail::require_boolean(x, y, "XOR");
            return Value::boolean(x.as_bool() != y.as_bool());
          }};
}
/// Keeps the left operand.
inline BinaryOp first() {
  return {"FIRST", [](const Value& x, const Value&) { return x; }};
}

}  // namespace ops

/// Pointwise combination op(f(a), g(a)) via pair product plus reduction.
inline Tidd apply(Manager& m, const BinaryOp& op, const Tidd& f, const Tidd& g) {
  if (f.level() != g.level())
    throw LevelMismatch("apply on levels " + std::to_string(f.level()) + " and " + std::to_string(g.level()));
  ::tidd::detail::ApplyKey key{op.id, f, g};
  auto& cache = m.caches().apply;
  if (auto it = cache.find(key); it != cache.end()) {
    ++m.stats().apply_hits;
    return it->second;
  }
  auto product = pair_product(m, f.top, g.top);
  std::vector<Value> values;
  values.reserve(product->num_states);
  for (const auto& pq : product->meta) values.push_back(op.fn(f.values[pq.q], g.values[pq.p]));
  auto views = views_of(*product);
  Tidd result = reduce(m, views, values).tidd;
  cache.emplace(std::move(key), result);
  return result;
}

inline Tidd scalar_multiply(Manager& m, const Value& c, const Tidd& f) {
  return apply(m, ops::times(), f, constant(m, f.level(), c));
}

/// Tidd of level l+1 with value a(w) * b(w') on w || w'.
///
/// Both halves are read by the pair-product stack of (a, b); the new top layer
/// combines the a-component of the left child with the b-component of the right.
inline Tidd kronecker(Manager& m, const Tidd& a, const Tidd& b) {
  if (a.level() != b.level())
    throw LevelMismatch("kronecker on levels " + std::to_string(a.level()) + " and " + std::to_string(b.level()));
  ::tidd::detail::ApplyKey key{"KRON", a, b};
  auto& cache = m.caches().kron;
  if (auto it = cache.find(key); it != cache.end()) {
    ++m.stats().kron_hits;
    return it->second;
  }
  auto product = pair_product(m, a.top, b.top);
  const std::uint32_t n = product->num_states;
  std::vector<StateIndex> table(static_cast<std::size_t>(n) * n);
  std::vector<Value> values;
  std::unordered_map<std::uint64_t, StateIndex> index;
  for (StateIndex x = 0; x < n; ++x) {
    for (StateIndex y = 0; y < n; ++y) {
      StateIndex q = product->meta[x].q;
      StateIndex p = product->meta[y].p;
      auto [it, inserted] = index.try_emplace((std::uint64_t{q} << 32) | p, static_cast<StateIndex>(values.size()));
      if (inserted) values.push_back(a.values[q] * b.values[p]);
      table[static_cast<std::size_t>(x) * n + y] = it->second;
    }
  }
  auto views = views_of(*product);
  views.push_back({static_cast<std::uint32_t>(values.size()), table});
  Tidd result = reduce(m, views, values).tidd;
  cache.emplace(std::move(key), result);
  return result;
}

}  // namespace tidd
