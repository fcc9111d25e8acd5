#pragma once

#include "tidd/core.hpp"

#include <span>
#include <unordered_map>
#include <vector>

namespace tidd {

struct RenumberResult {
  TransitionTable table;
  /// permutation[old] = new; kNoState for indices that never occur.
  std::vector<StateIndex> permutation;
};

/// Renames parent indices so that first occurrences in row-major order read 0, 1, 2, ...
inline RenumberResult canonical_renumber(const TransitionTable& raw) {
  RenumberResult out;
  StateIndex max_entry = 0;
  for (StateIndex e : raw.entries) max_entry = std::max(max_entry, e);
  out.permutation.assign(raw.entries.empty() ? 0 : max_entry + 1, kNoState);
  out.table.side = raw.side;
  out.table.entries.reserve(raw.entries.size());
  StateIndex next = 0;
  for (StateIndex e : raw.entries) {
    if (out.permutation[e] == kNoState) out.permutation[e] = next++;
    out.table.entries.push_back(out.permutation[e]);
  }
  return out;
}

/// Unreduced layer of a stack; level 0 has 2 states (Fork) or 1 (DontCare) and no table.
struct RawLevelView {
  std::uint32_t num_states = 0;
  std::span<const StateIndex> table;  // side = previous level's num_states
};

/// Surjective old-state -> class map with leftmost representatives.
struct ReductionMap {
  std::vector<StateIndex> class_of;
  std::uint32_t num_classes = 0;
};

struct ReducedStack {
  LayerHandle top = nullptr;
  /// state_map[level][raw state] = state index in the reduced stack.
  std::vector<std::vector<StateIndex>> state_map;
  /// top class index -> reduced top state index.
  std::vector<StateIndex> top_permutation;
};

struct ReduceResult {
  Tidd tidd;
  std::vector<std::vector<StateIndex>> state_map;
};

/// Merges top states carrying the same value; the leftmost occurrence represents each class.
inline ReductionMap top_classes_by_value(std::span<const Value> values, std::vector<Value>* class_values = nullptr) {
  ReductionMap map;
  map.class_of.resize(values.size());
  std::unordered_map<Value, StateIndex, ValueHash> index;
  for (std::size_t s = 0; s < values.size(); ++s) {
    auto [it, inserted] = index.try_emplace(values[s], map.num_classes);
    if (inserted) {
      ++map.num_classes;
      if (class_values) class_values->push_back(values[s]);
    }
    map.class_of[s] = it->second;
  }
  return map;
}

namespace detail {

/// Classes of a level given the final classes of the level above: two states are
/// equivalent iff their rows and columns in the parent table map to the same classes.
inline ReductionMap classify_level(std::uint32_t n, std::span<const StateIndex> parent_table,
                                   std::span<const StateIndex> parent_class) {
  ReductionMap map;
  map.class_of.assign(n, kNoState);
  auto row = [&](StateIndex s, StateIndex t) { return parent_class[parent_table[static_cast<std::size_t>(s) * n + t]]; };
  auto col = [&](StateIndex s, StateIndex t) { return parent_class[parent_table[static_cast<std::size_t>(t) * n + s]]; };
  std::unordered_map<std::size_t, std::vector<StateIndex>> reps_by_hash;
  for (StateIndex s = 0; s < n; ++s) {
    std::size_t h = 0;
    for (StateIndex t = 0; t < n; ++t) h = hash_combine(hash_combine(h, row(s, t)), col(s, t));
    auto& reps = reps_by_hash[h];
    StateIndex found = kNoState;
    for (StateIndex r : reps) {
      bool same = true;
      for (StateIndex t = 0; t < n && same; ++t) same = row(s, t) == row(r, t) && col(s, t) == col(r, t);
      if (same) {
        found = map.class_of[r];
        break;
      }
    }
    if (found == kNoState) {
      found = map.num_classes++;
      reps.push_back(s);
    }
    map.class_of[s] = found;
  }
  return map;
}

}  // namespace detail

/// Minimizes a leveled automaton whose top states are partitioned by `top`.
///
/// Classes are computed in one pass from the top down: in a leveled automaton the
/// classes of level i depend only on the final classes of level i+1. The stack is
/// then rebuilt bottom-up from leftmost representatives and each table is put in
/// first-occurrence order. Every raw state must be reachable.
inline ReducedStack reduce_with_classes(Manager& m, std::span<const RawLevelView> levels, const ReductionMap& top) {
  const std::size_t height = levels.size() - 1;
  std::vector<ReductionMap> cls(levels.size());
  cls[height] = top;
  for (std::size_t i = height; i-- > 0;)
    cls[i] = detail::classify_level(levels[i].num_states, levels[i + 1].table, cls[i + 1].class_of);

  ReducedStack out;
  out.state_map.resize(levels.size());
  std::vector<StateIndex> perm;  // class -> reduced index for the current level
  std::vector<StateIndex> reps;  // reduced index -> raw representative
  LayerHandle current = nullptr;

  auto fill_reps = [](const ReductionMap& c, const std::vector<StateIndex>& p) {
    std::vector<StateIndex> r(c.num_classes, kNoState);
    for (StateIndex s = 0; s < c.class_of.size(); ++s) {
      StateIndex idx = p[c.class_of[s]];
      if (r[idx] == kNoState) r[idx] = s;
    }
    return r;
  };

  // Level 0: the Fork numbering is fixed by the leaf symbols.
  {
    const auto& c0 = cls[0];
    perm.assign(c0.num_classes, kNoState);
    if (c0.num_classes == 2) {
      perm[c0.class_of[0]] = 0;
      perm[c0.class_of[1]] = 1;
      current = m.fork();
    } else {
      perm[0] = 0;
      current = m.dont_care();
    }
    out.state_map[0].resize(c0.class_of.size());
    for (StateIndex s = 0; s < c0.class_of.size(); ++s) out.state_map[0][s] = perm[c0.class_of[s]];
    reps = fill_reps(c0, perm);
  }

  for (std::size_t i = 1; i <= height; ++i) {
    const auto& ci = cls[i];
    const std::uint32_t child_raw = levels[i - 1].num_states;
    const auto side = static_cast<std::uint32_t>(reps.size());
    TransitionTable t;
    t.side = side;
    t.entries.resize(static_cast<std::size_t>(side) * side);
    for (StateIndex a = 0; a < side; ++a)
      for (StateIndex b = 0; b < side; ++b)
        t.entries[static_cast<std::size_t>(a) * side + b] =
            ci.class_of[levels[i].table[static_cast<std::size_t>(reps[a]) * child_raw + reps[b]]];
    auto renum = canonical_renumber(t);
    current = m.intern(current, std::move(renum.table));
    perm = std::move(renum.permutation);
    out.state_map[i].resize(ci.class_of.size());
    for (StateIndex s = 0; s < ci.class_of.size(); ++s) out.state_map[i][s] = perm[ci.class_of[s]];
    reps = fill_reps(ci, perm);
  }
  out.top = current;
  out.top_permutation = perm;
  return out;
}

/// Reduces a stack whose top states carry `values` (one per raw top state).
inline ReduceResult reduce(Manager& m, std::span<const RawLevelView> levels, std::span<const Value> values) {
  std::vector<Value> class_values;
  auto top = top_classes_by_value(values, &class_values);
  auto stack = reduce_with_classes(m, levels, top);
  ReduceResult out;
  out.tidd.top = stack.top;
  out.tidd.values.resize(class_values.size());
  for (StateIndex c = 0; c < class_values.size(); ++c) out.tidd.values[stack.top_permutation[c]] = class_values[c];
  out.state_map = std::move(stack.state_map);
  return out;
}

/// Views over an interned stack, bottom-up.
inline std::vector<RawLevelView> views_of(LayerHandle top) {
  std::vector<RawLevelView> v;
  for (LayerHandle l : layers_of(top)) v.push_back({l->num_states, l->table.entries});
  return v;
}

/// Views over a product chain, bottom-up. The chain must outlive the views.
template <class Meta>
std::vector<RawLevelView> views_of(const ProductLevel<Meta>& top) {
  std::vector<RawLevelView> v(top.level + 1);
  for (const ProductLevel<Meta>* l = &top; l != nullptr; l = l->child.get()) v[l->level] = {l->num_states, l->table};
  return v;
}

/// Re-reduces an interned Tidd; a canonical input comes back with the same handle.
inline Tidd reduce(Manager& m, const Tidd& f) {
  auto views = views_of(f.top);
  return reduce(m, views, f.values).tidd;
}

// ---------------------------------------------------------------------------
// Pair product

/// Product of two layer stacks of equal level, keeping only reachable state pairs.
/// Memoized per (layer, layer).
inline std::shared_ptr<const PairLevel> pair_product(Manager& m, LayerHandle a, LayerHandle b) {
  if (a->level != b->level)
    throw LevelMismatch("pair_product on levels " + std::to_string(a->level) + " and " + std::to_string(b->level));
  auto key = std::make_pair(static_cast<const void*>(a), static_cast<const void*>(b));
  auto& cache = m.caches().pairs;
  if (auto it = cache.find(key); it != cache.end()) {
    ++m.stats().pair_hits;
    return it->second;
  }
  ++m.stats().pair_misses;

  auto out = std::make_shared<PairLevel>();
  out->level = a->level;
  if (a->is_level_zero()) {
    const bool fa = a->is_fork();
    const bool fb = b->is_fork();
    if (fa && fb) out->meta = {{0, 0}, {1, 1}};
    else if (fa) out->meta = {{0, 0}, {1, 0}};
    else if (fb) out->meta = {{0, 0}, {0, 1}};
    else out->meta = {{0, 0}};
    out->num_states = static_cast<std::uint32_t>(out->meta.size());
  } else {
    auto child = pair_product(m, a->child, b->child);
    const std::uint32_t n = child->num_states;
    out->table.resize(static_cast<std::size_t>(n) * n);
    std::unordered_map<std::uint64_t, StateIndex> index;
    for (StateIndex x = 0; x < n; ++x) {
      for (StateIndex y = 0; y < n; ++y) {
        StateIndex q = a->at(child->meta[x].q, child->meta[y].q);
        StateIndex p = b->at(child->meta[x].p, child->meta[y].p);
        auto [it, inserted] = index.try_emplace((std::uint64_t{q} << 32) | p, out->num_states);
        if (inserted) {
          out->meta.push_back({q, p});
          ++out->num_states;
        }
        out->table[static_cast<std::size_t>(x) * n + y] = it->second;
      }
    }
    out->child = std::move(child);
  }
  cache.emplace(key, out);
  return out;
}

}  // namespace tidd
