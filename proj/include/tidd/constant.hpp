#pragma once

#include "tidd/core.hpp"

namespace tidd {

/// Single-state layer stack of the given level.
inline LayerHandle no_distinction_proto(Manager& m, std::uint32_t level) {
  LayerHandle l = m.dont_care();
  for (std::uint32_t i = 1; i <= level; ++i) l = m.intern(l, TransitionTable(1, {0}));
  return l;
}

/// Function of 2^level variables that is `v` everywhere.
inline Tidd constant(Manager& m, std::uint32_t level, Value v) {
  return Tidd{no_distinction_proto(m, level), {std::move(v)}};
}

inline Tidd false_tidd(Manager& m, std::uint32_t level) { return constant(m, level, Value::boolean(false)); }
inline Tidd true_tidd(Manager& m, std::uint32_t level) { return constant(m, level, Value::boolean(true)); }

}  // namespace tidd
