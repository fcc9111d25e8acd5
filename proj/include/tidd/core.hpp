#pragma once

#include "tidd/errors.hpp"
#include "tidd/value.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace tidd {

using StateIndex = std::uint32_t;
using Assignment = std::vector<std::uint8_t>;

inline constexpr StateIndex kNoState = std::numeric_limits<StateIndex>::max();

enum class LevelZeroKind : std::uint8_t { Fork, DontCare };

/// Square table E with E[a][b] = parent state reached from child states (a, b).
struct TransitionTable {
  std::uint32_t side = 0;
  std::vector<StateIndex> entries;  // row-major, side * side

  TransitionTable() = default;
  TransitionTable(std::uint32_t s, std::vector<StateIndex> e) : side(s), entries(std::move(e)) {}
  TransitionTable(std::initializer_list<std::initializer_list<StateIndex>> rows) {
    side = static_cast<std::uint32_t>(rows.size());
    for (const auto& row : rows) {
      if (row.size() != side) throw ArityMismatch("transition table rows must have length " + std::to_string(side));
      entries.insert(entries.end(), row.begin(), row.end());
    }
  }

  StateIndex at(StateIndex a, StateIndex b) const { return entries[static_cast<std::size_t>(a) * side + b]; }
  std::span<const StateIndex> row(StateIndex a) const {
    return {entries.data() + static_cast<std::size_t>(a) * side, side};
  }
  friend bool operator==(const TransitionTable&, const TransitionTable&) = default;
};

/// One interned state layer. States are the implicit indices 0..num_states-1.
struct Layer {
  std::uint32_t level = 0;
  LevelZeroKind kind = LevelZeroKind::DontCare;  // level 0 only
  const Layer* child = nullptr;                  // null at level 0
  TransitionTable table;                         // empty at level 0
  std::uint32_t num_states = 0;
  std::size_t hash = 0;
  std::uint64_t id = 0;  // creation order within the manager

  bool is_level_zero() const { return child == nullptr; }
  bool is_fork() const { return is_level_zero() && kind == LevelZeroKind::Fork; }
  StateIndex at(StateIndex a, StateIndex b) const { return table.at(a, b); }
  /// Level-0 transition on a leaf symbol.
  StateIndex leaf(std::uint8_t bit) const { return kind == LevelZeroKind::Fork ? (bit ? 1u : 0u) : 0u; }
};

using LayerHandle = const Layer*;

// ---------------------------------------------------------------------------
// Operation metadata shared with the manager's memo tables.

struct StatePair {
  StateIndex q = 0;
  StateIndex p = 0;
  friend bool operator==(const StatePair&, const StatePair&) = default;
};

/// Weighted triple (q, p, w) of a matrix-multiplication state.
struct Triple {
  StateIndex q = 0;
  StateIndex p = 0;
  BigInt w;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Formal sum of weighted triples, sorted by (q, p) with no repeated pair and w >= 1.
struct TripleSum {
  std::vector<Triple> terms;
  friend bool operator==(const TripleSum&, const TripleSum&) = default;
  std::size_t hash() const {
    std::size_t h = terms.size();
    for (const auto& t : terms) h = hash_combine(hash_combine(hash_combine(h, t.q), t.p), hash_bigint(t.w));
    return h;
  }
};

struct TripleSumHash {
  std::size_t operator()(const TripleSum& s) const { return s.hash(); }
};

/// A layer of a product automaton that has not been reduced yet.
template <class Meta>
struct ProductLevel {
  std::uint32_t level = 0;
  std::uint32_t num_states = 0;
  std::vector<StateIndex> table;  // side = child->num_states; empty at level 0
  std::shared_ptr<const ProductLevel> child;
  std::vector<Meta> meta;  // one entry per state
};

using PairLevel = ProductLevel<StatePair>;
using TripleLevel = ProductLevel<TripleSum>;

/// Per-level, per-state path counts |L(q)|, index 0 is level 0.
struct PathCountAnnotation {
  std::vector<std::vector<BigInt>> counts;
  const std::vector<BigInt>& top() const { return counts.back(); }
};

// ---------------------------------------------------------------------------

struct Tidd {
  LayerHandle top = nullptr;
  std::vector<Value> values;

  std::uint32_t level() const { return top->level; }
  std::uint64_t num_variables() const { return std::uint64_t{1} << top->level; }
  std::uint32_t num_top_states() const { return top->num_states; }

  std::size_t hash() const {
    std::size_t h = std::hash<const void*>{}(top);
    for (const auto& v : values) h = hash_combine(h, v.hash());
    return h;
  }
};

/// Handle identity plus value-tuple equality; semantic equality for same-level functions.
inline bool equal(const Tidd& f, const Tidd& g) { return f.top == g.top && f.values == g.values; }
inline bool operator==(const Tidd& f, const Tidd& g) { return equal(f, g); }

struct TiddHash {
  std::size_t operator()(const Tidd& t) const { return t.hash(); }
};

namespace detail {

struct PairKeyHash {
  std::size_t operator()(const std::pair<const void*, const void*>& k) const {
    return hash_combine(std::hash<const void*>{}(k.first), std::hash<const void*>{}(k.second));
  }
};

struct ApplyKey {
  std::string op;
  Tidd f;
  Tidd g;
  friend bool operator==(const ApplyKey& x, const ApplyKey& y) {
    return x.op == y.op && x.f == y.f && x.g == y.g;
  }
};

struct ApplyKeyHash {
  std::size_t operator()(const ApplyKey& k) const {
    return hash_combine(hash_combine(std::hash<std::string>{}(k.op), k.f.hash()), k.g.hash());
  }
};

}  // namespace detail

/// Owns the unique table of layers and the memo tables of every operation.
///
/// Layers and Tidds are immutable and can be read concurrently. Interning and
/// the memo tables are not synchronized: calls that build new diagrams on one
/// manager must be serialized by the caller.
class Manager {
 public:
  struct Stats {
    std::uint64_t pair_hits = 0;
    std::uint64_t pair_misses = 0;
    std::uint64_t triple_hits = 0;
    std::uint64_t triple_misses = 0;
    std::uint64_t apply_hits = 0;
    std::uint64_t kron_hits = 0;
  };

  struct Caches {
    std::unordered_map<std::pair<const void*, const void*>, std::shared_ptr<const PairLevel>, detail::PairKeyHash> pairs;
    std::unordered_map<std::pair<const void*, const void*>, std::shared_ptr<const TripleLevel>, detail::PairKeyHash> triples;
    std::unordered_map<detail::ApplyKey, Tidd, detail::ApplyKeyHash> apply;
    std::unordered_map<detail::ApplyKey, Tidd, detail::ApplyKeyHash> kron;
    std::unordered_map<const void*, std::shared_ptr<const PathCountAnnotation>> path_counts;
  };

  Manager() {
    fork_ = intern_level_zero(LevelZeroKind::Fork);
    dont_care_ = intern_level_zero(LevelZeroKind::DontCare);
  }
  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;

  LayerHandle fork() const { return fork_; }
  LayerHandle dont_care() const { return dont_care_; }

  LayerHandle intern(LevelZeroKind kind) { return kind == LevelZeroKind::Fork ? fork_ : dont_care_; }

  /// Interns an internal layer. The table must be total and in first-occurrence order.
  LayerHandle intern(LayerHandle child, TransitionTable table) {
    if (child == nullptr) throw ArityMismatch("internal layer needs a child layer");
    if (table.side != child->num_states)
      throw ArityMismatch("table side " + std::to_string(table.side) + " != child states " +
                          std::to_string(child->num_states));
    if (table.entries.size() != static_cast<std::size_t>(table.side) * table.side)
      throw ArityMismatch("table has " + std::to_string(table.entries.size()) + " entries, expected " +
                          std::to_string(static_cast<std::size_t>(table.side) * table.side));
    StateIndex next = 0;
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      StateIndex e = table.entries[i];
      if (e > next)
        throw CanonicalOrderViolation("entry " + std::to_string(i) + " is " + std::to_string(e) +
                                      " but the next unseen state is " + std::to_string(next));
      if (e == next) ++next;
    }

    Layer layer;
    layer.level = child->level + 1;
    layer.child = child;
    layer.table = std::move(table);
    layer.num_states = next;
    std::size_t h = hash_combine(std::hash<const void*>{}(child), layer.table.side);
    for (StateIndex e : layer.table.entries) h = hash_combine(h, e);
    layer.hash = h;
    return insert(std::move(layer));
  }

  std::size_t layer_count() const { return storage_.size(); }

  Caches& caches() { return caches_; }
  Stats& stats() { return stats_; }
  const Stats& stats() const { return stats_; }

  void clear_caches() { caches_ = Caches{}; }

 private:
  LayerHandle intern_level_zero(LevelZeroKind kind) {
    Layer layer;
    layer.level = 0;
    layer.kind = kind;
    layer.num_states = kind == LevelZeroKind::Fork ? 2 : 1;
    layer.hash = kind == LevelZeroKind::Fork ? 0xf0f0u : 0x0d0du;
    return insert(std::move(layer));
  }

  LayerHandle insert(Layer&& layer) {
    auto& bucket = unique_[layer.hash];
    for (LayerHandle existing : bucket) {
      if (existing->child == layer.child && existing->kind == layer.kind && existing->table == layer.table)
        return existing;
    }
    layer.id = storage_.size();
    storage_.push_back(std::move(layer));
    LayerHandle h = &storage_.back();
    bucket.push_back(h);
    return h;
  }

  std::deque<Layer> storage_;
  std::unordered_map<std::size_t, std::vector<LayerHandle>> unique_;
  LayerHandle fork_ = nullptr;
  LayerHandle dont_care_ = nullptr;
  Caches caches_;
  Stats stats_;
};

/// Layers of a stack from level 0 up to `top`.
inline std::vector<LayerHandle> layers_of(LayerHandle top) {
  std::vector<LayerHandle> out(top->level + 1);
  for (LayerHandle l = top; l != nullptr; l = l->child) out[l->level] = l;
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

/// Value of f on an assignment of length 2^level (bit i is variable x_i).
inline Value evaluate(const Tidd& f, std::span<const std::uint8_t> a) {
  if (a.size() != f.num_variables())
    throw AssignmentLengthMismatch("expected " + std::to_string(f.num_variables()) + " bits, got " +
                                   std::to_string(a.size()));
  auto layers = layers_of(f.top);
  std::vector<StateIndex> states(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) states[i] = layers[0]->leaf(a[i]);
  std::size_t width = a.size();
  for (std::uint32_t lvl = 1; lvl <= f.level(); ++lvl) {
    width /= 2;
    for (std::size_t i = 0; i < width; ++i) states[i] = layers[lvl]->at(states[2 * i], states[2 * i + 1]);
  }
  return f.values[states[0]];
}

/// Assignment whose bits are the big-endian binary digits of `index`.
inline Assignment assignment_from_index(std::uint64_t index, std::uint64_t num_vars) {
  Assignment a(num_vars);
  for (std::uint64_t i = 0; i < num_vars; ++i) a[i] = static_cast<std::uint8_t>((index >> (num_vars - 1 - i)) & 1u);
  return a;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  bool ok = true;
  std::string constraint;  // e.g. "canonical-order"
  std::string location;    // e.g. "level 2"
  std::string detail;

  explicit operator bool() const { return ok; }
  std::string to_string() const {
    return ok ? std::string("pass") : "violation of " + constraint + " at " + location + ": " + detail;
  }
};

namespace detail {

inline ValidationReport violation(std::string constraint, std::uint32_t level, std::string detail) {
  return {false, std::move(constraint), "level " + std::to_string(level), std::move(detail)};
}

/// Two child states i, j are interchangeable in the parent table (same row and same column).
inline bool interchangeable(const Layer& parent, StateIndex i, StateIndex j) {
  const std::uint32_t s = parent.table.side;
  for (StateIndex t = 0; t < s; ++t) {
    if (parent.at(i, t) != parent.at(j, t) || parent.at(t, i) != parent.at(t, j)) return false;
  }
  return true;
}

}  // namespace detail

/// Checks every structural constraint of a Tidd and reports the first violation.
inline ValidationReport validate(const Tidd& f) {
  if (f.top == nullptr) return {false, "structure", "top", "null top layer"};
  auto layers = layers_of(f.top);
  for (std::uint32_t lvl = 0; lvl < layers.size(); ++lvl) {
    const Layer* layer = layers[lvl];
    if (layer == nullptr || layer->level != lvl) return detail::violation("structure", lvl, "broken level chain");
    if (lvl == 0) {
      std::uint32_t expected = layer->kind == LevelZeroKind::Fork ? 2 : 1;
      if (layer->num_states != expected || !layer->table.entries.empty())
        return detail::violation("level-zero-shape", 0, "level-0 node has wrong shape");
      continue;
    }
    const auto& t = layer->table;
    if (t.side != layer->child->num_states ||
        t.entries.size() != static_cast<std::size_t>(t.side) * t.side)
      return detail::violation("totality", lvl, "table is not total over child states");
    StateIndex next = 0;
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      StateIndex e = t.entries[i];
      if (e >= layer->num_states) return detail::violation("totality", lvl, "entry out of range");
      if (e > next) return detail::violation("canonical-order", lvl, "first occurrence order broken at entry " + std::to_string(i));
      if (e == next) ++next;
    }
    if (next != layer->num_states) return detail::violation("canonical-order", lvl, "parent states not all used");
  }
  // Distinguishability of every non-top layer through its parent table.
  for (std::uint32_t lvl = 0; lvl + 1 < layers.size(); ++lvl) {
    const Layer& parent = *layers[lvl + 1];
    for (StateIndex i = 0; i < layers[lvl]->num_states; ++i)
      for (StateIndex j = i + 1; j < layers[lvl]->num_states; ++j)
        if (detail::interchangeable(parent, i, j))
          return detail::violation("distinguishable", lvl,
                                   "states " + std::to_string(i) + " and " + std::to_string(j) + " are indistinguishable");
  }
  if (f.values.size() != f.top->num_states)
    return detail::violation("distinct-values", f.level(), "value tuple length differs from top state count");
  std::unordered_set<Value, ValueHash> seen;
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    if (!seen.insert(f.values[j]).second)
      return detail::violation("distinct-values", f.level(), "duplicate value " + f.values[j].to_string());
  }
  return {};
}

// ---------------------------------------------------------------------------
// Size accounting

/// One node per layer; edges are the entries of each distinct row of a layer's
/// table (a row reused inside one layer counts once) plus 2 for a Fork and 1
/// for a DontCare leaf node.
struct SizeReport {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t total = 0;
  std::uint64_t states = 0;  // sum of state counts over all levels
};

inline std::uint64_t layer_edges(const Layer& layer) {
  if (layer.is_level_zero()) return layer.kind == LevelZeroKind::Fork ? 2 : 1;
  std::vector<std::vector<StateIndex>> distinct;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash;
  std::uint64_t edges = 0;
  for (StateIndex r = 0; r < layer.table.side; ++r) {
    auto row = layer.table.row(r);
    std::size_t h = row.size();
    for (StateIndex e : row) h = hash_combine(h, e);
    auto& candidates = by_hash[h];
    bool found = false;
    for (std::size_t c : candidates) {
      if (std::equal(row.begin(), row.end(), distinct[c].begin(), distinct[c].end())) {
        found = true;
        break;
      }
    }
    if (!found) {
      candidates.push_back(distinct.size());
      distinct.emplace_back(row.begin(), row.end());
      edges += row.size();
    }
  }
  return edges;
}

inline SizeReport size_metrics(const Tidd& f) {
  SizeReport r;
  for (LayerHandle l = f.top; l != nullptr; l = l->child) {
    r.nodes += 1;
    r.edges += layer_edges(*l);
    r.states += l->num_states;
  }
  r.total = r.nodes + r.edges;
  return r;
}

// ---------------------------------------------------------------------------
// Textual dump

inline std::string dump(const Tidd& f) {
  std::ostringstream os;
  for (LayerHandle l : layers_of(f.top)) {
    os << 'L' << l->level << " kind=";
    if (l->is_level_zero()) {
      bool fork = l->kind == LevelZeroKind::Fork;
      os << (fork ? "Fork" : "DontCare") << " states=" << l->num_states << " table=" << (fork ? "0,1" : "0,0");
    } else {
      os << "Internal states=" << l->num_states << " table=";
      for (std::size_t i = 0; i < l->table.entries.size(); ++i) os << (i ? "," : "") << l->table.entries[i];
    }
    os << '\n';
  }
  os << "V=";
  for (std::size_t i = 0; i < f.values.size(); ++i) os << (i ? ";" : "") << f.values[i];
  os << '\n';
  return os.str();
}

/// Re-interns a diagram from its dump. Tables must already be canonical.
inline Tidd parse_dump(Manager& m, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  LayerHandle current = nullptr;
  Tidd out;
  bool have_values = false;
  auto field = [](const std::string& ln, const std::string& key) -> std::string {
    auto pos = ln.find(" " + key + "=");
    if (pos == std::string::npos) throw ParseError("missing '" + key + "' in: " + ln);
    auto start = pos + key.size() + 2;
    auto end = ln.find(' ', start);
    return ln.substr(start, end == std::string::npos ? std::string::npos : end - start);
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("V=", 0) == 0) {
      std::string rest = line.substr(2);
      std::size_t start = 0;
      while (start <= rest.size() && !rest.empty()) {
        auto end = rest.find(';', start);
        out.values.push_back(Value::parse(rest.substr(start, end == std::string::npos ? std::string::npos : end - start)));
        if (end == std::string::npos) break;
        start = end + 1;
      }
      have_values = true;
      continue;
    }
    if (line[0] != 'L') throw ParseError("unexpected line: " + line);
    auto level = static_cast<std::uint32_t>(std::stoul(line.substr(1, line.find(' ') - 1)));
    std::string kind = field(line, "kind");
    std::uint32_t expected_level = current == nullptr ? 0 : current->level + 1;
    if (level != expected_level) throw ParseError("levels must be listed bottom-up");
    if (kind == "Fork" || kind == "DontCare") {
      if (current != nullptr) throw ParseError("level-0 kind above level 0");
      current = m.intern(kind == "Fork" ? LevelZeroKind::Fork : LevelZeroKind::DontCare);
      continue;
    }
    if (kind != "Internal" || current == nullptr) throw ParseError("bad kind: " + kind);
    std::string tbl = field(line, "table");
    std::vector<StateIndex> entries;
    std::stringstream ts(tbl);
    std::string tok;
    while (std::getline(ts, tok, ',')) entries.push_back(static_cast<StateIndex>(std::stoul(tok)));
    current = m.intern(current, TransitionTable(current->num_states, std::move(entries)));
    if (current->num_states != std::stoul(field(line, "states"))) throw ParseError("state count mismatch");
  }
  if (current == nullptr || !have_values) throw ParseError("incomplete dump");
  out.top = current;
  return out;
}

}  // namespace tidd
