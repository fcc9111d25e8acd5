#pragma once

#include "tidd/analysis.hpp"
#include "tidd/linalg.hpp"

#include <bit>
#include <chrono>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace tidd::quantum {

enum class GateKind { H, X, Z, I, CNOT, CZ };

inline const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::I: return "I";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

/// Gate on an n-qubit register. CNOT/CZ targets are {control, target}.
struct GateSpec {
  GateKind kind = GateKind::I;
  std::vector<std::uint32_t> targets;
  std::uint32_t qubits = 1;

  friend bool operator==(const GateSpec&, const GateSpec&) = default;
  friend bool operator<(const GateSpec& x, const GateSpec& y) {
    if (x.kind != y.kind) return x.kind < y.kind;
    if (x.qubits != y.qubits) return x.qubits < y.qubits;
    return x.targets < y.targets;
  }
};

namespace detail {

inline Tidd single_qubit(Manager& m, GateKind kind) {
  const Value h = Value::inv_sqrt2();
  switch (kind) {
    case GateKind::H: return from_truth_table(m, 1, {h, h, h, -h});
    case GateKind::X: return from_truth_table(m, 1, {0, 1, 1, 0});
    case GateKind::Z: return from_truth_table(m, 1, {1, 0, 0, -1});
    default: return from_truth_table(m, 1, {1, 0, 0, 1});
  }
}

inline Tidd projector(Manager& m, bool one) {
  return one ? from_truth_table(m, 1, {0, 0, 0, 1}) : from_truth_table(m, 1, {1, 0, 0, 0});
}

inline void check_gate(const GateSpec& g) {
  if (g.qubits == 0 || !std::has_single_bit(g.qubits))
    throw GateSpecError("register width " + std::to_string(g.qubits) + " is not a power of two");
  std::size_t need = 0;
  switch (g.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z: need = 1; break;
    case GateKind::CNOT:
    case GateKind::CZ: need = 2; break;
    case GateKind::I: need = g.targets.size(); break;
  }
  if (g.targets.size() != need)
    throw GateSpecError(std::string(to_string(g.kind)) + " takes " + std::to_string(need) + " qubit indices");
  for (auto t : g.targets)
    if (t >= g.qubits) throw GateSpecError("qubit " + std::to_string(t) + " out of range");
  if (need == 2 && g.targets[0] == g.targets[1]) throw GateSpecError("control and target coincide");
}

}  // namespace detail

/// The n-qubit unitary of a gate. Single-qubit gates are tensored with identities;
/// controlled gates are |0><0|_c (x) I + |1><1|_c (x) U_t.
inline MatrixTidd gate_matrix(Manager& m, const GateSpec& g) {
  detail::check_gate(g);
  switch (g.kind) {
    case GateKind::I: return identity_matrix(m, g.qubits);
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z: {
      std::pair<std::uint32_t, Tidd> f{g.targets[0], detail::single_qubit(m, g.kind)};
      return tensor_with_identity(m, g.qubits, std::span(&f, 1));
    }
    case GateKind::CNOT:
    case GateKind::CZ: {
      const std::uint32_t c = g.targets[0], t = g.targets[1];
      std::pair<std::uint32_t, Tidd> off{c, detail::projector(m, false)};
      std::vector<std::pair<std::uint32_t, Tidd>> on{
          {c, detail::projector(m, true)},
          {t, detail::single_qubit(m, g.kind == GateKind::CNOT ? GateKind::X : GateKind::Z)}};
      auto a = tensor_with_identity(m, g.qubits, std::span(&off, 1));
      auto b = tensor_with_identity(m, g.qubits, on);
      return MatrixTidd{apply(m, ops::plus(), a.t, b.t), g.qubits};
    }
  }
  throw GateSpecError("unknown gate");
}

// ---------------------------------------------------------------------------
// Circuits

struct Circuit {
  std::string name;
  std::uint32_t qubits = 0;  // logical width
  std::uint32_t width = 0;   // register width after padding to a power of two
  std::vector<GateSpec> gates;
  Assignment secret;         // BV string or DJ balanced parity mask; empty otherwise
};

inline std::uint32_t padded_width(std::uint32_t n, bool allow_padding) {
  if (n == 0) throw NotPowerOfTwo("a circuit needs at least one qubit");
  if (std::has_single_bit(n)) return n;
  if (!allow_padding) throw NotPowerOfTwo(std::to_string(n) + " qubits");
  return std::bit_ceil(n);
}

inline Circuit ghz_circuit(std::uint32_t n, bool allow_padding = true) {
  Circuit c{"ghz", n, padded_width(n, allow_padding), {}, {}};
  c.gates.push_back({GateKind::H, {0}, c.width});
  for (std::uint32_t i = 1; i < n; ++i) c.gates.push_back({GateKind::CNOT, {0, i}, c.width});
  return c;
}

namespace detail {
inline void hadamard_layer(Circuit& c) {
  for (std::uint32_t i = 0; i < c.qubits; ++i) c.gates.push_back({GateKind::H, {i}, c.width});
}
/// diag((-1)^{s.x}) as a product of Z factors.
inline void parity_phase_oracle(Circuit& c, std::span<const std::uint8_t> s) {
  for (std::uint32_t i = 0; i < c.qubits; ++i)
    if (s[i]) c.gates.push_back({GateKind::Z, {i}, c.width});
}
}  // namespace detail

/// Bernstein-Vazirani with a phase oracle: H-layer, diag((-1)^{s.x}), H-layer.
inline Circuit bv_circuit(std::uint32_t n, std::span<const std::uint8_t> s, bool allow_padding = true) {
  if (s.size() != n) throw GateSpecError("secret string length must equal the qubit count");
  Circuit c{"bv", n, padded_width(n, allow_padding), {}, Assignment(s.begin(), s.end())};
  detail::hadamard_layer(c);
  detail::parity_phase_oracle(c, s);
  detail::hadamard_layer(c);
  return c;
}

/// Seeded secret string from the raw bits of mt19937_64.
inline Assignment seeded_bits(std::uint32_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Assignment s(n);
  for (auto& b : s) b = static_cast<std::uint8_t>(rng() & 1u);
  return s;
}

enum class DjMode { Constant, Balanced };

/// Deutsch-Jozsa with a phase oracle. The balanced oracle is f(x) = s.x mod 2 for a
/// seeded mask s whose designated variable (seed mod n) is forced to 1, so f is
/// balanced; the constant oracle is f = 0 (a single identity gate).
inline Circuit dj_circuit(std::uint32_t n, DjMode mode, std::uint64_t seed, bool allow_padding = true) {
  Circuit c{"dj", n, padded_width(n, allow_padding), {}, {}};
  detail::hadamard_layer(c);
  if (mode == DjMode::Constant) {
    c.gates.push_back({GateKind::I, {}, c.width});
  } else {
    c.secret = seeded_bits(n, seed);
    c.secret[seed % n] = 1;
    detail::parity_phase_oracle(c, c.secret);
  }
  detail::hadamard_layer(c);
  return c;
}

// ---------------------------------------------------------------------------
// Execution

struct RunMetrics {
  SizeReport final_size;
  std::uint64_t max_intermediate_size = 0;
  double wall_seconds = 0;
  std::uint64_t gate_count = 0;
};

struct RunResult {
  VectorTidd state;
  RunMetrics metrics;
};

/// Folds matvec over the gates, tracking the largest gate matrix or state seen.
inline RunResult run_circuit(Manager& m, std::span<const GateSpec> gates, const VectorTidd& initial) {
  const auto start = std::chrono::steady_clock::now();
  RunResult r{initial, {}};
  auto track = [&](const Tidd& t) {
    r.metrics.max_intermediate_size = std::max(r.metrics.max_intermediate_size, size_metrics(t).total);
  };
  track(initial.m.t);
  std::map<GateSpec, MatrixTidd> built;
  for (const auto& g : gates) {
    auto it = built.find(g);
    if (it == built.end()) it = built.emplace(g, gate_matrix(m, g)).first;
    if (it->second.qubits != r.state.m.qubits) throw ShapeMismatch("gate width differs from state width");
    track(it->second.t);
    r.state = matvec(m, it->second, r.state);
    track(r.state.m.t);
    ++r.metrics.gate_count;
  }
  r.metrics.final_size = size_metrics(r.state.m.t);
  r.metrics.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline VectorTidd zero_state(Manager& m, std::uint32_t width) {
  Assignment zeros(width, 0);
  return vector_from_basis_state(m, width, zeros);
}

inline RunResult run_circuit(Manager& m, const Circuit& c) { return run_circuit(m, c.gates, zero_state(m, c.width)); }

/// sum_r |amp_r|^2, exact: squared values weighted by path counts, divided by the
/// 2^n replicated columns.
inline Value norm_squared(Manager& m, const VectorTidd& v) {
  auto counts = path_counts(m, v.m.t);
  Value total;
  for (std::size_t q = 0; q < v.m.t.values.size(); ++q)
    total += v.m.t.values[q].squared_magnitude() * counts->top()[q];
  return total.times_pow2(-static_cast<int>(v.m.qubits));
}

/// Histogram of measured row bit strings over the first `logical_qubits` qubits.
/// Column bits of each sampled assignment are drawn and dropped.
template <class Rng>
std::map<std::string, std::uint64_t> measure_distribution(Manager& m, const VectorTidd& state, std::uint64_t shots,
                                                          Rng& rng, std::uint32_t logical_qubits = 0) {
  if (shots == 0) throw ZeroDistribution("shots must be at least 1");
  if (logical_qubits == 0) logical_qubits = state.m.qubits;
  const Tidd probs = apply(m, ops::times(), state.m.t, state.m.t);
  Sampler sampler(m, probs);
  std::map<std::string, std::uint64_t> hist;
  std::string key(logical_qubits, '0');
  for (std::uint64_t s = 0; s < shots; ++s) {
    Assignment a = sampler.draw(rng);
    for (std::uint32_t j = 0; j < logical_qubits; ++j) key[j] = a[2 * j] ? '1' : '0';
    ++hist[key];
  }
  return hist;
}

// ---------------------------------------------------------------------------
// Benchmark rows

struct BenchRow {
  std::string algo;
  std::uint32_t qubits = 0;
  std::uint64_t seed = 0;
  RunMetrics metrics;
};

inline const char* kCsvHeader = "algo,qubits,seed,gates,final_nodes,final_edges,final_total,max_intermediate,wall_seconds";

inline std::string to_csv(const BenchRow& r) {
  std::ostringstream os;
  os << r.algo << ',' << r.qubits << ',' << r.seed << ',' << r.metrics.gate_count << ',' << r.metrics.final_size.nodes
     << ',' << r.metrics.final_size.edges << ',' << r.metrics.final_size.total << ','
     << r.metrics.max_intermediate_size << ',' << r.metrics.wall_seconds;
  return os.str();
}

inline Circuit benchmark_circuit(const std::string& algo, std::uint32_t qubits, std::uint64_t seed) {
  if (algo == "ghz") return ghz_circuit(qubits);
  if (algo == "bv") {
    auto s = seeded_bits(qubits, seed);
    return bv_circuit(qubits, s);
  }
  if (algo == "dj") return dj_circuit(qubits, DjMode::Balanced, seed);
  throw GateSpecError("unknown benchmark '" + algo + "'");
}

inline BenchRow run_benchmark(Manager& m, const std::string& algo, std::uint32_t qubits, std::uint64_t seed) {
  Circuit c = benchmark_circuit(algo, qubits, seed);
  return BenchRow{algo, qubits, seed, run_circuit(m, c).metrics};
}

}  // namespace tidd::quantum
