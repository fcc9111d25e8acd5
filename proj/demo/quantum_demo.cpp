// Prepares a GHZ state, prints its diagram and a few measurement shots.
//
//   tidd_demo [qubits]

#include "tidd/tidd.hpp"

#include <cstdlib>
#include <iostream>
#include <random>

int main(int argc, char** argv) {
  const std::uint32_t qubits = argc > 1 ? static_cast<std::uint32_t>(std::strtoul(argv[1], nullptr, 10)) : 8;
  tidd::Manager m;
  auto circuit = tidd::quantum::ghz_circuit(qubits);
  auto run = tidd::quantum::run_circuit(m, circuit);

  std::cout << "GHZ on " << qubits << " qubits (register width " << circuit.width << "), " << run.metrics.gate_count
            << " gates\n";
  auto size = run.metrics.final_size;
  std::cout << "final state: " << size.nodes << " nodes, " << size.edges << " edges, " << size.states
            << " states; largest intermediate " << run.metrics.max_intermediate_size << "\n";
  std::cout << "squared norm: " << tidd::quantum::norm_squared(m, run.state).approx() << "\n\n";
  if (circuit.width <= 16) std::cout << tidd::dump(run.state.m.t) << '\n';

  std::mt19937_64 rng(7);
  for (const auto& [bits, count] : tidd::quantum::measure_distribution(m, run.state, 1000, rng, qubits))
    std::cout << bits << "  " << count << '\n';
  return 0;
}
