#include "support.hpp"

using namespace tidd;
using namespace tidd::quantum;
using tidd::testing::DenseState;
using tidd::testing::healthy;

TEST(GateMatrix, Hadamard) {
  Manager m;
  auto h = gate_matrix(m, {GateKind::H, {0}, 1});
  const Value r = Value::inv_sqrt2();
  EXPECT_EQ(oracle::dense_from_tidd(h.t).outputs, (std::vector<Value>{r, r, r, -r}));
}

TEST(GateMatrix, CnotIsAPermutation) {
  Manager m;
  auto g = gate_matrix(m, {GateKind::CNOT, {0, 1}, 2});
  const std::uint64_t image[] = {0, 1, 3, 2};
  for (std::uint64_t r = 0; r < 4; ++r)
    for (std::uint64_t c = 0; c < 4; ++c) EXPECT_EQ(entry(g, r, c), Value(image[c] == r ? 1 : 0)) << r << c;
}

TEST(GateMatrix, IdentityGate) {
  Manager m;
  EXPECT_TRUE(equal(gate_matrix(m, {GateKind::I, {}, 4}), identity_matrix(m, 4)));
}

TEST(GateMatrix, Unitary) {
  Manager m;
  for (std::uint32_t n : {1u, 2u}) {
    std::vector<GateSpec> gates;
    for (std::uint32_t t = 0; t < n; ++t)
      for (auto k : {GateKind::H, GateKind::X, GateKind::Z}) gates.push_back({k, {t}, n});
    if (n == 2)
      for (auto k : {GateKind::CNOT, GateKind::CZ}) {
        gates.push_back({k, {0, 1}, n});
        gates.push_back({k, {1, 0}, n});
      }
    for (const auto& g : gates) {
      auto u = gate_matrix(m, g);
      auto ut = oracle::dense_transpose(oracle::dense_from_tidd(u.t));
      MatrixTidd transposed{from_truth_table(m, ut.level, ut.outputs), n};
      EXPECT_TRUE(equal(matmul(m, transposed, u), identity_matrix(m, n))) << to_string(g.kind);
      EXPECT_TRUE(healthy(m, u.t));
    }
  }
}

TEST(GateMatrix, RejectsBadSpecs) {
  Manager m;
  EXPECT_THROW(gate_matrix(m, {GateKind::H, {2}, 2}), GateSpecError);
  EXPECT_THROW(gate_matrix(m, {GateKind::CNOT, {1, 1}, 2}), GateSpecError);
  EXPECT_THROW(gate_matrix(m, {GateKind::CZ, {0}, 2}), GateSpecError);
  EXPECT_THROW(gate_matrix(m, {GateKind::X, {0}, 3}), GateSpecError);
}

TEST(Circuits, Shapes) {
  auto ghz = ghz_circuit(4);
  ASSERT_EQ(ghz.gates.size(), 4u);
  EXPECT_EQ(ghz.gates[0].kind, GateKind::H);
  EXPECT_EQ(ghz.gates[3].targets, (std::vector<std::uint32_t>{0, 3}));
  auto padded = ghz_circuit(5);
  EXPECT_EQ(padded.width, 8u);
  EXPECT_THROW(ghz_circuit(5, false), NotPowerOfTwo);
  auto dj = dj_circuit(8, DjMode::Balanced, 11);
  EXPECT_EQ(dj.secret[11 % 8], 1);
  EXPECT_EQ(dj_circuit(8, DjMode::Balanced, 11).gates, dj.gates);
}

TEST(Run, GhzMatchesDenseSimulation) {
  for (std::uint32_t n : {2u, 4u, 8u}) {
    Manager m;
    auto c = ghz_circuit(n);
    auto r = run_circuit(m, c);
    DenseState dense(n);
    for (const auto& g : c.gates) dense.apply(g);
    for (std::uint64_t i = 0; i < dense.amplitudes().size(); ++i) ASSERT_EQ(entry(r.state.m, i, 0), dense.amplitudes()[i]);
    EXPECT_EQ(entry(r.state.m, 0, 0), Value::inv_sqrt2());
    EXPECT_EQ(entry(r.state.m, (1u << n) - 1, 0), Value::inv_sqrt2());
    EXPECT_GE(r.metrics.max_intermediate_size, r.metrics.final_size.total);
    EXPECT_EQ(r.metrics.gate_count, n);
  }
}

TEST(Run, NormIsConservedAfterEveryGate) {
  Manager m;
  for (const auto& c : {ghz_circuit(8), bv_circuit(4, Assignment{1, 0, 1, 1}), dj_circuit(8, DjMode::Balanced, 3)}) {
    auto state = zero_state(m, c.width);
    for (const auto& g : c.gates) {
      state = matvec(m, gate_matrix(m, g), state);
      ASSERT_EQ(norm_squared(m, state), Value(1)) << c.name;
      ASSERT_TRUE(healthy(m, state.m.t));
    }
  }
}

TEST(Run, PaddedCircuitMatchesDense) {
  Manager m;
  auto c = bv_circuit(3, Assignment{1, 1, 0});
  auto r = run_circuit(m, c);
  DenseState dense(c.width);
  for (const auto& g : c.gates) dense.apply(g);
  for (std::uint64_t i = 0; i < dense.amplitudes().size(); ++i) ASSERT_EQ(entry(r.state.m, i, 0), dense.amplitudes()[i]);
}

TEST(Measure, GhzIsHalfAndHalf) {
  Manager m;
  auto r = run_circuit(m, ghz_circuit(8));
  std::mt19937_64 rng(2024);
  auto hist = measure_distribution(m, r.state, 10000, rng);
  ASSERT_EQ(hist.size(), 2u);
  EXPECT_NEAR(hist["00000000"] / 10000.0, 0.5, 0.05);
  EXPECT_NEAR(hist["11111111"] / 10000.0, 0.5, 0.05);
}

TEST(Measure, BernsteinVaziraniRecoversSecret) {
  Manager m;
  const Assignment s = seeded_bits(8, 5);
  auto r = run_circuit(m, bv_circuit(8, s));
  std::mt19937_64 rng(1);
  auto hist = measure_distribution(m, r.state, 100, rng);
  std::string expected;
  for (auto b : s) expected += b ? '1' : '0';
  ASSERT_EQ(hist.size(), 1u);
  EXPECT_EQ(hist.begin()->first, expected);
}

TEST(Measure, DeutschJozsa) {
  Manager m;
  std::mt19937_64 rng(3);
  auto constant_run = run_circuit(m, dj_circuit(8, DjMode::Constant, 0));
  auto hist = measure_distribution(m, constant_run.state, 200, rng);
  ASSERT_EQ(hist.size(), 1u);
  EXPECT_EQ(hist.begin()->first, "00000000");
  auto balanced_run = run_circuit(m, dj_circuit(8, DjMode::Balanced, 7));
  auto hb = measure_distribution(m, balanced_run.state, 200, rng);
  EXPECT_EQ(hb.count("00000000"), 0u);
}

TEST(Measure, BasisStateAndPadding) {
  Manager m;
  const std::uint8_t bits[] = {1, 0, 0, 1};
  std::mt19937_64 rng(4);
  auto hist = measure_distribution(m, vector_from_basis_state(m, 4, bits), 50, rng);
  EXPECT_EQ(hist.size(), 1u);
  EXPECT_EQ(hist.begin()->first, "1001");
  auto r = run_circuit(m, ghz_circuit(3));
  auto hp = measure_distribution(m, r.state, 500, rng, 3);
  for (const auto& [k, v] : hp) EXPECT_TRUE(k == "000" || k == "111") << k;
  EXPECT_THROW(measure_distribution(m, r.state, 0, rng), ZeroDistribution);
}

TEST(Bench, CsvRow) {
  Manager m;
  auto row = run_benchmark(m, "ghz", 8, 0);
  auto csv = to_csv(row);
  EXPECT_EQ(csv.rfind("ghz,8,0,8,", 0), 0u) << csv;
  EXPECT_EQ(std::count(csv.begin(), csv.end(), ','), 8);
  EXPECT_THROW(run_benchmark(m, "qft", 8, 0), GateSpecError);
}
