#include "support.hpp"

using namespace tidd;
using tidd::testing::healthy;

namespace {

/// Random small-integer matrix on `logical` qubits, padded with idle qubits (identity
/// factors) up to the next power of two.
MatrixTidd random_matrix(Manager& m, std::mt19937_64& rng, std::uint32_t logical, oracle::DenseFunction* dense) {
  const std::uint32_t width = std::bit_ceil(logical);
  const std::uint32_t idle = width - logical;
  const std::uint64_t dim = std::uint64_t{1} << logical;
  std::vector<Value> core(dim * dim);
  for (auto& v : core) v = tidd::testing::small_int(rng, -3, 3);
  *dense = oracle::dense_matrix(width, [&](std::uint64_t r, std::uint64_t c) {
    const std::uint64_t mask = (std::uint64_t{1} << idle) - 1;
    if ((r & mask) != (c & mask)) return Value(0);
    return core[(r >> idle) * dim + (c >> idle)];
  });
  return MatrixTidd{from_truth_table(m, dense->level, dense->outputs), width};
}

}  // namespace

TEST(Matmul, HadamardSquaredIsTwoI) {
  Manager m;
  MatrixTidd h{hadamard_family(m, 1), 1};
  auto hh = matmul(m, h, h);
  EXPECT_TRUE(equal(hh.t, scalar_multiply(m, Value(2), identity_matrix(m, 1).t)));
  EXPECT_EQ(hh.t.values, (std::vector<Value>{Value(2), Value(0)}));
}

TEST(Matmul, MatchesDenseOnRandomMatrices) {
  Manager m;
  std::mt19937_64 rng(99);
  for (int c = 0; c < 100; ++c) {
    const std::uint32_t qubits = 1 + static_cast<std::uint32_t>(rng() % 3);
    oracle::DenseFunction da, db;
    auto a = random_matrix(m, rng, qubits, &da);
    auto b = random_matrix(m, rng, qubits, &db);
    auto ab = matmul(m, a, b);
    ASSERT_TRUE(oracle::exhaustive_equiv(ab.t, oracle::dense_matmul(da, db))) << "case " << c;
    ASSERT_TRUE(healthy(m, ab.t));
  }
}

TEST(Matmul, IdentityLaws) {
  Manager m;
  std::mt19937_64 rng(1);
  for (std::uint32_t qubits : {1u, 2u, 3u, 4u}) {
    oracle::DenseFunction d;
    auto a = random_matrix(m, rng, qubits, &d);
    auto id = identity_matrix(m, a.qubits);
    EXPECT_TRUE(equal(matmul(m, id, a), a));
    EXPECT_TRUE(equal(matmul(m, a, id), a));
  }
}

TEST(Matmul, ShapeChecked) {
  Manager m;
  EXPECT_THROW(matmul(m, identity_matrix(m, 1), identity_matrix(m, 2)), ShapeMismatch);
}

TEST(Identity, Basics) {
  Manager m;
  EXPECT_TRUE(equal(identity_matrix(m, 2).t, equality_relation(m, 2)));
  EXPECT_EQ(oracle::dense_from_tidd(identity_matrix(m, 1).t).outputs,
            (std::vector<Value>{Value(1), Value(0), Value(0), Value(1)}));
  for (std::uint32_t q : {1u, 2u, 4u, 8u}) {
    auto id = identity_matrix(m, q);
    auto counts = path_counts(m, id.t);
    EXPECT_EQ(counts->top()[0], BigInt(1) << q);  // trace
  }
}

TEST(TensorWithIdentity, MatchesDenseKronecker) {
  Manager m;
  const Tidd x = from_truth_table(m, 1, {0, 1, 1, 0});
  for (std::uint32_t q = 0; q < 4; ++q) {
    std::pair<std::uint32_t, Tidd> f{q, x};
    auto g = tensor_with_identity(m, 4, std::span(&f, 1));
    auto d = oracle::dense_matrix(4, [&](std::uint64_t r, std::uint64_t c) {
      return Value((r ^ c) == (std::uint64_t{1} << (3 - q)) ? 1 : 0);
    });
    EXPECT_TRUE(oracle::exhaustive_equiv(g.t, d)) << q;
  }
}

TEST(BasisState, ColumnReplicated) {
  Manager m;
  const std::uint8_t bits[] = {0, 0};
  auto v = vector_from_basis_state(m, 2, bits);
  for (std::uint64_t r = 0; r < 4; ++r)
    for (std::uint64_t c = 0; c < 4; ++c) EXPECT_EQ(entry(v.m, r, c), Value(r == 0 ? 1 : 0));
  const std::uint8_t bits4[] = {1, 0, 1, 1};
  auto w = vector_from_basis_state(m, 4, bits4);
  for (std::uint64_t r = 0; r < 16; ++r) EXPECT_EQ(entry(w.m, r, 5), Value(r == 0b1011 ? 1 : 0));
  EXPECT_TRUE(equal(matvec(m, identity_matrix(m, 4), w), w));
  EXPECT_THROW(vector_from_basis_state(m, 3, std::span<const std::uint8_t>(bits4).first(3)), NotPowerOfTwo);
}

TEST(Matvec, HadamardOnZero) {
  Manager m;
  const std::uint8_t zero[] = {0};
  auto v = matvec(m, MatrixTidd{scalar_multiply(m, Value::inv_sqrt2(), hadamard_family(m, 1)), 1},
                  vector_from_basis_state(m, 1, zero));
  for (std::uint64_t c = 0; c < 2; ++c) {
    EXPECT_EQ(entry(v.m, 0, c), Value::inv_sqrt2());
    EXPECT_EQ(entry(v.m, 1, c), Value::inv_sqrt2());
  }
}

TEST(Matvec, MatchesDenseSimulation) {
  Manager m;
  std::mt19937_64 rng(77);
  using quantum::GateKind;
  for (int c = 0; c < 30; ++c) {
    const std::uint32_t n = (rng() % 2) ? 2 : 4;
    tidd::testing::DenseState dense(n);
    auto state = quantum::zero_state(m, n);
    for (int g = 0; g < 6; ++g) {
      quantum::GateSpec spec;
      spec.qubits = n;
      switch (rng() % 4) {
        case 0: spec.kind = GateKind::H; spec.targets = {static_cast<std::uint32_t>(rng() % n)}; break;
        case 1: spec.kind = GateKind::X; spec.targets = {static_cast<std::uint32_t>(rng() % n)}; break;
        case 2: spec.kind = GateKind::Z; spec.targets = {static_cast<std::uint32_t>(rng() % n)}; break;
        default: {
          auto a = static_cast<std::uint32_t>(rng() % n), b = static_cast<std::uint32_t>((a + 1 + rng() % (n - 1)) % n);
          spec.kind = GateKind::CNOT;
          spec.targets = {a, b};
        }
      }
      dense.apply(spec);
      state = matvec(m, quantum::gate_matrix(m, spec), state);
    }
    for (std::uint64_t r = 0; r < dense.amplitudes().size(); ++r) {
      ASSERT_EQ(entry(state.m, r, 0), dense.amplitudes()[r]);
      ASSERT_EQ(entry(state.m, r, r), dense.amplitudes()[r]);  // still column-replicated
    }
  }
}
