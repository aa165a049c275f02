#include "waltz/noise.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace waltz;

namespace {

Matrix kraus_sum(const std::vector<Matrix>& ks) {
  Matrix s = Matrix::Zero(ks[0].rows(), ks[0].cols());
  for (const auto& k : ks) s += k.adjoint() * k;
  return s;
}

}  // namespace

TEST(Paulis, QubitSetIsIXZY) {
  const auto p = generalized_paulis(2);
  ASSERT_EQ(p.size(), 4U);
  EXPECT_TRUE(p[0].isIdentity());
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  EXPECT_TRUE(p[1].isApprox(z));
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_TRUE(p[2].isApprox(x));
  EXPECT_TRUE(p[3].isApprox(x * z));
}

TEST(Paulis, QuquartSetIsTraceOrthogonal) {
  const auto p = generalized_paulis(4);
  ASSERT_EQ(p.size(), 16U);
  Eigen::MatrixXcd gram(16, 16);
  for (int i = 0; i < 16; ++i) {
    EXPECT_TRUE((p[i].adjoint() * p[i]).isIdentity(1e-12));
    for (int j = 0; j < 16; ++j) {
      const Complex t = (p[i].adjoint() * p[j]).trace();
      gram(i, j) = t;
      EXPECT_NEAR(std::abs(t), i == j ? 4.0 : 0.0, 1e-12) << i << "," << j;
    }
  }
  EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXcd>(gram).rank(), 16);
}

TEST(Paulis, ShiftWrapsAround) {
  const Matrix x = generalized_pauli(4, 1, 0);
  Vector three = Vector::Zero(4);
  three(3) = 1.0;
  EXPECT_NEAR(std::abs((x * three)(0)), 1.0, 1e-15);
  const Matrix z = generalized_pauli(4, 0, 1);
  EXPECT_NEAR(std::arg(z(1, 1)), M_PI / 2, 1e-12);
}

TEST(ErrorSupport, FollowsOperandRadices) {
  const auto& lib = GateLibrary::standard();
  EXPECT_EQ(error_support(lib.spec("CX^{0q}")), (std::vector<int>{4, 2}));
  EXPECT_EQ(error_support(lib.spec("CX^0")), (std::vector<int>{4}));
  EXPECT_EQ(error_support(lib.spec("CX_2")), (std::vector<int>{2, 2}));
  EXPECT_EQ(error_support(lib.spec("CCZ^{01,1}")), (std::vector<int>{4, 4}));
}

TEST(GateErrorSampler, ZeroEpsNeverErrs) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(is_identity(sample_gate_error(rng, 0.0, {4, 4})));
  EXPECT_THROW((void)sample_gate_error(rng, 1.0, {2}), std::invalid_argument);
}

TEST(GateErrorSampler, CoversEveryNonIdentityOutcomeUniformly) {
  for (const std::vector<int>& dims : {std::vector<int>{4}, std::vector<int>{2, 2}, std::vector<int>{4, 4}}) {
    int D = 1;
    for (int d : dims) D *= d;
    const int outcomes = D * D - 1;
    Rng rng(7);
    const int draws = 100000;
    const double eps = 0.5;
    std::map<PauliDraw, int> freq;
    int errors = 0;
    for (int i = 0; i < draws; ++i) {
      const PauliDraw p = sample_gate_error(rng, eps, dims);
      if (!is_identity(p)) {
        ++errors;
        ++freq[p];
      }
    }
    EXPECT_EQ(static_cast<int>(freq.size()), outcomes);
    const double sigma_e = std::sqrt(draws * eps * (1 - eps));
    EXPECT_NEAR(errors, draws * eps, 3 * sigma_e);
    const double p = 1.0 / outcomes;
    const double sigma = std::sqrt(errors * p * (1 - p));
    int outside = 0;
    for (const auto& [draw, n] : freq) {
      if (std::abs(n - errors * p) > 3 * sigma) ++outside;
    }
    // Up to 1% of outcomes, plus one, may fall outside 3 sigma.
    EXPECT_LE(outside, 1 + outcomes / 100) << "dims " << D;
  }
}

TEST(GateErrorSampler, ProductIsUnitary) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const std::vector<int> dims{4, 2};
    const PauliDraw p = sample_gate_error(rng, 0.99, dims);
    const Matrix m = pauli_product(p, dims);
    EXPECT_EQ(m.rows(), 8);
    EXPECT_TRUE((m.adjoint() * m).isIdentity(1e-12));
    EXPECT_EQ(m.isIdentity(1e-12), is_identity(p));
  }
}

TEST(Damping, KrausSetIsTracePreserving) {
  for (int d : {2, 4}) {
    for (int i = 0; i < 100; ++i) {
      const double dt = 1e3 * i * i;
      for (double cm : {1.0, 0.5, 3.0}) {
        EXPECT_TRUE(kraus_sum(damping_kraus(d, dt, kDefaultT1Ns, cm)).isIdentity(1e-12)) << d << " " << dt;
      }
    }
  }
}

TEST(Damping, ZeroTimeIsIdentity) {
  const auto ks = damping_kraus(4, 0.0, kDefaultT1Ns);
  EXPECT_TRUE(ks[0].isIdentity());
  for (std::size_t m = 1; m < ks.size(); ++m) EXPECT_TRUE(ks[m].isZero());
}

TEST(Damping, LambdaValues) {
  EXPECT_NEAR(damping_lambda(1, kDefaultT1Ns, kDefaultT1Ns), 0.632121, 1e-6);
  EXPECT_NEAR(damping_lambda(3, kDefaultT1Ns / 3, kDefaultT1Ns), 0.632121, 1e-6);
  EXPECT_NEAR(damping_lambda(2, 100.0, 1000.0, 2.0), 1 - std::exp(-0.4), 1e-15);
  EXPECT_NEAR(damping_lambda(1, 100.0, 1000.0, 2.0), 1 - std::exp(-0.1), 1e-15);
}

TEST(Damping, LambdaIsMonotone) {
  for (int m = 1; m <= 3; ++m) {
    double prev = -1.0;
    for (double dt = 0.0; dt < 1e6; dt += 5e3) {
      const double l = damping_lambda(m, dt, kDefaultT1Ns);
      EXPECT_GE(l, prev);
      EXPECT_GE(l, 0.0);
      EXPECT_LE(l, 1.0);
      prev = l;
    }
    if (m > 1) EXPECT_GT(damping_lambda(m, 1e4, kDefaultT1Ns), damping_lambda(m - 1, 1e4, kDefaultT1Ns));
  }
}

TEST(Damping, GroundStateNeverDecays) {
  const auto ks = damping_kraus(4, 5e4, kDefaultT1Ns);
  Vector zero = Vector::Zero(4);
  zero(0) = 1.0;
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_kraus(rng, ks, zero), 0);
}

TEST(Damping, BranchProbabilitiesSumToOne) {
  const auto ks = damping_kraus(4, 3e4, kDefaultT1Ns);
  Rng rng(9);
  std::normal_distribution<double> g;
  for (int i = 0; i < 20; ++i) {
    Vector psi(4);
    for (int k = 0; k < 4; ++k) psi(k) = {g(rng), g(rng)};
    psi.normalize();
    const Matrix rho = psi * psi.adjoint();
    double total = 0.0;
    for (double p : kraus_probabilities(ks, rho)) {
      EXPECT_GE(p, -1e-15);
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Rng, DerivedStreamsAreReproducibleAndDistinct) {
  Rng a = derive_rng(11, 0), b = derive_rng(11, 0), c = derive_rng(11, 1), d = derive_rng(12, 0);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(NoiseConfig, JsonRoundTripAndValidation) {
  NoiseConfig n;
  n.t1_base_ns = 1e5;
  n.gate_fidelity["CX_2"] = 0.98;
  n.ququart_error_multiplier = 2.0;
  const NoiseConfig back = NoiseConfig::from_json(n.to_json());
  EXPECT_EQ(back.t1_base_ns, 1e5);
  EXPECT_EQ(back.gate_fidelity.at("CX_2"), 0.98);
  EXPECT_EQ(back.ququart_error_multiplier, 2.0);
  EXPECT_THROW((void)NoiseConfig::from_json(nlohmann::json{{"t1", 5.0}}), std::invalid_argument);
  EXPECT_THROW((void)NoiseConfig::from_json(nlohmann::json{{"T1_base_ns", -1.0}}), std::invalid_argument);
}

TEST(NoiseConfig, ZeroNoiseDisablesEverything) {
  const NoiseConfig z = NoiseConfig::zero_noise();
  EXPECT_FALSE(z.enable_damping);
  EXPECT_FALSE(z.enable_gate_errors);
}

TEST(NoiseConfig, LibraryAppliesOverrides) {
  NoiseConfig n;
  n.gate_fidelity["CX_2"] = 0.95;
  n.ququart_error_multiplier = 3.0;
  const GateLibrary lib = n.library();
  EXPECT_EQ(lib.spec("CX_2").fidelity, 0.95);
  EXPECT_NEAR(lib.spec("CX^{0q}").fidelity, 0.97, 1e-12);
  EXPECT_NEAR(lib.spec("U").fidelity, 0.999, 1e-12);
}
