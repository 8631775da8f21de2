#include "maslov/maslov.hpp"

#include <gtest/gtest.h>

using namespace maslov;

namespace {

Mat m1(double v) { return Mat::Constant(1, 1, v); }

}  // namespace

TEST(Holonomy, Values) {
    EXPECT_EQ(holonomy_value(0).exponent_of_i(), 0);
    EXPECT_EQ(holonomy_value(1).exponent_of_i(), 1);
    EXPECT_EQ(holonomy_value(4).exponent_of_i(), 0);
    EXPECT_EQ(holonomy_value(-1).exponent_of_i(), 3);
    EXPECT_LT(std::abs(holonomy_value(1).value() - std::complex<double>(0, 1)), 1e-15);
}

TEST(Holonomy, IsAHomomorphism) {
    for (long long a = -9; a <= 9; ++a) {
        for (long long b = -9; b <= 9; ++b) {
            EXPECT_EQ(holonomy_value(a + b), holonomy_value(a) * holonomy_value(b));
        }
        EXPECT_EQ(holonomy_value(a + 4), holonomy_value(a));
    }
}

TEST(Phase8, OddExponentIsNotAPowerOfI) {
    EXPECT_FALSE(Phase8::from_eighths(3).in_z4());
    EXPECT_THROW(Phase8::from_eighths(3).exponent_of_i(), InvalidInput);
    EXPECT_EQ(Phase8::from_eighths(-2), Phase8::from_eighths(6));
}

TEST(Equivariance, TrivialRepresentation) {
    const std::vector<EquivarianceEntry> t{{"x", "g", {2, 1}, {2, 1}}, {"y", "g", {0, -3}, {0, -3}}};
    EXPECT_TRUE(check_equivariance(t, {{"g", 0}}));
}

TEST(Equivariance, GeneratorActsByMinusI) {
    // −i·(1 + 2i) = 2 − i.
    const std::vector<EquivarianceEntry> t{{"x", "g", {1, 2}, {2, -1}}};
    EXPECT_TRUE(check_equivariance(t, {{"g", 1}}));
}

TEST(Equivariance, WrongSignRejected) {
    // i·(1 + 2i) = −2 + i.
    const std::vector<EquivarianceEntry> t{{"x", "g", {1, 2}, {-2, 1}}};
    EXPECT_FALSE(check_equivariance(t, {{"g", 1}}));
}

TEST(Equivariance, MissingLoopIndex) {
    const std::vector<EquivarianceEntry> t{{"x", "h", {1, 0}, {1, 0}}};
    EXPECT_THROW(check_equivariance(t, {{"g", 1}}), InvalidInput);
}

TEST(QPsi, WorkedChart) {
    const PhaseChart c(m1(0), m1(1), m1(-1));
    const QPsi q = q_psi(c, TestFunction{m1(0)});
    Mat expected(2, 2);
    expected << 0, 1, 1, -1;
    EXPECT_LT((q.form.matrix() - expected).norm(), 1e-15);
    EXPECT_TRUE(q.nondegenerate);
    EXPECT_EQ(q.form.signature(), 0);
}

TEST(QPsi, HyperbolicBlock) {
    const Mat p = (Mat(2, 2) << 1, 0.5, 0.5, -2).finished();
    const PhaseChart c(p, Mat::Identity(2, 2), Mat::Zero(2, 2));
    const QPsi q = q_psi(c, TestFunction{p});
    Mat expected = Mat::Zero(4, 4);
    expected.topRightCorner(2, 2) = Mat::Identity(2, 2);
    expected.bottomLeftCorner(2, 2) = Mat::Identity(2, 2);
    EXPECT_LT((q.form.matrix() - expected).norm(), 1e-15);
    EXPECT_EQ(q.form.signature(), 0);
}

TEST(QPsi, ShiftingPsiShiftsTopLeft) {
    random::Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        const PhaseChart c = random::chart(2, 2, rng);
        const Mat psi = random::symmetric(2, rng);
        const double shift = random::uniform(-2, 2, rng);
        const Mat a = q_psi(c, TestFunction{psi}).form.matrix();
        const Mat b = q_psi(c, TestFunction{psi + shift * Mat::Identity(2, 2)}).form.matrix();
        Mat diff = Mat::Zero(4, 4);
        diff.topLeftCorner(2, 2) = -shift * Mat::Identity(2, 2);
        EXPECT_LT((b - a - diff).norm(), 1e-12);
    }
}

TEST(PhaseChart, RejectsDegeneratePhase) {
    EXPECT_THROW(PhaseChart(m1(0), m1(0), m1(0)), InvalidInput);
    EXPECT_THROW(PhaseChart(m1(0), Mat::Zero(1, 2), Mat::Zero(2, 2)), InvalidInput);
    EXPECT_THROW(PhaseChart((Mat(2, 2) << 0, 1, 0, 0).finished(), Mat::Ones(2, 1), m1(1)), InvalidInput);
}

TEST(PhaseChart, LagrangianOfWorkedChart) {
    // ∂θφ = x − θ = 0 and ξ = θ: the diagonal.
    EXPECT_TRUE(same_subspace(PhaseChart(m1(0), m1(1), m1(-1)).lagrangian(),
                              LagrangianFrame((Mat(2, 1) << 1, 1).finished())));
}

TEST(SignatureRelation, WorkedChart) {
    const SignatureRelation r = check_signature_relation(PhaseChart(m1(0), m1(1), m1(-1)), TestFunction{m1(0)});
    EXPECT_EQ(r.lhs, 0);
    EXPECT_EQ(r.crossing_term, 1);
    EXPECT_EQ(r.fiber_term, -1);
    EXPECT_TRUE(r.equal);
}

TEST(SignatureRelation, PositiveFiberOneVariable) {
    // φ = x²/2 + xθ/2 + θ²: λ is ξ = (1 − 1/8)x, transversal to the vertical.
    const PhaseChart c(m1(1), m1(0.5), m1(2));
    const SignatureRelation r = check_signature_relation(c, TestFunction{m1(-1)});
    EXPECT_EQ(r.fiber_term, 1);
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.lhs, 2);
}

TEST(SignatureRelation, FiberCongruence) {
    random::Rng rng(21);
    for (int i = 0; i < 30; ++i) {
        const PhaseChart c = random::chart(2, 3, rng);
        const TestFunction psi = random::admissible_psi(c.lagrangian(), rng);
        const SignatureRelation a = check_signature_relation(c, psi);
        const SignatureRelation b = check_signature_relation(c.fiber_changed(random::well_conditioned(3, rng)), psi);
        EXPECT_EQ(a.lhs, b.lhs);
        EXPECT_EQ(a.rhs, b.rhs);
        EXPECT_TRUE(a.equal && b.equal);
    }
}

TEST(SignatureRelation, DegenerateQPsiRaises) {
    // ψ = x²/2 has the same tangent as the chart's λ = {ξ = x}.
    EXPECT_THROW(check_signature_relation(PhaseChart(m1(0), m1(1), m1(-1)), TestFunction{m1(1)}), PreconditionError);
}

TEST(Transition, SameChartIsOne) {
    const PhaseChart c(m1(0), m1(1), m1(-1));
    const Transition t = transition_factor(c, c, TestFunction{m1(0)});
    EXPECT_EQ(t.signature_difference, 0);
    EXPECT_EQ(t.factor, Phase8{});
}

TEST(Transition, OppositeFiberSignsGiveI) {
    // Both charts generate the diagonal ξ = x.
    const PhaseChart plus(m1(1), m1(0), m1(1));
    const PhaseChart minus(m1(0), m1(1), m1(-1));
    const Transition t = transition_factor(plus, minus, TestFunction{m1(0)});
    EXPECT_EQ(t.signature_difference, 2);
    EXPECT_EQ(t.factor.exponent_of_i(), 1);
}

TEST(Transition, DifferentLagrangiansRejected) {
    EXPECT_THROW(transition_factor(PhaseChart(m1(0), m1(1), m1(-1)), PhaseChart(m1(2), m1(0), m1(1)),
                                   TestFunction{m1(0)}),
                 IncompatibleCharts);
}
