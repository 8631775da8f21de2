#include "maslov/maslov.hpp"

#include <gtest/gtest.h>

using namespace maslov;

namespace {

LagrangianFrame line(double x, double xi) {
    Mat c(2, 1);
    c << x, xi;
    return LagrangianFrame(c);
}

LagrangianPath generator(int k, std::size_t intervals = 64) {
    return sample_path(random::generator_loop(1, k).evaluator(), true, SamplingOptions{intervals});
}

}  // namespace

TEST(Winding, ConstantLoopIsZero) {
    random::Rng rng(1);
    EXPECT_EQ(winding_index(LagrangianPath::constant(random::lagrangian(3, rng), 5)), 0);
}

TEST(Winding, GeneratorIsOne) { EXPECT_EQ(winding_index(generator(1)), 1); }

TEST(Winding, IteratedGenerator) {
    EXPECT_EQ(winding_index(generator(2)), 2);
    EXPECT_EQ(winding_index(generator(3)), 3);
    EXPECT_EQ(winding_index(generator(-2)), -2);
}

TEST(Winding, OpenPathRejected) {
    const LagrangianPath p = chart_path(line(1, 0), line(1, 1), line(0, 1));
    EXPECT_THROW(winding_index(p), PreconditionError);
}

TEST(Winding, UnderSampledLoopRejected) {
    // Three samples of the generator: det² phase steps of 0.8π and 1.2π.
    const auto loop = random::generator_loop(1, 1);
    std::vector<LagrangianFrame> s;
    std::vector<double> t{0.0, 0.4, 1.0};
    for (double u : t) s.push_back(loop.frame(u));
    EXPECT_THROW(winding_index(LagrangianPath(s, t, true)), UnderSampledPath);
}

TEST(Winding, RefinementAndReparametrizationInvariant) {
    random::Rng rng(4);
    for (int k = -2; k <= 2; ++k) {
        const auto loop = random::random_loop(2, k, rng);
        const auto f = loop.evaluator();
        const LagrangianPath coarse = sample_path(f, true, SamplingOptions{16});
        const LagrangianPath fine = sample_path(f, true, SamplingOptions{200});
        const LagrangianPath warped = sample_path(
            [f](double t) { return f(apply_schedule(Schedule::Smoothstep, t)); }, true, SamplingOptions{32});
        EXPECT_EQ(winding_index(coarse), k);
        EXPECT_EQ(winding_index(fine), k);
        EXPECT_EQ(winding_index(warped), k);
    }
}

TEST(Crossings, ConstantLoopHasNone) {
    const LagrangianPath p = LagrangianPath::constant(LagrangianFrame::horizontal(2), 8);
    EXPECT_TRUE(detect_crossings(p, LagrangianFrame::vertical(2)).empty());
    EXPECT_EQ(crossing_index(p, LagrangianFrame::vertical(2)), 0);
}

TEST(Crossings, GeneratorMeetsVerticalAtHalf) {
    const auto events = detect_crossings(generator(1), LagrangianFrame::vertical(1));
    ASSERT_EQ(events.size(), 1u);
    EXPECT_NEAR(events[0].t_star, 0.5, 1e-8);
    EXPECT_EQ(events[0].crossing_dim, 1);
}

TEST(Crossings, DoubledGenerator) {
    const auto events = detect_crossings(generator(2), LagrangianFrame::vertical(1));
    ASSERT_EQ(events.size(), 2u);
    EXPECT_NEAR(events[0].t_star, 0.25, 1e-8);
    EXPECT_NEAR(events[1].t_star, 0.75, 1e-8);
}

TEST(Crossings, EndpointOnAlphaRejected) {
    EXPECT_THROW(detect_crossings(generator(1), LagrangianFrame::horizontal(1)), PreconditionError);
}

TEST(CrossingIndex, Generator) {
    const CrossingReport r = crossing_details(generator(1), LagrangianFrame::vertical(1));
    EXPECT_EQ(r.index, 1);
    ASSERT_EQ(r.events.size(), 1u);
    EXPECT_EQ(r.events[0].jump, 2);
    EXPECT_EQ(crossing_index(generator(1).reversed(), LagrangianFrame::vertical(1)), -1);
}

TEST(CrossingIndex, ExplicitBeta) {
    EXPECT_EQ(crossing_index(generator(1), LagrangianFrame::vertical(1), line(1, 0.3)), 1);
    EXPECT_EQ(crossing_index(generator(2), LagrangianFrame::vertical(1), line(1, -0.2)), 2);
}

TEST(CrossingIndex, NonRegularCrossingRaises) {
    // e^{iπt}·I in Λ(2) meets the vertical in dimension 2 at t = 1/2.
    const LagrangianPath p = sample_path(
        [](double t) { return LagrangianFrame::from_unitary(std::polar(1.0, std::numbers::pi * t) * CMat::Identity(2, 2)); },
        true);
    EXPECT_EQ(winding_index(p), 2);
    EXPECT_THROW(crossing_index(p, LagrangianFrame::vertical(2)), NonRegularCrossing);
}

TEST(Closing, ClosedSigmaKeepsIndex) {
    const LagrangianPath g = generator(1);
    EXPECT_EQ(winding_index(close_in_transversal_chart(g, LagrangianFrame::vertical(1))), 1);
}

TEST(Closing, ArcIsLinearInSlope) {
    const LagrangianFrame v = LagrangianFrame::vertical(1);
    const LagrangianPath sigma = chart_path(line(1, 0), line(1, 1), line(-1, 1));
    const LagrangianPath loop = close_in_transversal_chart(sigma, v);
    ASSERT_TRUE(loop.closed());
    // The second half of the loop is the closing arc ξ = (1 − s)x.
    for (double s : {0.0, 0.25, 0.5, 0.9}) {
        EXPECT_TRUE(same_subspace(loop.at(0.5 + 0.5 * s), line(1, 1 - s), Tolerances{1e-7})) << s;
    }
}

TEST(Closing, ScheduleDoesNotChangeBracket) {
    random::Rng rng(8);
    for (int i = 0; i < 20; ++i) {
        const Eigen::Index n = i % 3 + 1;
        const LagrangianFrame a = random::lagrangian(n, rng);
        const LagrangianFrame b0 = random::lagrangian_transversal_to(n, {a}, rng);
        const LagrangianFrame b1 = random::lagrangian_transversal_to(n, {a, b0}, rng);
        const LagrangianFrame mid = random::lagrangian_transversal_to(n, {b0, b1}, rng);
        const LagrangianPath sigma = chart_path(b0, b1, mid);
        EXPECT_EQ(bracket(sigma, a, Schedule::Linear), bracket(sigma, a, Schedule::Smoothstep));
    }
}

TEST(Hormander, EqualBetasGiveZero) {
    random::Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        std::vector<LagrangianFrame> f;
        for (int j = 0; j < 3; ++j) f.push_back(random::lagrangian_transversal_to(2, f, rng));
        EXPECT_EQ(hormander_index(f[0], f[1], f[2], f[2], HormanderMethod::Signature), 0);
        EXPECT_EQ(hormander_index(f[0], f[1], f[2], f[2], HormanderMethod::Path), 0);
    }
}

TEST(Hormander, WorkedQuadruple) {
    const LagrangianFrame a = line(0, 1), ap = line(1, 1), b = line(1, 0), bp = line(1, 2);
    EXPECT_EQ(hormander_index(a, ap, b, bp, HormanderMethod::Signature), 1);
    EXPECT_EQ(hormander_index(a, ap, b, bp, HormanderMethod::Path), 1);
    EXPECT_EQ(hormander_index(ap, a, b, bp, HormanderMethod::Signature), -1);
    EXPECT_EQ(hormander_index(ap, a, b, bp, HormanderMethod::Path), -1);
}

TEST(Hormander, SignatureNeedsTransversalAlphas) {
    const LagrangianFrame a = line(0, 1), b = line(1, 0), bp = line(1, 2);
    EXPECT_THROW(hormander_index(a, a, b, bp, HormanderMethod::Signature), MethodDomainError);
    EXPECT_EQ(hormander_index(a, a, b, bp, HormanderMethod::Path), 0);
}

TEST(Hormander, StandingHypothesis) {
    const LagrangianFrame a = line(0, 1), ap = line(1, 1), b = line(1, 0);
    EXPECT_THROW(hormander_index(a, ap, b, ap, HormanderMethod::Signature), PreconditionError);
    EXPECT_THROW(hormander_index(a, ap, a, b, HormanderMethod::Path), PreconditionError);
}

TEST(Relative, SameLoopGivesZero) {
    random::Rng rng(10);
    const LagrangianFrame base = random::lagrangian(2, rng);
    const LagrangianPath l = sample_path(random::based_loop(base, 1, rng).evaluator(), true);
    EXPECT_EQ(relative_index(l, l, LagrangianPath({base, base}, {0.0, 1.0}, false)), 0);
    const LagrangianPath detour = sample_path(random::based_loop(base, 2, rng).evaluator(), true);
    EXPECT_EQ(relative_index(l, l, detour), 0);
}

TEST(Relative, GeneratorAgainstConstantVertical) {
    // σ: quarter turn from the horizontal to the vertical; σ′ turns the other way.
    const LagrangianPath lambda = generator(1);
    const LagrangianPath lambda0 = LagrangianPath::constant(LagrangianFrame::vertical(1));
    const LagrangianPath sigma = sample_path(
        [](double t) { return line(std::cos(std::numbers::pi * t / 2), std::sin(std::numbers::pi * t / 2)); }, false);
    const LagrangianPath sigma_p = sample_path(
        [](double t) { return line(std::cos(std::numbers::pi * t / 2), -std::sin(std::numbers::pi * t / 2)); }, false);
    EXPECT_EQ(relative_index(lambda, lambda0, sigma), 1);
    EXPECT_EQ(relative_index(lambda, lambda0, sigma_p), 1);
}

TEST(Relative, MismatchedEndpointsRaise) {
    const LagrangianPath lambda = generator(1);
    const LagrangianPath lambda0 = LagrangianPath::constant(LagrangianFrame::vertical(1));
    const LagrangianPath wrong = chart_path(line(1, 1), line(0, 1), line(1, -1));
    EXPECT_THROW(relative_index(lambda, lambda0, wrong), ConcatenationError);
}
