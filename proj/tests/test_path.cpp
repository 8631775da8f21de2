#include "maslov/maslov.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace maslov;

namespace {

LagrangianFrame line(double slope) {
    Mat s(1, 1);
    s << slope;
    return LagrangianFrame::graph_of(s);
}

}  // namespace

TEST(Path, ValidatesParams) {
    const auto h = LagrangianFrame::horizontal(1);
    EXPECT_THROW(LagrangianPath({h}, {0.0}, false), InvalidInput);
    EXPECT_THROW(LagrangianPath({h, h}, {0.0, 0.5}, false), InvalidInput);
    EXPECT_THROW(LagrangianPath({h, h, h}, {0.0, 0.5, 0.5}, false), InvalidInput);
    EXPECT_THROW(LagrangianPath({h, LagrangianFrame::vertical(1)}, {0.0, 1.0}, true), InvalidInput);
}

TEST(Path, SampleOnlyInterpolationStaysInChart) {
    const LagrangianPath p({line(0.0), line(1.0)}, {0.0, 1.0}, false);
    EXPECT_TRUE(same_subspace(p.at(0.5), line(0.5)));
}

TEST(Path, ReversedRunsBackwards) {
    const LagrangianPath p = chart_path(line(0.0), line(2.0), LagrangianFrame::vertical(1));
    const LagrangianPath r = p.reversed();
    EXPECT_TRUE(same_subspace(r.front(), line(2.0)));
    EXPECT_TRUE(same_subspace(r.back(), line(0.0)));
    EXPECT_TRUE(same_subspace(r.at(0.25), p.at(0.75)));
}

TEST(Path, ChartCoordinatesRoundTrip) {
    random::Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        const Eigen::Index n = i % 3 + 1;
        const LagrangianFrame avoid = random::lagrangian(n, rng);
        const LagrangianFrame l = random::lagrangian_transversal_to(n, {avoid}, rng);
        const TransversalChart chart(avoid);
        const Mat s = chart.coordinates(l);
        EXPECT_LT((s - s.transpose()).norm(), 1e-9);
        EXPECT_TRUE(same_subspace(chart.frame(s), l));
    }
}

TEST(Path, ChartRejectsNonTransversal) {
    const TransversalChart chart(LagrangianFrame::vertical(1));
    EXPECT_THROW(chart.coordinates(LagrangianFrame::vertical(1)), PreconditionError);
}

TEST(Path, SamplingRefinesFastSegments) {
    const auto loop = random::generator_loop(1, 3);
    const LagrangianPath p = sample_path(loop.evaluator(), true, SamplingOptions{4});
    for (std::size_t i = 1; i < p.size(); ++i) {
        EXPECT_LE(std::abs(phase_step(det_squared_phase(p.samples()[i - 1]), det_squared_phase(p.samples()[i]))),
                  std::numbers::pi / 4 + 1e-12);
    }
}

TEST(Path, ConcatenationChecksJunctions) {
    const LagrangianPath a = chart_path(line(0.0), line(1.0), LagrangianFrame::vertical(1));
    const LagrangianPath b = chart_path(line(2.0), line(3.0), LagrangianFrame::vertical(1));
    EXPECT_THROW(concatenate({a, b}), ConcatenationError);
    const LagrangianPath ab = concatenate({a, a.reversed()});
    EXPECT_TRUE(ab.closed());
    EXPECT_TRUE(same_subspace(ab.at(0.5), line(1.0)));
}

TEST(Path, SmoothstepHasSameEndpoints) {
    EXPECT_EQ(apply_schedule(Schedule::Smoothstep, 0.0), 0.0);
    EXPECT_EQ(apply_schedule(Schedule::Smoothstep, 1.0), 1.0);
    EXPECT_NEAR(apply_schedule(Schedule::Smoothstep, 0.5), 0.5, 1e-15);
}
