#include "maslov/maslov.hpp"

#include <gtest/gtest.h>

using namespace maslov;

class Suite : public ::testing::TestWithParam<std::string> {};

TEST_P(Suite, PassesOnFreshSeed) {
    const verify::SuiteResult r = verify::run_suite(GetParam(), 25, 20261016);
    EXPECT_TRUE(r.ok()) << r.first_counterexample;
    EXPECT_EQ(r.passed, 25);
}

TEST_P(Suite, IsDeterministic) {
    const verify::SuiteResult a = verify::run_suite(GetParam(), 5, 99);
    const verify::SuiteResult b = verify::run_suite(GetParam(), 5, 99);
    EXPECT_EQ(a.passed, b.passed);
    EXPECT_EQ(a.raised, b.raised);
    EXPECT_EQ(a.first_counterexample, b.first_counterexample);
}

INSTANTIATE_TEST_SUITE_P(All, Suite, ::testing::ValuesIn(verify::suite_names()),
                         [](const auto& info) { return info.param; });

TEST(RunSuite, RejectsBadArguments) {
    EXPECT_THROW(verify::run_suite("nope", 3, 0), InvalidInput);
    EXPECT_THROW(verify::run_suite("engines", 0, 0), InvalidInput);
}
