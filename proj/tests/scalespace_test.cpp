#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "psseg/errors.hpp"
#include "psseg/fixtures.hpp"
#include "psseg/scalespace.hpp"

namespace psseg {
namespace {

double total(const ScalarField& f) {
    const auto v = f.values();
    return std::accumulate(v.begin(), v.end(), 0.0);
}

TEST(HeatStepTest, ImpulseSpreadsToNeighbours) {
    ScalarField f(5, 5);
    f(2, 2) = 1.0;
    const ScalarField g = heat_step(f, 0.25);
    EXPECT_DOUBLE_EQ(g(2, 2), 0.0);
    EXPECT_DOUBLE_EQ(g(1, 2), 0.25);
    EXPECT_DOUBLE_EQ(g(3, 2), 0.25);
    EXPECT_DOUBLE_EQ(g(2, 1), 0.25);
    EXPECT_DOUBLE_EQ(g(2, 3), 0.25);
    EXPECT_DOUBLE_EQ(g(1, 1), 0.0);
}

TEST(HeatStepTest, ConstantUnchanged) {
    const ScalarField f(7, 6, 3.25);
    EXPECT_EQ(heat_step(f, 0.2), f);
}

TEST(HeatStepTest, ConservesMassForInteriorSupport) {
    std::mt19937 rng(31);
    ScalarField f(20, 20);
    for (int y = 5; y < 15; ++y)
        for (int x = 5; x < 15; ++x) f(x, y) = fixtures::uniform(rng, 0.0, 255.0);
    const double before = total(f);
    ScalarField g = f;
    for (int i = 0; i < 3; ++i) {
        const double prev = total(g);
        g = heat_step(g, 0.25);
        EXPECT_NEAR(total(g), prev, 1e-9);
    }
    EXPECT_NEAR(total(g), before, 3e-9);
}

TEST(HeatStepTest, StepBounds) {
    const ScalarField f(6, 6, 1.0);
    EXPECT_NO_THROW(heat_step(f, kMaxHeatStep));
    EXPECT_THROW(heat_step(f, 0.26), StabilityError);
    EXPECT_THROW(heat_step(f, 0.0), ParameterError);
    EXPECT_THROW(diffuse(DiffusionRun{f, 1.0, 0.3}), StabilityError);
}

TEST(HeatStepTest, MaximumPrinciple) {
    std::mt19937 rng(32);
    const ScalarField f = testing::random_field(24, 18, rng);
    ScalarField g = f;
    for (int i = 0; i < 40; ++i) {
        g = heat_step(g, 0.25);
        EXPECT_GE(g.min(), f.min() - 1e-12);
        EXPECT_LE(g.max(), f.max() + 1e-12);
    }
}

TEST(DiffuseTest, StepCount) {
    std::mt19937 rng(33);
    const ScalarField f = testing::random_field(10, 10, rng);
    EXPECT_EQ(diffuse(DiffusionRun{f, 0.0, 0.2}), f);
    // 0.5 / 0.2 rounds up to three equal steps of 1/6
    ScalarField manual = f;
    for (int i = 0; i < 3; ++i) manual = heat_step(manual, 0.5 / 3.0);
    EXPECT_LE(testing::max_abs_diff(diffuse(DiffusionRun{f, 0.5, 0.2}), manual), 1e-12);
}

TEST(VerifyScalespaceTest, TrivialCases) {
    const ScalarField smooth = fixtures::smooth_random();
    EXPECT_EQ(verify_scalespace(smooth, 0.0, 0.2), 0.0);
    EXPECT_NEAR(verify_scalespace(ScalarField(20, 20, 77.0), 1.3, 0.1), 0.0, 1e-12);
    EXPECT_THROW(verify_scalespace(smooth, 1.0, 0.5), StabilityError);
}

TEST(VerifyScalespaceTest, HeatFlowMatchesGaussianBlur) {
    const ScalarField f = fixtures::smooth_random();
    ASSERT_EQ(f.width(), 64);
    ASSERT_EQ(f.height(), 64);
    EXPECT_LT(verify_scalespace(f, 2.0, 0.2), 0.02);
}

TEST(VerifyScalespaceTest, ErrorShrinksWhenStepHalved) {
    const ScalarField f = fixtures::smooth_random();
    EXPECT_LT(verify_scalespace(f, 2.0, 0.1), verify_scalespace(f, 2.0, 0.2));
}

// Against a fine-step run the time-discretization error alone halves with
// the step. (Against the continuous Gaussian the total error bottoms out near
// dt_h = 1/12, where the Euler and 5-point stencil errors cancel, and then
// climbs back to the spatial floor.)
TEST(VerifyScalespaceTest, FirstOrderInTime) {
    const ScalarField f = fixtures::smooth_random();
    const ScalarField reference = diffuse(DiffusionRun{f, 2.0, 0.001});
    double previous = 0.0;
    for (double dt : {0.2, 0.1, 0.05}) {
        const double err = testing::max_abs_diff(diffuse(DiffusionRun{f, 2.0, dt}), reference);
        if (previous > 0.0) {
            EXPECT_LT(err, previous);
            EXPECT_NEAR(previous / err, 2.0, 0.25);
        }
        previous = err;
    }
}

}  // namespace
}  // namespace psseg
