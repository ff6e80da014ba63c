#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "psseg/errors.hpp"
#include "psseg/evolve.hpp"
#include "psseg/fixtures.hpp"

namespace psseg {
namespace {

ScalarField two_level(int w, int h) {
    ScalarField image(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double dx = x - 22.0;
            const double dy = y - 27.0;
            image(x, y) = dx * dx / 196.0 + dy * dy / 100.0 <= 1.0 ? 180.0 : 60.0;
        }
    }
    return image;
}

EvolveState fresh_state(const ScalarField& image, const ScalarField& phi) {
    return EvolveState{phi, image, image, 0, 0, 0.0};
}

TEST(DataTermTest, VanishesForPerfectConstantFit) {
    const ScalarField image(10, 8, 42.0);
    const ScalarField d = data_term(image, image, image, 0.02);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(d[i], 0.0);
}

TEST(DataTermTest, PixelWithPerfectInsideFitIsPulledIn) {
    const ScalarField d =
        data_term(ScalarField(5, 5, 100.0), ScalarField(5, 5, 100.0), ScalarField(5, 5, 0.0), 0.02);
    EXPECT_EQ(d(2, 2), 10000.0);
}

TEST(DataTermTest, MatchesPointwiseOracle) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const int w = 4 + static_cast<int>(rng() % 10);
        const int h = 4 + static_cast<int>(rng() % 10);
        const double mu = fixtures::uniform(rng, 0.001, 1.0);
        const ScalarField image = testing::random_field(w, h, rng);
        const ScalarField up = testing::random_field(w, h, rng);
        const ScalarField um = testing::random_field(w, h, rng);
        const ScalarField d = data_term(image, up, um, mu);
        const Gradient gp = gradient(up);
        const Gradient gm = gradient(um);
        for (std::size_t i = 0; i < image.size(); ++i) {
            const double expected = -std::pow(up[i] - image[i], 2) -
                                    mu * (gp.fx[i] * gp.fx[i] + gp.fy[i] * gp.fy[i]) +
                                    std::pow(um[i] - image[i], 2) +
                                    mu * (gm.fx[i] * gm.fx[i] + gm.fy[i] * gm.fy[i]);
            EXPECT_NEAR(d[i], expected, 1e-12 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST(DataTermTest, RejectsShapeMismatch) {
    EXPECT_THROW(data_term(ScalarField(4, 4), ScalarField(4, 4), ScalarField(4, 5), 0.02),
                 DimensionError);
}

TEST(StepTest, SignedDistancePlaneOnConstantImageIsFixed) {
    const ScalarField image(30, 24, 90.0);
    ScalarField phi(30, 24);
    for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 30; ++x) phi(x, y) = 0.6 * x + 0.8 * y - 15.0;
    const Params params;
    const GaussianKernel k = make_kernel(params.t);
    const FitCache cache = precompute(image, k);
    EvolveState state = fresh_state(image, phi);
    step(state, image, k, cache, params);
    EXPECT_EQ(state.iteration, 1);
    // The replicate edge imposes zero flux, which a tilted plane violates, so
    // the fixed point holds away from the outer ring only.
    for (int y = 1; y < 23; ++y)
        for (int x = 1; x < 29; ++x) EXPECT_NEAR(state.phi(x, y), phi(x, y), params.dt * 1e-6);
}

TEST(StepTest, ConsumesTwoConvolutionsAndIsDeterministic) {
    const ScalarField image = two_level(40, 40);
    const Params params;
    const GaussianKernel k = make_kernel(params.t);
    const FitCache cache = precompute(image, k);
    const ScalarField phi = init_phi(CircleContour{20, 20, 9}, 40, 40, params.c0);
    EvolveState a = fresh_state(image, phi);
    EvolveState b = fresh_state(image, phi);
    const std::size_t before = k.conv_count();
    step(a, image, k, cache, params);
    EXPECT_EQ(k.conv_count() - before, 2u);
    EXPECT_EQ(a.convolutions_this_run, 2u);
    step(b, image, k, cache, params);
    EXPECT_EQ(a.phi, b.phi);
    EXPECT_EQ(a.u_plus, b.u_plus);
    EXPECT_EQ(a.u_minus, b.u_minus);
    EXPECT_GE(a.wall_ms_per_iter, 0.0);
}

TEST(StepTest, MatchesStraightLineTransliteration) {
    const ScalarField image = two_level(50, 50);
    const Params params;
    const GaussianKernel k = make_kernel(params.t);
    const FitCache cache = precompute(image, k);
    const ScalarField phi = init_phi(CircleContour{24, 25, 10}, 50, 50, params.c0);
    EvolveState state = fresh_state(image, phi);
    step(state, image, k, cache, params);

    // reference built from the four textbook convolutions
    const ScalarField hp = heaviside(phi, params.epsilon);
    ScalarField ih(50, 50), i_out(50, 50), h_out(50, 50);
    for (std::size_t i = 0; i < hp.size(); ++i) {
        ih[i] = image[i] * hp[i];
        i_out[i] = image[i] * (1.0 - hp[i]);
        h_out[i] = 1.0 - hp[i];
    }
    const GaussianKernel k2 = make_kernel(params.t);
    const ScalarField a = convolve(ih, k2);
    const ScalarField b = convolve(hp, k2);
    const ScalarField c = convolve(i_out, k2);
    const ScalarField d = convolve(h_out, k2);
    ScalarField up(50, 50), um(50, 50);
    for (std::size_t i = 0; i < hp.size(); ++i) {
        up[i] = a[i] / b[i];
        um[i] = c[i] / d[i];
    }
    const Gradient gp = gradient(up);
    const Gradient gm = gradient(um);
    const ScalarField kappa = curvature(phi);
    const ScalarField reg = dist_reg_term(phi);
    const ScalarField delta = dirac(phi, params.epsilon);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double data = -(up[i] - image[i]) * (up[i] - image[i]) -
                            params.mu * (gp.fx[i] * gp.fx[i] + gp.fy[i] * gp.fy[i]) +
                            (um[i] - image[i]) * (um[i] - image[i]) +
                            params.mu * (gm.fx[i] * gm.fx[i] + gm.fy[i] * gm.fy[i]);
        const double expected =
            phi[i] + params.dt * (params.alpha * reg[i] + delta[i] * (params.nu * kappa[i] + data));
        worst = std::max(worst, std::abs(state.phi[i] - expected));
        EXPECT_NEAR(state.u_plus[i], up[i], 1e-10);
        EXPECT_NEAR(state.u_minus[i], um[i], 1e-10);
    }
    EXPECT_LE(worst, 1e-10);
}

TEST(StepTest, ReportsBlowupIteration) {
    const ScalarField image = two_level(30, 30);
    Params params;
    params.dt = 1e300;
    const GaussianKernel k = make_kernel(params.t);
    const FitCache cache = precompute(image, k);
    EvolveState state = fresh_state(image, init_phi(CircleContour{15, 15, 6}, 30, 30, 2.0));
    try {
        step(state, image, k, cache, params);
        step(state, image, k, cache, params);
        FAIL() << "expected a blowup";
    } catch (const NumericalBlowup& e) {
        EXPECT_GE(e.iteration(), 1);
        EXPECT_LE(e.iteration(), 2);
    }
}

TEST(RunTest, TrivialToleranceStopsAfterOneIteration) {
    const ScalarField image = two_level(40, 40);
    Params params;
    params.tol = 1.0;
    params.patience = 1;
    const RunResult r = run(image, CircleContour{20, 20, 8}, params);
    EXPECT_EQ(r.iterations, 1);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].iteration, 1);
    EXPECT_EQ(r.rows[0].convolutions, 4u);
    EXPECT_EQ(r.total_convolutions, 4u);
}

TEST(RunTest, ZeroIterationsReturnsInitialization) {
    const ScalarField image = two_level(40, 40);
    Params params;
    params.max_iters = 0;
    const RunResult r = run(image, RectContour{5, 6, 20, 30}, params);
    EXPECT_EQ(r.iterations, 0);
    EXPECT_TRUE(r.rows.empty());
    EXPECT_EQ(r.mask.values, r.initial_mask.values);
    EXPECT_EQ(r.phi, r.initial_phi);
    EXPECT_EQ(r.total_convolutions, 2u);
}

TEST(RunTest, ConvolutionBudgetAndMetricRows) {
    const ScalarField image = two_level(48, 48);
    Params params;
    params.max_iters = 37;
    const RunResult r = run(image, CircleContour{24, 24, 10}, params);
    EXPECT_EQ(r.total_convolutions, static_cast<std::size_t>(2 + 2 * r.iterations));
    ASSERT_EQ(r.rows.size(), static_cast<std::size_t>(r.iterations));
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        EXPECT_EQ(r.rows[i].iteration, static_cast<long>(i + 1));
        EXPECT_EQ(r.rows[i].convolutions, 2 + 2 * (i + 1));
        EXPECT_GE(r.rows[i].sign_change_frac, 0.0);
        EXPECT_LE(r.rows[i].sign_change_frac, 1.0);
        EXPECT_GE(r.rows[i].wall_ms, 0.0);
    }
    EXPECT_EQ(r.mask.values, positive_region(r.phi).values);
}

TEST(RunTest, Deterministic) {
    const ScalarField image = two_level(40, 40);
    Params params;
    params.max_iters = 60;
    const RunResult a = run(image, CircleContour{20, 22, 9}, params);
    const RunResult b = run(image, CircleContour{20, 22, 9}, params);
    EXPECT_EQ(a.mask.values, b.mask.values);
    EXPECT_EQ(a.phi, b.phi);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(RunTest, SegmentsTwoLevelImage) {
    const ScalarField image = two_level(50, 50);
    const RunResult r = run(image, CircleContour{22, 27, 8}, Params{});
    BinaryMask truth(50, 50);
    for (std::size_t i = 0; i < image.size(); ++i) truth.values[i] = image[i] > 100.0;
    EXPECT_GT(dice(r.mask, truth), dice(r.initial_mask, truth));
    EXPECT_TRUE(r.phi.all_finite());
}

TEST(RunTest, RejectsBadInputs) {
    Params params;
    EXPECT_THROW(run(ScalarField(20, 20, 300.0), CircleContour{10, 10, 4}, params),
                 ParameterError);
    EXPECT_THROW(run(ScalarField(2, 20, 10.0), CircleContour{1, 10, 1}, params), DimensionError);
    params.patience = 0;
    EXPECT_THROW(run(ScalarField(20, 20, 10.0), CircleContour{10, 10, 4}, params),
                 ParameterError);
}

TEST(DiceTest, Cases) {
    BinaryMask a(10, 10, 1);
    BinaryMask b(10, 10, 0);
    for (int i = 0; i < 50; ++i) b.values[i] = 1;
    EXPECT_DOUBLE_EQ(dice(a, a), 1.0);
    EXPECT_DOUBLE_EQ(dice(a, b), 2.0 / 3.0);
    BinaryMask c(10, 10, 0);
    for (int i = 50; i < 100; ++i) c.values[i] = 1;
    EXPECT_DOUBLE_EQ(dice(b, c), 0.0);
    BinaryMask empty(10, 10, 0);
    EXPECT_DOUBLE_EQ(dice(empty, empty), 1.0);
    EXPECT_DOUBLE_EQ(dice(empty, a), 0.0);
    BinaryMask other(10, 9, 0);
    EXPECT_THROW(dice(a, other), DimensionError);
}

TEST(ParamsTest, DefaultsAndValidation) {
    const Params p;
    EXPECT_DOUBLE_EQ(p.alpha, 0.02);
    EXPECT_DOUBLE_EQ(p.nu, 0.001 * 255 * 255);
    EXPECT_DOUBLE_EQ(p.mu, 0.02);
    EXPECT_DOUBLE_EQ(p.dt, 0.025);
    EXPECT_NO_THROW(p.validate());
    for (double Params::*field : {&Params::alpha, &Params::nu, &Params::mu, &Params::dt,
                                  &Params::t, &Params::epsilon, &Params::c0, &Params::tau,
                                  &Params::eta}) {
        Params bad;
        bad.*field = 0.0;
        EXPECT_THROW(bad.validate(), ParameterError);
        bad.*field = -1.0;
        EXPECT_THROW(bad.validate(), ParameterError);
    }
    Params bad;
    bad.tol = -0.1;
    EXPECT_THROW(bad.validate(), ParameterError);
    bad = Params{};
    bad.max_iters = -1;
    EXPECT_THROW(bad.validate(), ParameterError);
}

}  // namespace
}  // namespace psseg
