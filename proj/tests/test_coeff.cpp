#include "oracles.hpp"

#include "dilab/coeff.hpp"

#include <catch_amalgamated.hpp>

using namespace dilab;
using Catch::Approx;

TEST_CASE("extract_c2 in both factor modes")
{
    const Kernel1D phi = Kernel1D::gaussian(1.0);
    const RadialKernel3D theta = RadialKernel3D::gaussian(1.0);
    CHECK(extract_c2(phi, theta) == Approx(1.0).epsilon(1e-14));
    CHECK(extract_c2(phi, theta, FactorMode::paper_literal) == Approx(3.0).epsilon(1e-14));
    CHECK(extract_c2(phi, RadialKernel3D::gaussian(1.0, 0.0)) == 0.0);

    // s^2 Z / sigma^2 for general widths
    CHECK(extract_c2(Kernel1D::gaussian(0.3), RadialKernel3D::gaussian(0.45, 0.8)) ==
          Approx(0.45 * 0.45 * 0.8 / 0.09).epsilon(1e-13));
}

TEST_CASE("literal factor is exactly three times the corrected one")
{
    const KernelPair pair = make_kernel_pair(1.7, 0.4, 0.15, KernelFamily::bump);
    const double lit = extract_c2(pair.temporal, pair.spatial, FactorMode::paper_literal);
    const double cor = extract_c2(pair.temporal, pair.spatial, FactorMode::corrected);
    CHECK(lit / cor == Approx(3.0).epsilon(1e-15));
}

TEST_CASE("degenerate temporal kernel is rejected")
{
    const Kernel1D empty = Kernel1D::gaussian(1.0, 0.0);
    try
    {
        (void)extract_c2(empty, RadialKernel3D::gaussian(1.0));
        FAIL("expected DegenerateTemporalKernel");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::DegenerateTemporalKernel);
    }
    CHECK_THROWS_AS(extract_m2c4(empty, RadialKernel3D::gaussian(1.0)), Error);
}

TEST_CASE("extract_m2c4 and the tachyonic flag")
{
    const Kernel1D phi = Kernel1D::gaussian(0.2);
    CHECK(extract_m2c4(phi, RadialKernel3D::gaussian(0.3, 1.0)).value == Approx(0.0).margin(1e-14));

    const MassEnergyEstimate massive = extract_m2c4(phi, RadialKernel3D::gaussian(0.3, 0.98));
    CHECK(massive.value == Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(massive.tachyonic_warning);

    const MassEnergyEstimate tachyon = extract_m2c4(phi, RadialKernel3D::gaussian(0.3, 1.02));
    CHECK(tachyon.value == Approx(-1.0).epsilon(1e-12));
    CHECK(tachyon.tachyonic_warning);

    const ParticleCoefficients coeffs = extract_coefficients(phi, RadialKernel3D::gaussian(0.3, 1.02));
    CHECK(coeffs.tachyonic);
    CHECK(coeffs.m2c4 < 0);
}

TEST_CASE("coefficient round trip over the parameter grid")
{
    for (auto family : {KernelFamily::gaussian, KernelFamily::bump})
    {
        for (double c : {0.5, 1.0, 2.0})
        {
            for (double m : {0.0, 1.0})
            {
                for (double sigma : {0.1, 0.2})
                {
                    const KernelPair pair = make_kernel_pair(c, m, sigma, family);
                    const ParticleCoefficients got = extract_coefficients(pair.temporal, pair.spatial);
                    const ParticleCoefficients want = ParticleCoefficients::from_physical(c, m);
                    INFO("family " << to_string(family) << " c " << c << " m " << m << " sigma " << sigma);
                    CHECK(std::abs(got.c2 - want.c2) <= 1e-10 * want.c2);
                    CHECK(std::abs(got.m2c4 - want.m2c4) <= 1e-10 * std::max(want.m2c4, 1.0));
                    CHECK(got.factor_mode == FactorMode::corrected);
                }
            }
        }
    }
}

TEST_CASE("axis coefficients are invariant under scale changes")
{
    for (auto family : {KernelFamily::gaussian, KernelFamily::bump})
    {
        const KernelPair pair = make_kernel_pair(1.0, 1.0, 0.2, family);
        const ParticleCoefficients base = extract_coefficients(pair.temporal, pair.spatial);
        const AxisCoefficients identity = axis_coefficients(pair.temporal, pair.spatial, 1.0, 1.0);
        CHECK(identity.c2_x == Approx(base.c2).epsilon(1e-12));
        CHECK(identity.mu2c4 == Approx(base.m2c4).epsilon(1e-12));

        for (auto [a11, a22] : {std::pair{1.3, 1.3}, std::pair{1.3, 1.0}, std::pair{0.6, 1.7}})
        {
            const AxisCoefficients ax = axis_coefficients(pair.temporal, pair.spatial, a11, a22);
            CHECK(std::abs(ax.c2_x - base.c2) < 1e-9);
            CHECK(std::abs(ax.c2_y - base.c2) < 1e-9);
            CHECK(std::abs(ax.c2_z - base.c2) < 1e-9);
            CHECK(std::abs(ax.mu2c4 - base.m2c4) < 1e-9);
        }
    }
    const KernelPair pair = make_kernel_pair(1.0, 0.0, 0.2);
    try
    {
        (void)axis_coefficients(pair.temporal, pair.spatial, 2.0, 1.0);
        FAIL("expected ScaleOutOfRange");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::ScaleOutOfRange);
    }
    const AxisCoefficients literal = axis_coefficients(pair.temporal, pair.spatial, 1.2, 0.9, FactorMode::paper_literal);
    CHECK(literal.c2_x == Approx(3.0).epsilon(1e-9));
}

namespace
{

// Direct evaluation of the partial sum with binomials from lgamma.
double series_oracle(int n, double eps, int terms)
{
    double sum = 0;
    for (int k = 0; k <= terms; ++k)
    {
        const double binom = std::exp(std::lgamma(k + n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n + 1.0));
        sum += (k % 2 ? -1.0 : 1.0) * binom * std::pow(eps, k);
    }
    return std::pow(1 + eps, n + 1) * sum;
}

} // namespace

TEST_CASE("alternating binomial series partial sums")
{
    // (1 + 0.3)(1 - 0.3): the partial sums approach one from alternating sides.
    CHECK(appendix_series(0, 0.3, 1) == Approx(0.91).epsilon(1e-15));
    CHECK(appendix_series(0, 0.3, 0) == Approx(1.3).epsilon(1e-15));
    CHECK(std::abs(appendix_series(2, 0.3, 40) - 1) < 1e-12);
    for (int k : {0, 1, 5, 30})
        CHECK(appendix_series(2, 0.0, k) == 1.0);

    for (int n = 0; n <= 4; ++n)
    {
        for (double eps : {0.1, 0.3, 0.5})
        {
            CHECK(appendix_series(n, eps, 25) == Approx(series_oracle(n, eps, 25)).epsilon(1e-12));
            // n = 4, eps = 0.5 still carries a truncation tail of 1.46e-12 at K = 60.
            const int terms = (n == 4 && eps == 0.5) ? 62 : 60;
            CHECK(std::abs(appendix_series(n, eps, terms) - 1) < 1e-12);
        }
    }
    CHECK(std::abs(appendix_series(4, 0.5, 60) - 1) == Approx(1.455e-12).epsilon(1e-3));

    // Beyond the alternation threshold the error shrinks monotonically.
    double previous = std::abs(appendix_series(4, 0.5, 10) - 1);
    for (int k = 11; k <= 60; ++k)
    {
        const double err = std::abs(appendix_series(4, 0.5, k) - 1);
        CHECK(err < previous);
        previous = err;
    }
    CHECK_THROWS_AS(appendix_series(1, 1.0, 5), Error);
}

TEST_CASE("scaled moment check")
{
    const Kernel1D unit = Kernel1D::gaussian(1.0);
    const ScaledMomentCheck zero = scaled_moment_check(unit, 0, 0.5);
    CHECK(zero.lhs == Approx(1.0).epsilon(1e-12));
    CHECK(zero.rhs == Approx(1.0).epsilon(1e-12));
    const ScaledMomentCheck second = scaled_moment_check(unit, 2, 0.3);
    CHECK(second.lhs == Approx(1.0).epsilon(1e-12));
    CHECK(second.rhs == Approx(1.0).epsilon(1e-12));

    for (const Kernel1D& k : {Kernel1D::gaussian(0.4), Kernel1D::bump(0.9, 2.0)})
    {
        const ScaledMomentCheck same = scaled_moment_check(k, 2, 0.0);
        CHECK(same.lhs == same.rhs);
        for (double eps : {-0.4, 0.1, 0.5})
        {
            const ScaledMomentCheck c = scaled_moment_check(k, 2, eps);
            CHECK(std::abs(c.lhs - c.rhs) < 1e-9);
        }
    }
    CHECK_THROWS_AS(scaled_moment_check(unit, 4, 0.1), Error);
    CHECK_THROWS_AS(scaled_moment_check(unit, 2, 1.0), Error);
}
