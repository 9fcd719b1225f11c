#include "oracles.hpp"

#include "dilab/consistency.hpp"

#include <catch_amalgamated.hpp>

using namespace dilab;
using Catch::Approx;

namespace
{

const Vec3 kProbe{0.3, -0.2, 0.1};
constexpr double kTime = 0.4;

} // namespace

TEST_CASE("plane-wave nonlocal integrals against closed forms")
{
    const KernelPair pair = make_kernel_pair(1.0, 1.0, 0.2);
    const TestField psi({PlaneWave{{1, 0.5}, {0.4, 0.1, -0.2}, 1.1}, PlaneWave{{-0.3, 0.2}, {0, 0.7, 0.3}, 0.6}});

    cplx pt_oracle{};
    cplx pr_oracle{};
    for (const auto& w : psi.terms())
    {
        pt_oracle += w.at(kProbe, kTime) * std::exp(-0.5 * w.omega * w.omega * 0.04);
        const double s = pair.spatial.width();
        pr_oracle += w.at(kProbe, kTime) * 0.98 * std::exp(-0.5 * norm2(w.k) * s * s);
    }
    CHECK(std::abs(p_t_quadrature(psi, pair.temporal, kProbe, kTime) - pt_oracle) < 1e-12);
    CHECK(std::abs(p_t_plane_wave(psi, pair.temporal, kProbe, kTime) - pt_oracle) < 1e-14);
    CHECK(std::abs(p_r_quadrature(psi, pair.spatial, kProbe, kTime) - pr_oracle) < 1e-12);
    CHECK(std::abs(p_r_plane_wave(psi, pair.spatial, kProbe, kTime) - pr_oracle) < 1e-14);
    CHECK(std::abs(p_r_brute_force(psi, pair.spatial, kProbe, kTime) - pr_oracle) < 1e-11);
}

TEST_CASE("bump kernels: quadrature against plane-wave transforms")
{
    const KernelPair pair = make_kernel_pair(1.5, 0.5, 0.3, KernelFamily::bump);
    const TestField psi = TestField::single({0.2, 1}, {0.9, -0.4, 0.2}, 1.7);
    CHECK(std::abs(p_t_quadrature(psi, pair.temporal, kProbe, kTime)
                   - p_t_plane_wave(psi, pair.temporal, kProbe, kTime))
          < 1e-12);
    CHECK(std::abs(p_r_quadrature(psi, pair.spatial, kProbe, kTime)
                   - p_r_plane_wave(psi, pair.spatial, kProbe, kTime))
          < 1e-12);
}

TEST_CASE("quadratic field adjudicates the Laplacian factor")
{
    for (auto family : {KernelFamily::gaussian, KernelFamily::bump})
    {
        const KernelPair pair = make_kernel_pair(1.0, 1.0, 0.2, family);
        for (const char* name : {"x2", "y2", "z2"})
        {
            const PolynomialField f = PolynomialField::monomial(name);
            const ConsistencyReport rep = expansion_values(f, pair.temporal, pair.spatial, kProbe, kTime);
            const double corrected = rep.p_r_expansion_corrected.real();
            CHECK(std::abs(rep.p_r.real() - corrected) <= 1e-8 * std::abs(corrected));

            const double z = radial_moment(pair.spatial, 2);
            const double base = z * f.value(kProbe, kTime).real();
            const double ratio = (rep.p_r_expansion_literal.real() - base) / (rep.p_r.real() - base);
            CHECK(ratio == Approx(3.0).margin(1e-6));
        }
    }
}

TEST_CASE("quadratic time dependence is captured exactly by the temporal expansion")
{
    const KernelPair pair = make_kernel_pair(1.0, 0.0, 0.3);
    const PolynomialField t2 = PolynomialField::monomial("t2");
    const ConsistencyReport rep = expansion_values(t2, pair.temporal, pair.spatial, kProbe, kTime);
    CHECK(std::abs(rep.p_t - rep.p_t_expansion) < 1e-13);
}

TEST_CASE("scaled consistency residual tends to the Klein-Gordon residual")
{
    // Off-shell wave: the expansion limit of (p_t - p_r) / (M2 / 2) is the KG residual.
    const ParticleCoefficients coeffs = ParticleCoefficients::from_physical(1, 1);
    const TestField psi = TestField::single(1.0, {0.5, 0, 0}, 1.3);
    const cplx kg = kg_residual(psi, coeffs, kProbe, kTime);
    double previous = 1e300;
    for (double sigma : {0.2, 0.1, 0.05})
    {
        const KernelPair pair = make_kernel_pair(1, 1, sigma);
        const ConsistencyReport rep = expansion_values(psi, pair.temporal, pair.spatial, kProbe, kTime);
        const double gap = std::abs(rep.kg_residual_scaled - kg);
        CHECK(gap < previous / 3.5);
        previous = gap;
    }
    CHECK(previous < 0.05 * 0.05);
}

TEST_CASE("kernel dispersion")
{
    const KernelPair pair = make_kernel_pair(1.0, 1.0, 0.2);
    const double omega = kernel_dispersion(pair.temporal, pair.spatial, 0.3);
    // Gaussian pair: omega^2 sigma^2 / 2 = -log Z + k^2 s^2 / 2.
    const double s = pair.spatial.width();
    const double exact = std::sqrt((-2 * std::log(0.98) + 0.09 * s * s) / 0.04);
    CHECK(omega == Approx(exact).epsilon(1e-13));
    CHECK(kernel_dispersion(pair.temporal, pair.spatial, -0.3) == omega);

    const KernelPair massless = make_kernel_pair(1.0, 0.0, 0.2);
    CHECK(kernel_dispersion(massless.temporal, massless.spatial, 0.0) == 0.0);

    // Spatial transform above the temporal peak has no real frequency.
    const Kernel1D phi = Kernel1D::gaussian(0.2);
    try
    {
        (void)kernel_dispersion(phi, RadialKernel3D::gaussian(0.2, 1.5), 0.1);
        FAIL("expected NoRealRoot");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::NoRealRoot);
    }
}

TEST_CASE("convergence study")
{
    const std::vector<double> sigmas{0.4, 0.2, 0.1, 0.05};
    const ConvergenceStudy massive = convergence_study(1, 1, sigmas, 0.3);
    CHECK_FALSE(massive.exact);
    CHECK(std::abs(massive.fit.slope - 2.0) < 0.2);
    CHECK(massive.points.size() == 4);

    const ConvergenceStudy massless = convergence_study(1, 0, sigmas, 0.3);
    CHECK(massless.exact);
    for (const auto& p : massless.points)
        CHECK(p.error <= kMachineFloor);

    const ConvergenceStudy bump = convergence_study(1, 1, sigmas, 0.3, KernelFamily::bump);
    CHECK(std::abs(bump.fit.slope - 2.0) < 0.2);

    const std::vector<double> unsorted{0.1, 0.2, 0.05};
    CHECK_THROWS_AS(convergence_study(1, 1, unsorted, 0.3), Error);
    const std::vector<double> short_list{0.2, 0.1};
    CHECK_THROWS_AS(convergence_study(1, 1, short_list, 0.3), Error);
}

TEST_CASE("fit_order")
{
    std::vector<ScaleError> quartic;
    for (double h : {0.4, 0.2, 0.1, 0.05})
        quartic.push_back({h, 3 * std::pow(h, 4)});
    const OrderFit fit = fit_order(quartic);
    CHECK(fit.slope == Approx(4.0).epsilon(1e-12));
    CHECK(fit.half_width < 1e-10);

    std::vector<ScaleError> zeros{{0.4, 0}, {0.2, 0}, {0.1, 0}};
    try
    {
        (void)fit_order(zeros);
        FAIL("expected DegenerateFit");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::DegenerateFit);
    }
    std::vector<ScaleError> mixed{{0.4, 1e-3}, {0.2, 0}, {0.1, 1e-5}};
    CHECK_THROWS_AS(fit_order(mixed), Error);
    std::vector<ScaleError> two{{0.4, 1e-3}, {0.2, 1e-4}};
    CHECK_THROWS_AS(fit_order(two), Error);

    // Noisy quadratic: the half-width grows with the scatter.
    std::vector<ScaleError> noisy{{0.4, 0.16 * 1.1}, {0.2, 0.04 * 0.9}, {0.1, 0.01 * 1.05}, {0.05, 0.0025 * 0.95}};
    const OrderFit nf = fit_order(noisy);
    CHECK(std::abs(nf.slope - 2.0) < nf.half_width + 0.1);
    CHECK(nf.half_width > 0.01);
}
