#include "dilab/reduction.hpp"

#include "dilab/error.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace dilab;
using Catch::Approx;

namespace
{

Real4 random_k(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-2, 2);
    return {u(rng), u(rng), u(rng), u(rng)};
}

cplx random_c(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1, 1);
    return {u(rng), u(rng)};
}

FourPotential random_potential(std::mt19937_64& rng, int terms)
{
    FourPotential A;
    for (int t = 0; t < terms; ++t)
    {
        PotentialTerm term;
        term.k = random_k(rng);
        for (auto& a : term.a)
            a = random_c(rng);
        A.terms.push_back(term);
    }
    return A;
}

} // namespace

TEST_CASE("transverse vacuum wave satisfies every Maxwell residual")
{
    for (double c : {1.0, 2.0})
    {
        const double kz = 0.7;
        const FourPotential A = transverse_wave({0.3, -0.8}, kz, c * kz, c);
        const MaxwellResiduals r = maxwell_residuals(A, {}, c);
        CHECK(max_abs(r.kg) < 1e-12);
        CHECK(max_abs(r.vec_a) < 1e-12);
        CHECK(max_abs(r.inhomogeneous) < 1e-12);
        CHECK(max_abs(r.bianchi) < 1e-12);
    }
}

TEST_CASE("off-shell wave leaves the Klein-Gordon residual")
{
    const double c = 1.5;
    const double kz = 0.7;
    const double omega = 1.4;
    const cplx a{0.3, -0.8};
    const FourPotential A = transverse_wave(a, kz, omega, c);
    const Real4 x{0.2, 0.1, -0.3, 0.4};
    const MaxwellResiduals r = maxwell_residuals(A, {}, c, x);
    const cplx e = std::exp(cplx(0, -(omega / c * x[0] - kz * x[3])));
    const cplx expected = (omega * omega - c * c * kz * kz) * a * e;
    CHECK(std::abs(r.kg[1] - expected) < 1e-12);
    CHECK(std::abs(r.kg[0]) == 0);
    CHECK(max_abs(r.bianchi) < 1e-12);
}

TEST_CASE("field tensor is antisymmetric")
{
    std::mt19937_64 rng(11);
    const FourPotential A = random_potential(rng, 3);
    const FieldTensor f = field_tensor(A, {0.1, 0.2, 0.3, 0.4});
    for (int i = 0; i < 4; ++i)
    {
        CHECK(f.F[i][i] == cplx{});
        for (int k = 0; k < 4; ++k)
            CHECK(f.F[i][k] == -f.F[k][i]);
    }
}

TEST_CASE("Bianchi identity on random potentials")
{
    std::mt19937_64 rng(3);
    for (int n = 0; n < 100; ++n)
    {
        const FourPotential A = random_potential(rng, 1 + n % 3);
        const MaxwellResiduals r = maxwell_residuals(A, {}, 1.0);
        CHECK(max_abs(r.bianchi) < 1e-12);
    }
}

TEST_CASE("sourced Maxwell equations with a null potential")
{
    std::mt19937_64 rng(5);
    for (int n = 0; n < 20; ++n)
    {
        FourPotential A = random_potential(rng, 2);
        for (auto& term : A.terms)
        {
            // Put each wave on the light cone so the potential obeys the wave equation.
            const double kmag = std::sqrt(term.k[1] * term.k[1] + term.k[2] * term.k[2] + term.k[3] * term.k[3]);
            term.k[0] = kmag;
        }
        const ChargeDensity q = divergence_source(A);
        const MaxwellResiduals r = maxwell_residuals(A, q, 1.0);
        CHECK(max_abs(r.kg) < 1e-12);
        CHECK(max_abs(r.vec_a) < 1e-12);
        CHECK(max_abs(r.inhomogeneous) < 1e-12);

        // Without the source the divergence shows up.
        const MaxwellResiduals bare = maxwell_residuals(A, {}, 1.0);
        CHECK(max_abs(bare.vec_a) > 1e-6);
    }
}

TEST_CASE("Dirac bispinor examples")
{
    const double m = 1.3;
    const Bispinor rest = dirac_build({1, 0}, {m, 0, 0, 0}, m);
    const DiracResiduals r = dirac_residuals(rest);
    CHECK(max_abs(r.first) < 1e-12);
    CHECK(max_abs(r.second) < 1e-12);
    CHECK(max_abs(r.kg) < 1e-12);
    CHECK(std::abs(rest.mu[0] - cplx(1)) < 1e-15);
    CHECK(rest.mu[1] == cplx{});

    const Bispinor zero = dirac_build({0, 0}, {2, 0.3, 0.4, 0.5}, m);
    const DiracResiduals z = dirac_residuals(zero);
    CHECK(max_abs(z.first) == 0);
    CHECK(max_abs(z.second) == 0);
    CHECK(max_abs(z.kg) == 0);

    try
    {
        (void)dirac_build({1, 0}, {1, 0, 0, 0}, 0);
        FAIL("expected MasslessSpinor");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::MasslessSpinor);
    }
}

TEST_CASE("on-shell and perturbed random bispinors")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int n = 0; n < 50; ++n)
    {
        const double m = 0.5 + std::abs(u(rng));
        Real4 k{0, u(rng), u(rng), u(rng)};
        const double omega = std::sqrt(k[1] * k[1] + k[2] * k[2] + k[3] * k[3] + m * m);
        k[0] = omega;
        const Spinor eta{random_c(rng), random_c(rng)};

        const DiracResiduals on = dirac_residuals(dirac_build(eta, k, m));
        CHECK(max_abs(on.first) < 1e-12);
        CHECK(max_abs(on.second) < 1e-12);
        CHECK(max_abs(on.kg) < 1e-12);

        Real4 off = k;
        off[0] += 0.1;
        const DiracResiduals r = dirac_residuals(dirac_build(eta, off, m));
        const double eta_norm = std::max(std::abs(eta[0]), std::abs(eta[1]));
        // (omega + 0.1)^2 - omega^2 = 0.2 omega + 0.01
        CHECK(max_abs(r.kg) == Approx(2 * omega * 0.1 * eta_norm).epsilon(0.01 / (0.2 * omega) + 1e-12));
        CHECK(max_abs(r.first) < 1e-12);
        CHECK(max_abs(r.second) > 0);
    }
}

TEST_CASE("Pauli contraction")
{
    std::mt19937_64 rng(13);
    for (int n = 0; n < 50; ++n)
    {
        const Real4 k = random_k(rng);
        const Spinor s{random_c(rng), random_c(rng)};
        const Spinor twice = sigma_dot(k, sigma_dot(k, s));
        const double k2 = k[1] * k[1] + k[2] * k[2] + k[3] * k[3];
        CHECK(std::abs(twice[0] - k2 * s[0]) < 1e-12);
        CHECK(std::abs(twice[1] - k2 * s[1]) < 1e-12);

        const Spinor d = apply_d1(k, apply_d2(k, s));
        const double box = k[0] * k[0] - k2;
        CHECK(std::abs(d[0] - box * s[0]) < 1e-12);
        CHECK(std::abs(d[1] - box * s[1]) < 1e-12);
    }
}
