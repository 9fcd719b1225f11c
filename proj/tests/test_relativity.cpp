#include "oracles.hpp"

#include "dilab/relativity.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace dilab;
using Catch::Approx;

TEST_CASE("solve_boost examples")
{
    const Boost id = solve_boost(0, 1);
    CHECK(id.a11 == 1);
    CHECK(id.a12 == 0);
    CHECK(id.a21 == 0);
    CHECK(id.a22 == 1);

    const Boost b = solve_boost(0.6, 1);
    CHECK(b.a11 == Approx(1.25).epsilon(1e-14));
    CHECK(b.a12 == Approx(0.75).epsilon(1e-14));
    CHECK(b.a21 == Approx(0.75).epsilon(1e-14));
    CHECK(b.a22 == Approx(1.25).epsilon(1e-14));
    CHECK(b.a11 == Approx(oracle::lorentz_gamma(0.6, 1)).epsilon(1e-14));

    for (double v : {1.0, -1.0, 1.5})
    {
        try
        {
            (void)solve_boost(v, 1);
            FAIL("expected SuperluminalVelocity");
        }
        catch (const Error& e)
        {
            CHECK(e.code() == ErrorCode::SuperluminalVelocity);
        }
    }
    CHECK_THROWS_AS(solve_boost(0.1, 0), Error);
}

TEST_CASE("boost invariants in user units")
{
    for (double c : {1.0, 2.0, 3e8})
    {
        for (double f : {-0.9, -0.5, 0.0, 0.3, 0.9})
        {
            const double v = f * c;
            const Boost b = solve_boost(v, c);
            const double g = oracle::lorentz_gamma(v, c);
            CHECK(b.a11 == Approx(g).epsilon(1e-13));
            CHECK(b.a21 == Approx(g * v).epsilon(1e-13).margin(1e-300));
            CHECK(b.a12 == Approx(g * v / (c * c)).epsilon(1e-13).margin(1e-300));
            CHECK(std::abs(b.determinant() - 1) < 1e-12);
            CHECK(std::abs(b.a11 * b.a21 - c * c * b.a22 * b.a12) <= 1e-12 * std::max(1.0, std::abs(b.a11 * b.a21)));
            const BoostConditions cond = boost_conditions(b);
            CHECK(std::abs(cond.cross) < 1e-12);
            CHECK(std::abs(cond.time_form - 1) < 1e-12);
            CHECK(std::abs(cond.space_form - 1) < 1e-12);
            CHECK(std::abs(std::cosh(b.rapidity) * std::cosh(b.rapidity)
                           - std::sinh(b.rapidity) * std::sinh(b.rapidity) - 1)
                  < 1e-12);
        }
    }
}

TEST_CASE("small-velocity limit approaches the Galilean coefficients")
{
    const double v = 1e-5;
    const Boost b = solve_boost(v, 1);
    CHECK(std::abs(b.a11 - 1) < 1e-9);
    CHECK(std::abs(b.a22 - 1) < 1e-9);
    CHECK(b.a21 == Approx(v).epsilon(1e-9));
    const Boost g = Boost::galilean(v, 1);
    CHECK(g.a11 == 1);
    CHECK(g.a12 == 0);
    CHECK(g.a21 == v);
    CHECK(g.a22 == 1);
}

TEST_CASE("velocity composition")
{
    for (double c : {1.0, 2.5})
    {
        for (auto [f1, f2] : {std::pair{0.3, 0.4}, {0.9, 0.9}, {-0.6, 0.2}, {0.5, -0.5}})
        {
            const double v1 = f1 * c;
            const double v2 = f2 * c;
            const Boost ab = compose(solve_boost(v1, c), solve_boost(v2, c));
            const Boost direct = solve_boost((v1 + v2) / (1 + v1 * v2 / (c * c)), c);
            CHECK(std::abs(ab.a11 - direct.a11) < 1e-10);
            CHECK(std::abs(ab.a12 - direct.a12) < 1e-10);
            CHECK(std::abs(ab.a21 - direct.a21) < 1e-10);
            CHECK(std::abs(ab.a22 - direct.a22) < 1e-10);
        }
    }
}

TEST_CASE("transform_eigenpair examples")
{
    const OperatorEigenpair e{std::sqrt(2.0), {1, 0, 0}};
    const OperatorEigenpair same = transform_eigenpair(solve_boost(0, 1), e);
    CHECK(same.E == e.E);
    CHECK(same.p.x == e.p.x);

    const OperatorEigenpair t = transform_eigenpair(solve_boost(0.6, 1), e);
    CHECK(t.E == Approx(1.25 * (std::sqrt(2.0) + 0.6)).epsilon(1e-14));
    CHECK(t.p.x == Approx(1.25 * (1 + 0.6 * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(t.E == Approx(2.51777).epsilon(1e-5));
    CHECK(t.p.x == Approx(2.31066).epsilon(1e-5));
    CHECK(std::abs(t.E * t.E - norm2(t.p) - 1) < 1e-10);

    for (double v : {-0.9, -0.3, 0.5, 0.99})
    {
        const OperatorEigenpair n = transform_eigenpair(solve_boost(v, 1), {1, {1, 0, 0}});
        CHECK(std::abs(n.E * n.E - norm2(n.p)) < 1e-12);
    }
}

TEST_CASE("invariant mass over random eigenpairs and a velocity grid")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (double c : {1.0, 1.7})
    {
        const ParticleCoefficients coeffs = ParticleCoefficients::from_physical(c, 0.8);
        for (int i = 0; i < 50; ++i)
        {
            const Vec3 p{u(rng), u(rng), u(rng)};
            const OperatorEigenpair e{dispersion_energy(coeffs, p), p};
            const double inv = e.E * e.E - c * c * norm2(e.p);
            for (int j = -9; j <= 9; j += 2)
            {
                const OperatorEigenpair t = transform_eigenpair(solve_boost(0.1 * j * c, c), e);
                const double inv_t = t.E * t.E - c * c * norm2(t.p);
                CHECK(std::abs(inv_t - inv) <= 1e-10 * std::max(1.0, e.E * e.E));
                CHECK(t.p.y == e.p.y);
                CHECK(t.p.z == e.p.z);
            }
        }
    }
}

TEST_CASE("form invariance of the Klein-Gordon operator")
{
    const ParticleCoefficients coeffs = ParticleCoefficients::from_physical(1, 1);
    const TestField psi = TestField::on_shell(coeffs, {0.4, -0.3, 0.2});
    const TestField zero = TestField::single(0.0, {1, 0, 0}, 1);

    for (double v : {-0.9, -0.6, 0.3, 0.6, 0.9})
        CHECK(std::abs(form_invariance_residual(solve_boost(v, 1), coeffs, psi)) < 1e-10);
    CHECK(std::abs(form_invariance_residual(solve_boost(0.6, 1), coeffs, zero)) == 0);

    // Off-shell and multi-wave fields are covered too: the operator itself is invariant.
    const TestField mixed({PlaneWave{{1, 0.2}, {0.7, 0.1, 0}, 0.5}, PlaneWave{{-0.4, 1}, {0.1, 0.2, 0.9}, 2.0}});
    CHECK(std::abs(form_invariance_residual(solve_boost(0.6, 1), coeffs, mixed)) < 1e-10);

    const cplx galilean = form_invariance_residual(Boost::galilean(0.6, 1), coeffs, psi);
    CHECK(std::abs(galilean) > 0.1);

    // c = 2 coefficients need the c = 2 boost.
    const ParticleCoefficients c2 = ParticleCoefficients::from_physical(2, 0.5);
    const TestField psi2 = TestField::on_shell(c2, {0.3, 0, 0.1});
    CHECK(std::abs(form_invariance_residual(solve_boost(1.2, 2), c2, psi2)) < 1e-10);
    CHECK(std::abs(form_invariance_residual(solve_boost(0.6, 1), c2, psi2)) > 1e-3);
}

TEST_CASE("universality of c across kernel pairs")
{
    const KernelPair a = make_kernel_pair(1, 0, 0.2);
    const KernelPair b = make_kernel_pair(1, 1, 0.2);
    const KernelPair d = make_kernel_pair(2, 1, 0.2);

    const UniversalityReport ab = universality_check(a, b);
    CHECK(ab.compatible);
    CHECK(ab.c2_a == Approx(1).epsilon(1e-10));
    CHECK(ab.c2_b == Approx(1).epsilon(1e-10));
    CHECK(ab.cross_residual < 1e-10);

    const UniversalityReport self = universality_check(b, b);
    CHECK(self.compatible);

    const UniversalityReport bd = universality_check(b, d);
    CHECK_FALSE(bd.compatible);
    CHECK(bd.c2_a == Approx(1).epsilon(1e-10));
    CHECK(bd.c2_b == Approx(4).epsilon(1e-10));
    CHECK(bd.cross_residual > 1e-3);
}
