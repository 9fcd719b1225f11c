#include "dilab/relativity.hpp"

#include "dilab/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dilab
{

Boost Boost::galilean(double v, double c)
{
    if (!(c > 0))
        throw Error(ErrorCode::InvalidArgument, "signal speed must be positive");
    return {1, 0, v, 1, v, c, 0};
}

Boost solve_boost(double v, double c)
{
    if (!(c > 0))
        throw Error(ErrorCode::InvalidArgument, "signal speed must be positive");
    if (!(std::abs(v) < c))
        throw Error(ErrorCode::SuperluminalVelocity,
                    "|v| = " + std::to_string(std::abs(v)) + " is not below c = " + std::to_string(c));
    const double r = std::atanh(v / c);
    const double ch = std::cosh(r);
    const double sh = std::sinh(r);
    return {ch, sh / c, sh * c, ch, v, c, r};
}

Boost compose(const Boost& a, const Boost& b)
{
    Boost out;
    out.a11 = a.a11 * b.a11 + a.a12 * b.a21;
    out.a12 = a.a11 * b.a12 + a.a12 * b.a22;
    out.a21 = a.a21 * b.a11 + a.a22 * b.a21;
    out.a22 = a.a21 * b.a12 + a.a22 * b.a22;
    out.c = a.c;
    out.v = out.a21 / out.a22;
    out.rapidity = std::abs(out.v) < out.c ? std::atanh(out.v / out.c) : 0.0;
    return out;
}

BoostConditions boost_conditions(const Boost& b)
{
    const double n11 = b.a11;
    const double n12 = b.c * b.a12;
    const double n21 = b.a21 / b.c;
    const double n22 = b.a22;
    return {n11 * n21 - n22 * n12, n11 * n11 - n12 * n12, n22 * n22 - n21 * n21};
}

namespace
{

// Inverse map (t', x') -> (t, x) turned into the primed wave numbers.
void primed_wave(const Boost& b, double kx, double omega, double& kx_p, double& omega_p)
{
    const double d = b.determinant();
    kx_p = (kx * b.a11 + omega * b.a12) / d;
    omega_p = (kx * b.a21 + omega * b.a22) / d;
}

} // namespace

OperatorEigenpair transform_eigenpair(const Boost& b, const OperatorEigenpair& e)
{
    OperatorEigenpair out = e;
    primed_wave(b, e.p.x, e.E, out.p.x, out.E);
    return out;
}

cplx form_invariance_residual(const Boost& b, const ParticleCoefficients& coeffs, const TestField& psi,
                              const Vec3& r, double t)
{
    cplx residual{};
    for (const auto& w : psi.terms())
    {
        double kx_p = 0;
        double omega_p = 0;
        primed_wave(b, w.k.x, w.omega, kx_p, omega_p);
        const cplx value = w.at(r, t);
        const double k2 = norm2(w.k);
        const double k2_p = kx_p * kx_p + w.k.y * w.k.y + w.k.z * w.k.z;
        const cplx original = (-w.omega * w.omega + coeffs.c2 * k2 + coeffs.m2c4) * value;
        const cplx primed = (-omega_p * omega_p + coeffs.c2 * k2_p + coeffs.m2c4) * value;
        residual += primed - original;
    }
    return residual;
}

UniversalityReport universality_check(const KernelPair& a, const KernelPair& b, double rel_tol,
                                      const QuadratureSpec& q)
{
    UniversalityReport rep;
    const ParticleCoefficients ca = extract_coefficients(a.temporal, a.spatial, FactorMode::corrected, q);
    const ParticleCoefficients cb = extract_coefficients(b.temporal, b.spatial, FactorMode::corrected, q);
    rep.c2_a = ca.c2;
    rep.c2_b = cb.c2;
    rep.compatible = std::abs(ca.c2 - cb.c2) <= rel_tol * std::max(ca.c2, cb.c2);

    const double speed_a = ca.c();
    const Boost boost = solve_boost(0.6 * std::min(speed_a, cb.c()), speed_a);
    ParticleCoefficients probe = cb;
    probe.m2c4 = std::max(probe.m2c4, 0.0);
    const TestField wave = TestField::on_shell(probe, {0.7, 0, 0});
    rep.cross_residual = std::abs(form_invariance_residual(boost, probe, wave));
    return rep;
}

} // namespace dilab
