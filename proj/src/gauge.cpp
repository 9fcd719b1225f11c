#include "dilab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dilab
{

void InternalKernelSet::validate() const
{
    if (!theta_s || !theta_a || !phi_s || !phi_a)
        throw Error(ErrorCode::InvalidArgument, "internal kernel set has an empty kernel");
    if (!(spatial_radius > 0) || !(temporal_radius > 0) || !(nu_radius > 0))
        throw Error(ErrorCode::InvalidArgument, "internal kernel radii must be positive");
    for (std::size_t i = 0; i < h.size(); ++i)
    {
        if (h[i].size() != h.size())
            throw Error(ErrorCode::InvalidArgument, "hopping matrix must be square");
        for (std::size_t j = 0; j < i; ++j)
        {
            if (h[i][j] != h[j][i])
            {
                throw Error(ErrorCode::SymmetryViolation, "hopping matrix is not symmetric at (" + std::to_string(i)
                                                              + ", " + std::to_string(j) + ")");
            }
        }
    }
}

namespace
{

constexpr int kGrid = 7;

double grid_point(int i, double radius)
{
    return radius * (2.0 * i / (kGrid - 1) - 1) * 0.93;
}

} // namespace

SpatialSplit split_parity(SpatialStateKernel theta, double radius, double nu_radius, double tol)
{
    double worst = 0;
    double largest = 0;
    for (int i = 0; i < kGrid; ++i)
    {
        for (int j = 0; j < kGrid; ++j)
        {
            for (int k = 0; k < kGrid; ++k)
            {
                const Vec3 d{grid_point(i, radius), grid_point(j, radius) * 0.71, grid_point(k, radius) * 0.53};
                for (int l = 0; l < kGrid; ++l)
                {
                    const double nu = grid_point(l, nu_radius);
                    const double a = theta(d, nu);
                    const double b = theta(-d, -nu);
                    worst = std::max(worst, std::abs(a - b));
                    largest = std::max(largest, std::abs(a));
                }
            }
        }
    }
    if (worst > tol * std::max(largest, 1e-300))
    {
        throw Error(ErrorCode::SymmetryViolation,
                    "theta(dr, dnu) != theta(-dr, -dnu): max deviation " + std::to_string(worst));
    }
    auto sym = [theta](const Vec3& d, double nu) { return 0.5 * (theta(d, nu) + theta(-d, nu)); };
    auto anti = [theta, sym](const Vec3& d, double nu) { return theta(d, nu) - sym(d, nu); };
    return {sym, anti};
}

TemporalSplit split_parity_temporal(TemporalStateKernel phi, double radius, double nu_radius, double tol)
{
    double worst = 0;
    double largest = 0;
    for (int i = 0; i < kGrid; ++i)
    {
        for (int l = 0; l < kGrid; ++l)
        {
            const double t = grid_point(i, radius);
            const double nu = grid_point(l, nu_radius);
            const double a = phi(t, nu);
            worst = std::max(worst, std::abs(a - phi(-t, -nu)));
            largest = std::max(largest, std::abs(a));
        }
    }
    if (worst > tol * std::max(largest, 1e-300))
    {
        throw Error(ErrorCode::SymmetryViolation,
                    "phi(dt, dnu) != phi(-dt, -dnu): max deviation " + std::to_string(worst));
    }
    auto sym = [phi](double t, double nu) { return 0.5 * (phi(t, nu) + phi(-t, nu)); };
    auto anti = [phi, sym](double t, double nu) { return phi(t, nu) - sym(t, nu); };
    return {sym, anti};
}

QRCoefficients qr_coefficients(const InternalKernelSet& ks, FactorMode mode, const QuadratureSpec& q)
{
    ks.validate();
    const double rt = ks.temporal_radius;
    const double rs = ks.spatial_radius;
    const double rn = ks.nu_radius;

    // phi_s, phi_s dt^2, phi_s dnu^2, phi_a dt dnu
    auto temporal_slice = [&](double nu) {
        return integrate(
            [&](double t) {
                const double s = ks.phi_s(t, nu);
                Multi<4> out;
                out[0] = s;
                out[1] = s * t * t;
                out[2] = s * nu * nu;
                out[3] = ks.phi_a(t, nu) * t * nu;
                return out;
            },
            -rt, rt, q);
    };
    const Multi<4> tm = integrate(temporal_slice, -rn, rn, q);

    // theta_s, theta_s dr^2, theta_s dnu^2, theta_a dr dnu
    auto spatial_slice = [&](double nu) {
        auto shell = [&](double rho) {
            Multi<6> sphere = integrate_sphere([&](const Vec3& n) {
                const Vec3 d = rho * n;
                const double s = ks.theta_s(d, nu);
                const double a = ks.theta_a(d, nu) * nu;
                Multi<6> out;
                out[0] = s;
                out[1] = s * rho * rho;
                out[2] = s * nu * nu;
                out[3] = a * d.x;
                out[4] = a * d.y;
                out[5] = a * d.z;
                return out;
            });
            return rho * rho * sphere;
        };
        return integrate(shell, 0.0, rs, q);
    };
    const Multi<6> sm = integrate(spatial_slice, -rn, rn, q);

    QRCoefficients qr;
    qr.Q1 = 0.5 * tm[1];
    if (!(qr.Q1 >= q.abs_tol))
        throw Error(ErrorCode::DegenerateQ1, "Q1 = " + std::to_string(qr.Q1) + " is below abs_tol");
    qr.R0 = tm[0] - sm[0];
    qr.R1 = (mode == FactorMode::corrected ? 1.0 / 6.0 : 0.5) * sm[1];
    qr.Q2 = tm[3];
    qr.R2 = {sm[3], sm[4], sm[5]};
    qr.R3 = 0.5 * (sm[2] - tm[2]);
    return qr;
}

double constraint_residual(const QRCoefficients& qr, double c)
{
    return norm2(qr.R2) / (c * c) - qr.Q2 * qr.Q2 - 4 * qr.R3;
}

double normalized_constraint_residual(const QRCoefficients& qr, double c)
{
    return norm2(qr.R2) / (c * c) - qr.Q2 * qr.Q2 - 4 * qr.Q1 * qr.R3;
}

U1Reduction u1_reduce(const QRCoefficients& qr, double e, double c, double rel_tol)
{
    if (!(qr.Q1 > 0))
        throw Error(ErrorCode::DegenerateQ1, "Q1 must be positive");
    if (!(c > 0))
        throw Error(ErrorCode::InvalidArgument, "signal speed must be positive");
    const double residual = normalized_constraint_residual(qr, c);
    if (std::abs(residual) > rel_tol * qr.Q1 * qr.Q1)
    {
        throw Error(ErrorCode::ConstraintViolated,
                    "(|R2|/c)^2 - Q2^2 - 4 Q1 R3 = " + std::to_string(residual) + " for Q1 = " + std::to_string(qr.Q1));
    }
    U1Reduction out;
    out.potential.A = (-1 / (2 * qr.Q1 * c)) * qr.R2;
    out.potential.A0 = qr.Q2 / (2 * qr.Q1);
    out.potential.e = e;
    out.coeffs.c2 = qr.R1 / qr.Q1;
    out.coeffs.m2c4 = qr.R0 / qr.Q1;
    out.coeffs.tachyonic = out.coeffs.m2c4 < 0;
    return out;
}

cplx minimal_coupling_residual(const GaugePotential& gp, const ParticleCoefficients& coeffs,
                               const AnalyticField& psi, const Vec3& r, double t)
{
    const cplx i(0, 1);
    const double e = gp.e;
    const double c = coeffs.c();
    const cplx v = psi.value(r, t);
    return psi.dtt(r, t) + 2.0 * i * e * gp.A0 * psi.dt(r, t) - e * e * gp.A0 * gp.A0 * v
           - coeffs.c2 * psi.laplacian(r, t) + 2.0 * i * e * c * dot(gp.A, psi.grad(r, t))
           + e * e * norm2(gp.A) * v + coeffs.m2c4 * v;
}

TestField gauge_shifted_wave(const GaugePotential& gp, const ParticleCoefficients& coeffs, const Vec3& k,
                             cplx amplitude)
{
    const Vec3 kin = k - (gp.e / coeffs.c()) * gp.A;
    const double omega = gp.e * gp.A0 + std::sqrt(coeffs.c2 * norm2(kin) + coeffs.m2c4);
    return TestField::single(amplitude, k, omega);
}

cplx expansion32_residual(const InternalKernelSet& ks, double e, const TestField& psi, const Vec3& r, double t,
                          const QuadratureSpec& q)
{
    ks.validate();
    const double rt = ks.temporal_radius;
    const double rs = ks.spatial_radius;
    const double rn = ks.nu_radius;

    auto phi = [&](double dt, double nu) { return ks.phi_s(dt, nu) + ks.phi_a(dt, nu); };
    auto theta = [&](const Vec3& d, double nu) { return ks.theta_s(d, nu) + ks.theta_a(d, nu); };

    const double q1 = 0.5 * integrate(
                                [&](double nu) {
                                    return integrate([&](double dt) { return ks.phi_s(dt, nu) * dt * dt; }, -rt,
                                                     rt, q);
                                },
                                -rn, rn, q);
    if (!(q1 >= q.abs_tol))
        throw Error(ErrorCode::DegenerateQ1, "Q1 = " + std::to_string(q1) + " is below abs_tol");

    const cplx p_t = integrate(
        [&](double nu) {
            const cplx slice = integrate([&](double dt) { return phi(dt, nu) * psi.value(r, t + dt); }, -rt, rt, q);
            return std::exp(cplx(0, e * nu)) * slice;
        },
        -rn, rn, q);

    const cplx p_r = integrate(
        [&](double nu) {
            const cplx slice = integrate(
                [&](double rho) {
                    const cplx sphere = integrate_sphere([&](const Vec3& n) {
                        const Vec3 d = rho * n;
                        return theta(d, nu) * psi.value(r + d, t);
                    });
                    return rho * rho * sphere;
                },
                0.0, rs, q);
            return std::exp(cplx(0, e * nu)) * slice;
        },
        -rn, rn, q);

    return (p_t - p_r) / q1;
}

cplx expansion32_truncated(const QRCoefficients& qr, double e, const AnalyticField& psi, const Vec3& r, double t)
{
    const cplx i(0, 1);
    const cplx v = psi.value(r, t);
    const cplx lhs = qr.Q1 * psi.dtt(r, t) + i * e * qr.Q2 * psi.dt(r, t);
    const cplx rhs = -qr.R0 * v + qr.R1 * psi.laplacian(r, t) + i * e * dot(qr.R2, psi.grad(r, t))
                     - e * e * qr.R3 * v;
    return (lhs - rhs) / qr.Q1;
}

InternalKernelSet make_gauge_kernel_set(double c, double m, double sigma, double A0, const Vec3& A)
{
    if (!(c > 0) || !(sigma > 0) || m < 0)
        throw Error(ErrorCode::InvalidArgument, "gauge kernel set needs c > 0, sigma > 0, m >= 0");
    const double z = 1 - m * m * c * c * c * c * sigma * sigma / 2;
    if (!(z > 0))
        throw Error(ErrorCode::MassTooLarge, "m^2 c^4 sigma^2 / 2 must stay below one");
    const double spread = 1 + norm2(A) - A0 * A0;
    if (!(spread > 0))
        throw Error(ErrorCode::InvalidArgument, "1 + |A|^2 - A0^2 must be positive");

    const double s = sigma * c / std::sqrt(z);
    const double lambda = sigma * std::sqrt(spread / z);

    auto g1 = [](double x, double w) { return std::exp(-x * x / (2 * w * w)) / (w * std::sqrt(2 * M_PI)); };
    auto g3 = [](double rho2, double w) {
        return std::exp(-rho2 / (2 * w * w)) / (std::pow(2 * M_PI, 1.5) * w * w * w);
    };
    const Vec3 beta = (-c / (s * s)) * A;

    InternalKernelSet ks;
    ks.phi_s = [=](double dt, double nu) { return g1(dt, sigma) * g1(nu, sigma); };
    ks.phi_a = [=](double dt, double nu) { return (A0 / (sigma * sigma)) * dt * nu * g1(dt, sigma) * g1(nu, sigma); };
    ks.theta_s = [=](const Vec3& d, double nu) { return z * g3(norm2(d), s) * g1(nu, lambda); };
    ks.theta_a = [=](const Vec3& d, double nu) { return dot(beta, d) * nu * g3(norm2(d), s) * g1(nu, sigma); };

    // exp(-x^2 / 2) < 1e-16 beyond x = 8.6; the extra margin covers polynomial prefactors.
    constexpr double kReach = 9.5;
    ks.temporal_radius = kReach * sigma;
    ks.spatial_radius = kReach * s;
    ks.nu_radius = kReach * std::max(sigma, lambda);
    return ks;
}

} // namespace dilab
