#include "dilab/coeff.hpp"

#include <cmath>

namespace dilab
{

namespace
{

double second_temporal_moment(const Kernel1D& phi, const QuadratureSpec& q)
{
    const double m2 = temporal_moment(phi, 2, q);
    if (!(m2 > q.abs_tol))
    {
        throw Error(ErrorCode::DegenerateTemporalKernel,
                    "second temporal moment " + std::to_string(m2) + " does not exceed abs_tol");
    }
    return m2;
}

double literal_factor(FactorMode mode)
{
    return mode == FactorMode::paper_literal ? 3.0 : 1.0;
}

void check_scale(double alpha, const char* name)
{
    if (!(std::abs(alpha - 1) < 1))
        throw Error(ErrorCode::ScaleOutOfRange,
                    std::string(name) + " = " + std::to_string(alpha) + " violates |alpha - 1| < 1");
}

} // namespace

std::string_view to_string(FactorMode mode)
{
    return mode == FactorMode::paper_literal ? "paper-literal" : "corrected";
}

double extract_c2(const Kernel1D& phi, const RadialKernel3D& theta, FactorMode mode, const QuadratureSpec& q)
{
    const double den = second_temporal_moment(phi, q);
    const double num = radial_moment(theta, 4, q);
    if (mode == FactorMode::paper_literal)
        return num / den;
    return (num / 3) / den;
}

MassEnergyEstimate extract_m2c4(const Kernel1D& phi, const RadialKernel3D& theta, const QuadratureSpec& q)
{
    const double den = second_temporal_moment(phi, q);
    const double value = 2 * (temporal_moment(phi, 0, q) - radial_moment(theta, 2, q)) / den;
    return {value, value < 0};
}

ParticleCoefficients extract_coefficients(const Kernel1D& phi, const RadialKernel3D& theta, FactorMode mode,
                                          const QuadratureSpec& q)
{
    const auto m2c4 = extract_m2c4(phi, theta, q);
    return {extract_c2(phi, theta, mode, q), m2c4.value, mode, m2c4.tachyonic_warning};
}

double scaled_temporal_moment(const Kernel1D& phi, int n, double scale, const QuadratureSpec& q)
{
    if (!(scale > 0))
        throw Error(ErrorCode::ScaleOutOfRange, "time scale must be positive");
    const double r = phi.support_radius() / scale;
    auto integrand = [&](double t) { return std::pow(t, n) * phi(scale * t); };
    const double jacobian = std::pow(scale, n + 1);
    if (n % 2 == 0)
        return jacobian * 2 * integrate(integrand, 0.0, r, q);
    return jacobian * integrate(integrand, -r, r, q);
}

AxisCoefficients axis_coefficients(const Kernel1D& phi, const RadialKernel3D& theta, double alpha11,
                                   double alpha22, FactorMode mode, const QuadratureSpec& q)
{
    check_scale(alpha11, "alpha11");
    check_scale(alpha22, "alpha22");

    const double tau0 = scaled_temporal_moment(phi, 0, alpha11, q);
    const double tau2 = scaled_temporal_moment(phi, 2, alpha11, q);
    if (!(tau2 > q.abs_tol))
        throw Error(ErrorCode::DegenerateTemporalKernel, "scaled second temporal moment vanishes");

    // Cylindrical coordinates about the stretched axis: u along x, w transverse.
    // theta'(dx', dy', dz') = theta(|(alpha22 u, w)|) after dx' = alpha22 u.
    const double a = alpha22;
    const double r = theta.support_radius();
    auto spatial = [&](auto&& weight) {
        auto slab = [&](double u) {
            return integrate(
                [&](double w) {
                    const double rho = std::sqrt(a * a * u * u + w * w);
                    return weight(u, w) * theta(rho);
                },
                0.0, r, q);
        };
        return 2 * integrate(slab, 0.0, r / a, q);
    };

    const double along = std::pow(a, 3) * spatial([](double u, double w) { return 2 * M_PI * w * u * u; });
    const double across = a * spatial([](double, double w) { return M_PI * w * w * w; });
    const double volume = a * spatial([](double, double w) { return 2 * M_PI * w; });

    const double f = literal_factor(mode);
    // The transverse integral is symmetric in y and z, so c_y and c_z coincide.
    return {f * along / tau2, f * across / tau2, f * across / tau2, 2 * (tau0 - volume) / tau2};
}

double appendix_series(int n, double eps, int terms)
{
    if (n < 0 || terms < 0)
        throw Error(ErrorCode::InvalidArgument, "series order and term count must be nonnegative");
    if (!(std::abs(eps) < 1))
        throw Error(ErrorCode::InvalidArgument, "series requires |eps| < 1");
    // binomial(k + n, n) (-eps)^k, built incrementally
    double term = 1;
    double sum = 1;
    for (int k = 1; k <= terms; ++k)
    {
        term *= -eps * static_cast<double>(k + n) / k;
        sum += term;
    }
    return std::pow(1 + eps, n + 1) * sum;
}

ScaledMomentCheck scaled_moment_check(const Kernel1D& phi, int n, double eps, const QuadratureSpec& q)
{
    if (n != 0 && n != 2)
        throw Error(ErrorCode::InvalidArgument, "scaled moment check covers n = 0 and n = 2");
    if (!(std::abs(eps) < 1))
        throw Error(ErrorCode::ScaleOutOfRange, "scaled moment check requires |eps| < 1");
    return {scaled_temporal_moment(phi, n, 1 + eps, q), scaled_temporal_moment(phi, n, 1.0, q)};
}

} // namespace dilab
