#include "dilab/consistency.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dilab
{

namespace
{

ConsistencyReport fill_report(const AnalyticField& psi, cplx p_r, const Kernel1D& phi,
                              const RadialKernel3D& theta, const Vec3& r, double t, const QuadratureSpec& q)
{
    const double tau0 = temporal_moment(phi, 0, q);
    const double tau2 = temporal_moment(phi, 2, q);
    if (!(tau2 > q.abs_tol))
        throw Error(ErrorCode::DegenerateTemporalKernel, "second temporal moment vanishes");
    const double z = radial_moment(theta, 2, q);
    const double rho4 = radial_moment(theta, 4, q);

    const cplx v = psi.value(r, t);
    const cplx lap = psi.laplacian(r, t);

    ConsistencyReport rep;
    rep.p_t = p_t_quadrature(psi, phi, r, t, q);
    rep.p_r = p_r;
    rep.p_t_expansion = v * tau0 + 0.5 * psi.dtt(r, t) * tau2;
    rep.p_r_expansion_corrected = v * z + 0.5 * lap * (rho4 / 3);
    rep.p_r_expansion_literal = v * z + 0.5 * lap * rho4;
    rep.kg_residual_scaled = (rep.p_t - rep.p_r) / (0.5 * tau2);
    return rep;
}

} // namespace

cplx p_t_quadrature(const AnalyticField& psi, const Kernel1D& phi, const Vec3& r, double t, const QuadratureSpec& q)
{
    const double R = phi.support_radius();
    return integrate([&](double tau) { return psi.value(r, t + tau) * phi(tau); }, -R, R, q);
}

cplx p_r_quadrature(const TestField& psi, const RadialKernel3D& theta, const Vec3& r, double t,
                    const QuadratureSpec& q)
{
    std::vector<std::pair<cplx, double>> waves;
    for (const auto& w : psi.terms())
        waves.emplace_back(w.at(r, t), norm(w.k));
    auto integrand = [&](double rho) {
        cplx sum{};
        for (const auto& [term, k] : waves)
        {
            const double x = k * rho;
            sum += term * (x == 0 ? 1.0 : std::sin(x) / x);
        }
        return rho * rho * theta(rho) * sum;
    };
    return 4 * M_PI * integrate(integrand, 0.0, theta.support_radius(), q);
}

cplx p_r_brute_force(const AnalyticField& psi, const RadialKernel3D& theta, const Vec3& r, double t,
                     const QuadratureSpec& q)
{
    auto shell = [&](double rho) {
        const cplx sphere = integrate_sphere([&](const Vec3& n) { return psi.value(r + rho * n, t); });
        return rho * rho * theta(rho) * sphere;
    };
    return integrate(shell, 0.0, theta.support_radius(), q);
}

cplx p_t_plane_wave(const TestField& psi, const Kernel1D& phi, const Vec3& r, double t, const QuadratureSpec& q)
{
    cplx sum{};
    for (const auto& w : psi.terms())
        sum += w.at(r, t) * fourier_1d(phi, w.omega, q);
    return sum;
}

cplx p_r_plane_wave(const TestField& psi, const RadialKernel3D& theta, const Vec3& r, double t,
                    const QuadratureSpec& q)
{
    cplx sum{};
    for (const auto& w : psi.terms())
        sum += w.at(r, t) * fourier_radial(theta, norm(w.k), q);
    return sum;
}

ConsistencyReport expansion_values(const TestField& psi, const Kernel1D& phi, const RadialKernel3D& theta,
                                   const Vec3& r, double t, const QuadratureSpec& q)
{
    return fill_report(psi, p_r_quadrature(psi, theta, r, t, q), phi, theta, r, t, q);
}

ConsistencyReport expansion_values(const PolynomialField& psi, const Kernel1D& phi, const RadialKernel3D& theta,
                                   const Vec3& r, double t, const QuadratureSpec& q)
{
    return fill_report(psi, p_r_brute_force(psi, theta, r, t, q), phi, theta, r, t, q);
}

double kernel_dispersion(const Kernel1D& phi, const RadialKernel3D& theta, double kmag, const QuadratureSpec& q)
{
    kmag = std::abs(kmag);
    const double target = fourier_radial(theta, kmag, q);
    const double peak = fourier_1d(phi, 0.0, q);
    if (!(target > 0) || target > peak)
    {
        throw Error(ErrorCode::NoRealRoot, "theta_hat(" + std::to_string(kmag) + ") = " + std::to_string(target)
                                               + " lies outside (0, phi_hat(0)]");
    }
    const double log_target = log_fourier_radial(theta, kmag, q);

    auto f = [&](double omega) {
        if (phi.family() != KernelFamily::gaussian && fourier_1d(phi, omega, q) <= 0)
            return -std::numeric_limits<double>::infinity();
        return log_fourier_1d(phi, omega, q) - log_target;
    };

    if (f(0.0) <= 0)
        return 0.0;

    const double tau0 = temporal_moment(phi, 0, q);
    const double tau2 = temporal_moment(phi, 2, q);
    const double omega_max = 10 / std::sqrt(tau2 / tau0);
    constexpr int kScanSteps = 400;
    double lo = 0;
    double hi = -1;
    for (int i = 1; i <= kScanSteps; ++i)
    {
        const double omega = omega_max * i / kScanSteps;
        if (f(omega) < 0)
        {
            hi = omega;
            break;
        }
        lo = omega;
    }
    if (hi < 0)
        throw Error(ErrorCode::NoRealRoot, "no sign change of phi_hat - theta_hat on [0, 10 / sigma]");

    for (int iter = 0; iter < 200; ++iter)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (f(mid) >= 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ConvergenceStudy convergence_study(double c, double m, std::span<const double> sigmas, double kmag,
                                   KernelFamily family, const QuadratureSpec& q)
{
    if (sigmas.size() < 3)
        throw Error(ErrorCode::InvalidArgument, "convergence study needs at least three widths");
    for (std::size_t i = 1; i < sigmas.size(); ++i)
    {
        if (!(sigmas[i] < sigmas[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "convergence study widths must decrease");
    }

    const double reference = c * c * kmag * kmag + std::pow(m * c * c, 2);
    ConvergenceStudy study;
    for (double sigma : sigmas)
    {
        const KernelPair pair = make_kernel_pair(c, m, sigma, family);
        const double omega = kernel_dispersion(pair.temporal, pair.spatial, kmag, q);
        double err = std::abs(omega * omega - reference);
        if (reference > 0)
            err /= reference;
        study.points.push_back({sigma, err});
    }
    try
    {
        study.fit = fit_order(study.points);
    }
    catch (const Error& e)
    {
        if (e.code() != ErrorCode::DegenerateFit)
            throw;
        study.exact = true;
    }
    return study;
}

} // namespace dilab
