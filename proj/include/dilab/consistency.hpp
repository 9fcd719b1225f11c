#pragma once

#include "dilab/field.hpp"
#include "dilab/fit.hpp"
#include "dilab/kernel.hpp"

#include <span>
#include <vector>

namespace dilab
{

//! Both views of entering an intermediate state at one (r, t), by quadrature
//! and by second-order moment expansion.
struct ConsistencyReport
{
    cplx p_t{};
    cplx p_r{};
    cplx p_t_expansion{};
    cplx p_r_expansion_corrected{};
    cplx p_r_expansion_literal{};
    //! (p_t - p_r) / (int tau^2 phi / 2); its expansion is the Klein-Gordon residual.
    cplx kg_residual_scaled{};
};

//! int psi(r, t + tau) phi(tau) d tau.
cplx p_t_quadrature(const AnalyticField& psi, const Kernel1D& phi, const Vec3& r, double t,
                    const QuadratureSpec& q = {});

//! int psi(r + d, t) theta(|d|) d^3 d as one radial integral of the exact
//! spherical average of each plane wave, sin(k rho) / (k rho).
cplx p_r_quadrature(const TestField& psi, const RadialKernel3D& theta, const Vec3& r, double t,
                    const QuadratureSpec& q = {});

//! Same integral by direct 3D quadrature: adaptive in rho, Gauss-Legendre
//! by azimuthal rings on each sphere. Works for any analytic field.
cplx p_r_brute_force(const AnalyticField& psi, const RadialKernel3D& theta, const Vec3& r, double t,
                     const QuadratureSpec& q = {});

//! Closed-form plane-wave values sum_j term_j * phi_hat(omega_j) and
//! sum_j term_j * theta_hat(|k_j|).
cplx p_t_plane_wave(const TestField& psi, const Kernel1D& phi, const Vec3& r, double t,
                    const QuadratureSpec& q = {});
cplx p_r_plane_wave(const TestField& psi, const RadialKernel3D& theta, const Vec3& r, double t,
                    const QuadratureSpec& q = {});

ConsistencyReport expansion_values(const TestField& psi, const Kernel1D& phi, const RadialKernel3D& theta,
                                   const Vec3& r, double t, const QuadratureSpec& q = {});
//! Polynomial fields use the brute-force spatial integral.
ConsistencyReport expansion_values(const PolynomialField& psi, const Kernel1D& phi,
                                   const RadialKernel3D& theta, const Vec3& r, double t,
                                   const QuadratureSpec& q = {});

/*!
 * Frequency omega >= 0 solving phi_hat(omega) = theta_hat(|kmag|).
 *
 * Scans [0, 10 / sigma_eff] for the first sign change of
 * log phi_hat(omega) - log theta_hat(k) and bisects it to machine
 * resolution. Throws NoRealRoot if theta_hat(k) is nonpositive or
 * exceeds phi_hat(0).
 */
double kernel_dispersion(const Kernel1D& phi, const RadialKernel3D& theta, double kmag,
                         const QuadratureSpec& q = {});

struct ConvergenceStudy
{
    //! (sigma, |omega^2 - (c^2 k^2 + m^2 c^4)| / reference)
    std::vector<ScaleError> points;
    OrderFit fit;
    //! Every error at machine floor: the kernel dispersion is exactly Klein-Gordon.
    bool exact = false;
};

ConvergenceStudy convergence_study(double c, double m, std::span<const double> sigmas, double kmag,
                                   KernelFamily family = KernelFamily::gaussian,
                                   const QuadratureSpec& q = {});

} // namespace dilab
