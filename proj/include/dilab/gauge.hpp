#pragma once

#include "dilab/coeff.hpp"
#include "dilab/field.hpp"

#include <functional>
#include <vector>

namespace dilab
{

//! theta(dr, dnu) over displacement and internal-state shift.
using SpatialStateKernel = std::function<double(const Vec3&, double)>;
//! phi(dt, dnu).
using TemporalStateKernel = std::function<double(double, double)>;

/*!
 * Kernels of a particle with a continuous internal variable nu.
 *
 * The symmetric parts are even in each argument separately, the
 * antisymmetric parts odd in each. Radii bound the region outside which
 * every kernel is negligible.
 */
struct InternalKernelSet
{
    SpatialStateKernel theta_s;
    SpatialStateKernel theta_a;
    TemporalStateKernel phi_s;
    TemporalStateKernel phi_a;
    double spatial_radius = 0;
    double temporal_radius = 0;
    double nu_radius = 0;
    //! Hopping weights between discrete internal states; must be symmetric.
    std::vector<std::vector<double>> h;

    //! Throws InvalidArgument on missing kernels or radii, SymmetryViolation on asymmetric h.
    void validate() const;
};

struct SpatialSplit
{
    SpatialStateKernel symmetric;
    SpatialStateKernel antisymmetric;
};

struct TemporalSplit
{
    TemporalStateKernel symmetric;
    TemporalStateKernel antisymmetric;
};

/*!
 * theta_s = (theta(dr, dnu) + theta(-dr, dnu)) / 2, theta_a = theta - theta_s.
 *
 * The joint reflection theta(dr, dnu) = theta(-dr, -dnu) is checked on a
 * grid inside the given radii; SymmetryViolation if it fails beyond tol
 * (relative to the largest sampled value).
 */
SpatialSplit split_parity(SpatialStateKernel theta, double radius, double nu_radius, double tol = 1e-12);
TemporalSplit split_parity_temporal(TemporalStateKernel phi, double radius, double nu_radius,
                                    double tol = 1e-12);

struct QRCoefficients
{
    double R0 = 0;
    double R1 = 0;
    double Q1 = 0;
    double Q2 = 0;
    double R3 = 0;
    Vec3 R2{};
};

/*!
 * The six moment integrals of the internal-state expansion.
 *
 * R1 uses the isotropic average (1/6) int theta_s dr^2 in corrected mode and
 * (1/2) int theta_s dr^2 in paper_literal mode. Throws DegenerateQ1 when
 * Q1 < q.abs_tol.
 */
QRCoefficients qr_coefficients(const InternalKernelSet& ks, FactorMode mode = FactorMode::corrected,
                               const QuadratureSpec& q = {});

//! (|R2| / c)^2 - Q2^2 - 4 R3.
double constraint_residual(const QRCoefficients& qr, double c);

//! (|R2| / c)^2 - Q2^2 - 4 Q1 R3, the form that closes the reduction for any Q1.
double normalized_constraint_residual(const QRCoefficients& qr, double c);

//! Constant potentials and charge.
struct GaugePotential
{
    double A0 = 0;
    Vec3 A{};
    double e = 0;
};

struct U1Reduction
{
    GaugePotential potential;
    ParticleCoefficients coeffs;
};

/*!
 * A = -R2 / (2 Q1 c), A0 = Q2 / (2 Q1), c^2 = R1 / Q1, m^2 c^4 = R0 / Q1.
 *
 * Throws DegenerateQ1 if Q1 is not positive and ConstraintViolated when
 * |normalized_constraint_residual| exceeds rel_tol * Q1^2.
 */
U1Reduction u1_reduce(const QRCoefficients& qr, double e, double c, double rel_tol = 1e-8);

//! Right side minus left side of
//! (i d_t - e A0)^2 psi = c^2 (-i grad - (e/c) A)^2 psi + c^4 m^2 psi,
//! so that e = 0 gives kg_residual.
cplx minimal_coupling_residual(const GaugePotential& gp, const ParticleCoefficients& coeffs,
                               const AnalyticField& psi, const Vec3& r = {0.3, -0.2, 0.1}, double t = 0.4);

//! Positive-frequency wave with (omega - e A0)^2 = c^2 |k - (e/c) A|^2 + c^4 m^2.
TestField gauge_shifted_wave(const GaugePotential& gp, const ParticleCoefficients& coeffs, const Vec3& k,
                             cplx amplitude = 1.0);

/*!
 * (P_T - P_R) / Q1 for Psi(r, nu, t) = exp(i e nu) psi(r, t), with both
 * nonlocal integrals evaluated by iterated quadrature at nu = 0.
 *
 * Its second-order expansion is expansion32_truncated; the difference
 * vanishes as the kernel widths shrink.
 */
cplx expansion32_residual(const InternalKernelSet& ks, double e, const TestField& psi, const Vec3& r,
                          double t, const QuadratureSpec& q = {});

//! (Q1 psi_tt + i e Q2 psi_t + R0 psi - R1 lap psi - i e R2.grad psi + e^2 R3 psi) / Q1.
cplx expansion32_truncated(const QRCoefficients& qr, double e, const AnalyticField& psi, const Vec3& r,
                           double t);

/*!
 * Separable gaussian kernel set whose reduction gives (c, m, A0, A) exactly.
 *
 * phi_s = g_sigma(dt) g_sigma(dnu)
 * theta_s = G_s,Z(rho) g_lambda(dnu), lambda^2 = sigma^2 (1 + |A|^2 - A0^2) / Z
 * phi_a = (A0 / sigma^2) dt dnu g_sigma(dt) g_sigma(dnu)
 * theta_a = -(c / s^2) (A.dr) dnu G_s,1(rho) g_sigma(dnu)
 * with g the unit 1D gaussian, G the 3D gaussian of zeroth moment Z, and
 * Z, s as in make_kernel_pair. Requires 1 + |A|^2 - A0^2 > 0.
 */
InternalKernelSet make_gauge_kernel_set(double c, double m, double sigma, double A0, const Vec3& A);

} // namespace dilab
