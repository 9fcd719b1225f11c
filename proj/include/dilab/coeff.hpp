#pragma once

#include "dilab/kernel.hpp"

namespace dilab
{

//! Which coefficient multiplies the Laplacian term of the spatial expansion.
//! paper_literal keeps 4 pi int rho^4 theta; corrected uses the isotropic
//! angular average (4 pi / 3) int rho^4 theta.
enum class FactorMode
{
    paper_literal,
    corrected,
};

std::string_view to_string(FactorMode mode);

//! Particle constants in hbar = 1 units: c2 in length^2/time^2, m2c4 in 1/time^2.
struct ParticleCoefficients
{
    double c2 = 1;
    double m2c4 = 0;
    FactorMode factor_mode = FactorMode::corrected;
    //! Set when m2c4 < 0 (kernels with Z > F0); kept, not suppressed.
    bool tachyonic = false;

    static ParticleCoefficients from_physical(double c, double m)
    {
        return {c * c, m * m * c * c * c * c, FactorMode::corrected, false};
    }

    double c() const { return std::sqrt(c2); }
    //! Rest mass m = sqrt(m2c4) / c^2; requires m2c4 >= 0.
    double mass() const { return std::sqrt(m2c4) / c2; }
};

struct AxisCoefficients
{
    double c2_x = 0;
    double c2_y = 0;
    double c2_z = 0;
    double mu2c4 = 0;
};

struct MassEnergyEstimate
{
    double value = 0;
    bool tachyonic_warning = false;
};

double extract_c2(const Kernel1D& phi, const RadialKernel3D& theta,
                  FactorMode mode = FactorMode::corrected, const QuadratureSpec& q = {});

MassEnergyEstimate extract_m2c4(const Kernel1D& phi, const RadialKernel3D& theta,
                                const QuadratureSpec& q = {});

ParticleCoefficients extract_coefficients(const Kernel1D& phi, const RadialKernel3D& theta,
                                          FactorMode mode = FactorMode::corrected,
                                          const QuadratureSpec& q = {});

/*!
 * Per-axis speeds and mass term measured in a frame whose time and x scales
 * are stretched by alpha11 and alpha22.
 *
 * Every moment is evaluated through the substitution t' = alpha11 t,
 * x' = alpha22 x, so the integrand is the scaled-argument kernel times the
 * Jacobian. Requires |alpha - 1| < 1 for both factors.
 */
AxisCoefficients axis_coefficients(const Kernel1D& phi, const RadialKernel3D& theta, double alpha11,
                                   double alpha22, FactorMode mode = FactorMode::corrected,
                                   const QuadratureSpec& q = {});

//! Partial sum (1+eps)^(n+1) * sum_{k=0}^{K} (-1)^k (k+n)!/(k! n!) eps^k.
double appendix_series(int n, double eps, int terms);

//! scale^(n+1) int t^n phi(scale t) dt, i.e. the moment in the stretched variable.
double scaled_temporal_moment(const Kernel1D& phi, int n, double scale, const QuadratureSpec& q = {});

struct ScaledMomentCheck
{
    double lhs = 0; //!< int t1^n phi(t1) dt1 with t1 = t (1 + eps), by substitution
    double rhs = 0; //!< int t^n phi(t) dt
};

ScaledMomentCheck scaled_moment_check(const Kernel1D& phi, int n, double eps, const QuadratureSpec& q = {});

} // namespace dilab
