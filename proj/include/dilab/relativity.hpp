#pragma once

#include "dilab/field.hpp"
#include "dilab/kernel.hpp"

namespace dilab
{

/*!
 * Single-axis frame change t' = a11 t + a12 x, x' = a21 t + a22 x.
 *
 * Lorentz boosts are built in the chart x0 = c t, where the coefficient
 * matrix is [[cosh r, sinh r], [sinh r, cosh r]] with tanh r = v / c.
 */
struct Boost
{
    double a11 = 1;
    double a12 = 0;
    double a21 = 0;
    double a22 = 1;
    double v = 0;
    double c = 1;
    double rapidity = 0;

    //! t' = t, x' = x + v t.
    static Boost galilean(double v, double c);

    double determinant() const { return a11 * a22 - a12 * a21; }
};

//! Residuals of the form-invariance conditions in the chart x0 = c t.
struct BoostConditions
{
    double cross = 0;      //!< n11 n21 - n22 n12, zero for a conforming boost
    double time_form = 0;  //!< n11^2 - n12^2, one for a conforming boost
    double space_form = 0; //!< n22^2 - n21^2, one for a conforming boost
};

//! Throws SuperluminalVelocity unless |v| < c.
Boost solve_boost(double v, double c);

//! Frame change b applied first, then a.
Boost compose(const Boost& a, const Boost& b);

BoostConditions boost_conditions(const Boost& b);

//! (E, p) of a plane wave seen from the transformed frame; p_y, p_z unchanged.
OperatorEigenpair transform_eigenpair(const Boost& b, const OperatorEigenpair& e);

/*!
 * Klein-Gordon operator of the transformed field in transformed coordinates
 * minus the operator of the original field, at the same event.
 *
 * Each wave exp(i(k.r - omega t)) becomes exp(i(k'.r' - omega' t')) with
 * (k'_x, omega') fixed by phase invariance, so the chain rule is exact.
 */
cplx form_invariance_residual(const Boost& b, const ParticleCoefficients& coeffs, const TestField& psi,
                              const Vec3& r = {0.3, -0.2, 0.1}, double t = 0.4);

struct UniversalityReport
{
    double c2_a = 0;
    double c2_b = 0;
    bool compatible = false;
    //! |form_invariance_residual| for an on-shell wave of pair B under the
    //! boost built with c_A.
    double cross_residual = 0;
};

UniversalityReport universality_check(const KernelPair& a, const KernelPair& b, double rel_tol = 1e-9,
                                      const QuadratureSpec& q = {});

} // namespace dilab
