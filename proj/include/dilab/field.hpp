#pragma once

#include "dilab/coeff.hpp"
#include "dilab/vec.hpp"

#include <vector>

namespace dilab
{

/*!
 * Complex scalar field with closed-form derivatives.
 *
 * Implementations evaluate every derivative analytically, so residuals
 * built from them carry no discretisation error.
 */
class AnalyticField
{
  public:
    virtual ~AnalyticField() = default;

    virtual cplx value(const Vec3& r, double t) const = 0;
    virtual cplx dt(const Vec3& r, double t) const = 0;
    virtual cplx dtt(const Vec3& r, double t) const = 0;
    virtual CVec3 grad(const Vec3& r, double t) const = 0;
    virtual cplx laplacian(const Vec3& r, double t) const = 0;
};

//! amplitude * exp(i (k.r - omega t))
struct PlaneWave
{
    cplx amplitude{1, 0};
    Vec3 k{};
    double omega = 0;

    cplx at(const Vec3& r, double t) const
    {
        return amplitude * std::exp(cplx(0, dot(k, r) - omega * t));
    }
};

class TestField final : public AnalyticField
{
  public:
    explicit TestField(std::vector<PlaneWave> terms);
    static TestField single(cplx amplitude, const Vec3& k, double omega)
    {
        return TestField({PlaneWave{amplitude, k, omega}});
    }
    //! Positive-frequency wave satisfying omega^2 = c^2 |k|^2 + m^2 c^4.
    static TestField on_shell(const ParticleCoefficients& coeffs, const Vec3& k, cplx amplitude = 1.0);

    const std::vector<PlaneWave>& terms() const noexcept { return terms_; }

    cplx value(const Vec3& r, double t) const override;
    cplx dt(const Vec3& r, double t) const override;
    cplx dtt(const Vec3& r, double t) const override;
    CVec3 grad(const Vec3& r, double t) const override;
    cplx laplacian(const Vec3& r, double t) const override;

  private:
    std::vector<PlaneWave> terms_;
};

/*!
 * Quadratic polynomial in (r, t):
 * c0 + ct t + ctt t^2 + g.r + sum_ij h_ij r_i r_j with h symmetric.
 *
 * Convolution of such a field with an even, compactly decaying kernel is
 * exact at second order, which isolates the Laplacian coefficient.
 */
class PolynomialField final : public AnalyticField
{
  public:
    cplx c0{};
    cplx ct{};
    cplx ctt{};
    CVec3 g{};
    cplx h[3][3]{};

    //! Named monomials: "1", "x", "x2", "t", "t2" (also y, z, y2, z2).
    static PolynomialField monomial(std::string_view name);

    cplx value(const Vec3& r, double t) const override;
    cplx dt(const Vec3& r, double t) const override;
    cplx dtt(const Vec3& r, double t) const override;
    CVec3 grad(const Vec3& r, double t) const override;
    cplx laplacian(const Vec3& r, double t) const override;
};

//! Eigenvalues of H = i d/dt and p_j = -i d/dx_j on a single plane wave.
struct OperatorEigenpair
{
    double E = 0;
    Vec3 p{};
};

//! d^2 psi/dt^2 - c^2 Laplacian psi + m^2 c^4 psi at (r, t).
cplx kg_residual(const AnalyticField& psi, const ParticleCoefficients& coeffs, const Vec3& r, double t);

//! Positive root E = +sqrt(c^4 m^2 + c^2 p^2); the negative root -E also solves
//! the squared operator equation and is not returned.
double dispersion_energy(const ParticleCoefficients& coeffs, const Vec3& p);

OperatorEigenpair operator_eigenpair(const TestField& psi);

//! |(E - m c^2) - p^2 / 2m|, evaluated without cancellation.
double nonrel_limit_gap(const ParticleCoefficients& coeffs, const Vec3& p);

} // namespace dilab
