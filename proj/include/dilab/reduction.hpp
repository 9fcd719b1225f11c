#pragma once

#include "dilab/vec.hpp"

#include <array>
#include <vector>

namespace dilab
{

// Signature (+,-,-,-), x0 = c t. Plane waves are a exp(-i k_mu x^mu) with the
// contravariant wave vector k = (omega / c, kx, ky, kz).

using Real4 = std::array<double, 4>;
using Complex4 = std::array<cplx, 4>;
using Spinor = std::array<cplx, 2>;

struct PotentialTerm
{
    Complex4 a{}; //!< covariant amplitudes A_i
    Real4 k{};
};

struct FourPotential
{
    std::vector<PotentialTerm> terms;
};

//! Scalar plane-wave superposition used for the charge density q.
struct ScalarWave
{
    cplx amplitude{};
    Real4 k{};
};

using ChargeDensity = std::vector<ScalarWave>;

//! F_ik = d_i A_k - d_k A_i at one point (lower indices).
struct FieldTensor
{
    std::array<Complex4, 4> F{};
};

FieldTensor field_tensor(const FourPotential& A, const Real4& x);

struct MaxwellResiduals
{
    Complex4 kg{};            //!< -c^2 box A_i, i.e. (omega^2 - c^2 k^2) a per wave
    Complex4 vec_a{};         //!< d_k (d^i A_i) - d_k q
    Complex4 inhomogeneous{}; //!< d^i F_ki - d_k q
    Complex4 bianchi{};       //!< eps^{ijkl} d_j F_ik
};

//! Evaluated at x = (c t, x, y, z).
MaxwellResiduals maxwell_residuals(const FourPotential& A, const ChargeDensity& q, double c,
                                   const Real4& x = {0.2, 0.1, -0.3, 0.4});

//! Transverse vacuum wave travelling along z with polarisation along x.
FourPotential transverse_wave(cplx amplitude, double kz, double omega, double c);

//! q = d^i A_i as a scalar wave, the source that balances a null potential.
ChargeDensity divergence_source(const FourPotential& A);

// Spinor operators act on plane waves through i d_0 -> k0, -i grad -> k:
// D1 = k0 + sigma.k, D2 = k0 - sigma.k, so D1 D2 = k0^2 - |k|^2.

struct Bispinor
{
    Spinor eta{};
    Spinor mu{};
    Real4 k{};
    double m = 0;
};

struct DiracResiduals
{
    Spinor first{};  //!< D2 eta - m mu
    Spinor second{}; //!< D1 mu - m eta
    Spinor kg{};     //!< D1 D2 eta - m^2 eta
};

Spinor sigma_dot(const Real4& k, const Spinor& s);
Spinor apply_d1(const Real4& k, const Spinor& s);
Spinor apply_d2(const Real4& k, const Spinor& s);

//! mu = D2 eta / m. Throws MasslessSpinor when m = 0.
Bispinor dirac_build(const Spinor& eta, const Real4& k, double m);

DiracResiduals dirac_residuals(const Bispinor& b);

double max_abs(const Complex4& v);
double max_abs(const Spinor& v);

} // namespace dilab
