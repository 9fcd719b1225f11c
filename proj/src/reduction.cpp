#include "dilab/reduction.hpp"

#include "dilab/error.hpp"

#include <algorithm>
#include <cmath>

namespace dilab
{

namespace
{

constexpr std::array<double, 4> kMetric{1, -1, -1, -1};

double phase(const Real4& k, const Real4& x)
{
    return k[0] * x[0] - k[1] * x[1] - k[2] * x[2] - k[3] * x[3];
}

// d_mu of exp(-i k_nu x^nu) brings down -i k_mu with k_mu = g_mu_mu k^mu.
cplx lower_derivative(const Real4& k, int mu)
{
    return cplx(0, -kMetric[mu] * k[mu]);
}

int levi_civita(int i, int j, int k, int l)
{
    const int p[4] = {i, j, k, l};
    int sign = 1;
    for (int a = 0; a < 4; ++a)
    {
        for (int b = a + 1; b < 4; ++b)
        {
            if (p[a] == p[b])
                return 0;
            if (p[a] > p[b])
                sign = -sign;
        }
    }
    return sign;
}

Spinor operator+(const Spinor& a, const Spinor& b)
{
    return {a[0] + b[0], a[1] + b[1]};
}

Spinor operator-(const Spinor& a, const Spinor& b)
{
    return {a[0] - b[0], a[1] - b[1]};
}

Spinor operator*(cplx s, const Spinor& a)
{
    return {s * a[0], s * a[1]};
}

} // namespace

FieldTensor field_tensor(const FourPotential& A, const Real4& x)
{
    FieldTensor out;
    for (const auto& term : A.terms)
    {
        const cplx e = std::exp(cplx(0, -phase(term.k, x)));
        for (int i = 0; i < 4; ++i)
        {
            for (int k = i + 1; k < 4; ++k)
            {
                const cplx f = (lower_derivative(term.k, i) * term.a[k] - lower_derivative(term.k, k) * term.a[i]) * e;
                out.F[i][k] += f;
                out.F[k][i] -= f;
            }
        }
    }
    for (int i = 0; i < 4; ++i)
    {
        for (int k = 0; k < 4; ++k)
        {
            if (out.F[i][k] != -out.F[k][i])
                throw Error(ErrorCode::InvalidArgument, "field tensor lost antisymmetry");
        }
    }
    return out;
}

MaxwellResiduals maxwell_residuals(const FourPotential& A, const ChargeDensity& q, double c, const Real4& x)
{
    MaxwellResiduals out;
    for (const auto& term : A.terms)
    {
        const cplx e = std::exp(cplx(0, -phase(term.k, x)));
        const double kk = term.k[0] * term.k[0] - term.k[1] * term.k[1] - term.k[2] * term.k[2]
                          - term.k[3] * term.k[3];
        cplx div{}; // d^i A_i
        for (int i = 0; i < 4; ++i)
            div += cplx(0, -term.k[i]) * term.a[i];

        for (int k = 0; k < 4; ++k)
        {
            const cplx dk = lower_derivative(term.k, k);
            out.kg[k] += c * c * kk * term.a[k] * e;
            out.vec_a[k] += dk * div * e;
            // d^i F_ki = d^i d_k A_i - d^i d_i A_k
            out.inhomogeneous[k] += (dk * div + kk * term.a[k]) * e;
        }

        for (int l = 0; l < 4; ++l)
        {
            for (int i = 0; i < 4; ++i)
            {
                for (int j = 0; j < 4; ++j)
                {
                    for (int k = 0; k < 4; ++k)
                    {
                        const int s = levi_civita(i, j, k, l);
                        if (s == 0)
                            continue;
                        const cplx dj = lower_derivative(term.k, j);
                        const cplx f_ik = lower_derivative(term.k, i) * term.a[k]
                                          - lower_derivative(term.k, k) * term.a[i];
                        out.bianchi[l] += static_cast<double>(s) * dj * f_ik * e;
                    }
                }
            }
        }
    }
    for (const auto& w : q)
    {
        const cplx e = std::exp(cplx(0, -phase(w.k, x)));
        for (int k = 0; k < 4; ++k)
        {
            const cplx dq = lower_derivative(w.k, k) * w.amplitude * e;
            out.vec_a[k] -= dq;
            out.inhomogeneous[k] -= dq;
        }
    }
    return out;
}

FourPotential transverse_wave(cplx amplitude, double kz, double omega, double c)
{
    PotentialTerm term;
    term.a[1] = amplitude;
    term.k = {omega / c, 0, 0, kz};
    return {{term}};
}

ChargeDensity divergence_source(const FourPotential& A)
{
    ChargeDensity q;
    for (const auto& term : A.terms)
    {
        cplx div{};
        for (int i = 0; i < 4; ++i)
            div += cplx(0, -term.k[i]) * term.a[i];
        q.push_back({div, term.k});
    }
    return q;
}

Spinor sigma_dot(const Real4& k, const Spinor& s)
{
    const cplx kx = k[1];
    const cplx ky = k[2];
    const cplx kz = k[3];
    const cplx i(0, 1);
    return {kz * s[0] + (kx - i * ky) * s[1], (kx + i * ky) * s[0] - kz * s[1]};
}

Spinor apply_d1(const Real4& k, const Spinor& s)
{
    return cplx(k[0]) * s + sigma_dot(k, s);
}

Spinor apply_d2(const Real4& k, const Spinor& s)
{
    return cplx(k[0]) * s - sigma_dot(k, s);
}

Bispinor dirac_build(const Spinor& eta, const Real4& k, double m)
{
    if (m == 0)
        throw Error(ErrorCode::MasslessSpinor, "the lower spinor is defined through division by m");
    Bispinor b;
    b.eta = eta;
    b.k = k;
    b.m = m;
    b.mu = cplx(1 / m) * apply_d2(k, eta);
    return b;
}

DiracResiduals dirac_residuals(const Bispinor& b)
{
    const cplx m = b.m;
    DiracResiduals out;
    out.first = apply_d2(b.k, b.eta) - m * b.mu;
    out.second = apply_d1(b.k, b.mu) - m * b.eta;
    out.kg = apply_d1(b.k, apply_d2(b.k, b.eta)) - (m * m) * b.eta;
    return out;
}

double max_abs(const Complex4& v)
{
    double out = 0;
    for (const auto& x : v)
        out = std::max(out, std::abs(x));
    return out;
}

double max_abs(const Spinor& v)
{
    return std::max(std::abs(v[0]), std::abs(v[1]));
}

} // namespace dilab
