#include "dilab/field.hpp"

#include <cmath>
#include <string>

namespace dilab
{

namespace
{

void require_nontachyonic(const ParticleCoefficients& coeffs)
{
    if (coeffs.m2c4 < 0)
        throw Error(ErrorCode::TachyonicCoefficients,
                    "m^2 c^4 = " + std::to_string(coeffs.m2c4) + " is negative");
}

} // namespace

TestField::TestField(std::vector<PlaneWave> terms) : terms_(std::move(terms))
{
    if (terms_.empty())
        throw Error(ErrorCode::InvalidArgument, "a test field needs at least one plane-wave term");
    for (const auto& w : terms_)
    {
        const bool finite = std::isfinite(w.amplitude.real()) && std::isfinite(w.amplitude.imag())
                            && std::isfinite(w.omega) && std::isfinite(norm2(w.k));
        if (!finite)
            throw Error(ErrorCode::InvalidArgument, "plane-wave parameters must be finite");
    }
}

TestField TestField::on_shell(const ParticleCoefficients& coeffs, const Vec3& k, cplx amplitude)
{
    return single(amplitude, k, dispersion_energy(coeffs, k));
}

cplx TestField::value(const Vec3& r, double t) const
{
    cplx sum{};
    for (const auto& w : terms_)
        sum += w.at(r, t);
    return sum;
}

cplx TestField::dt(const Vec3& r, double t) const
{
    cplx sum{};
    for (const auto& w : terms_)
        sum += cplx(0, -w.omega) * w.at(r, t);
    return sum;
}

cplx TestField::dtt(const Vec3& r, double t) const
{
    cplx sum{};
    for (const auto& w : terms_)
        sum += -w.omega * w.omega * w.at(r, t);
    return sum;
}

CVec3 TestField::grad(const Vec3& r, double t) const
{
    CVec3 sum{};
    for (const auto& w : terms_)
        sum += (cplx(0, 1) * w.at(r, t)) * w.k;
    return sum;
}

cplx TestField::laplacian(const Vec3& r, double t) const
{
    cplx sum{};
    for (const auto& w : terms_)
        sum += -norm2(w.k) * w.at(r, t);
    return sum;
}

PolynomialField PolynomialField::monomial(std::string_view name)
{
    PolynomialField f;
    const auto axis = [&](char c) {
        switch (c)
        {
        case 'x': return 0;
        case 'y': return 1;
        case 'z': return 2;
        default: return -1;
        }
    };
    if (name == "1")
        f.c0 = 1;
    else if (name == "t")
        f.ct = 1;
    else if (name == "t2")
        f.ctt = 1;
    else if (name.size() == 1 && axis(name[0]) >= 0)
        f.g[axis(name[0])] = 1;
    else if (name.size() == 2 && name[1] == '2' && axis(name[0]) >= 0)
        f.h[axis(name[0])][axis(name[0])] = 1;
    else
        throw Error(ErrorCode::InvalidArgument, "unknown monomial '" + std::string(name) + "'");
    return f;
}

cplx PolynomialField::value(const Vec3& r, double t) const
{
    cplx v = c0 + ct * t + ctt * t * t + dot(r, g);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            v += h[i][j] * r[i] * r[j];
    return v;
}

cplx PolynomialField::dt(const Vec3&, double t) const
{
    return ct + 2.0 * ctt * t;
}

cplx PolynomialField::dtt(const Vec3&, double) const
{
    return 2.0 * ctt;
}

CVec3 PolynomialField::grad(const Vec3& r, double) const
{
    CVec3 out = g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out[i] += (h[i][j] + h[j][i]) * r[j];
    return out;
}

cplx PolynomialField::laplacian(const Vec3&, double) const
{
    return 2.0 * (h[0][0] + h[1][1] + h[2][2]);
}

cplx kg_residual(const AnalyticField& psi, const ParticleCoefficients& coeffs, const Vec3& r, double t)
{
    require_nontachyonic(coeffs);
    return psi.dtt(r, t) - coeffs.c2 * psi.laplacian(r, t) + coeffs.m2c4 * psi.value(r, t);
}

double dispersion_energy(const ParticleCoefficients& coeffs, const Vec3& p)
{
    require_nontachyonic(coeffs);
    return std::sqrt(coeffs.m2c4 + coeffs.c2 * norm2(p));
}

OperatorEigenpair operator_eigenpair(const TestField& psi)
{
    if (psi.terms().size() != 1)
        throw Error(ErrorCode::NotAnEigenstate,
                    "a superposition of " + std::to_string(psi.terms().size()) + " plane waves is not an eigenstate");
    const PlaneWave& w = psi.terms().front();
    OperatorEigenpair pair{w.omega, w.k};

    // i dPsi/dt = E Psi and -i grad Psi = p Psi at a generic probe point.
    const Vec3 r{0.3, -0.2, 0.7};
    const double t = 0.4;
    const cplx v = psi.value(r, t);
    const double scale = std::abs(v) * (1 + std::abs(pair.E) + norm(pair.p));
    double mismatch = std::abs(cplx(0, 1) * psi.dt(r, t) - pair.E * v);
    const CVec3 gr = psi.grad(r, t);
    for (int i = 0; i < 3; ++i)
        mismatch = std::max(mismatch, std::abs(cplx(0, -1) * gr[i] - pair.p[i] * v));
    if (mismatch > 1e-12 * scale)
        throw Error(ErrorCode::NotAnEigenstate, "operator eigen-equations fail on the probe point");
    return pair;
}

double nonrel_limit_gap(const ParticleCoefficients& coeffs, const Vec3& p)
{
    require_nontachyonic(coeffs);
    if (!(coeffs.m2c4 > 0))
        throw Error(ErrorCode::InvalidArgument, "the nonrelativistic limit needs m > 0");
    const double rest = std::sqrt(coeffs.m2c4); // m c^2
    const double m = rest / coeffs.c2;
    const double p2 = norm2(p);
    if (std::sqrt(p2) >= m * coeffs.c())
        throw Error(ErrorCode::MomentumTooLarge, "|p| must stay below m c");
    const double energy = std::sqrt(coeffs.m2c4 + coeffs.c2 * p2);
    // (E - mc^2) - p^2/2m = -c^4 p^4 / (2 m c^2 (E + mc^2)^2)
    const double sum = energy + rest;
    return coeffs.c2 * coeffs.c2 * p2 * p2 / (2 * rest * sum * sum);
}

} // namespace dilab
