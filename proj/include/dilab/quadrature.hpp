#pragma once

#include "dilab/error.hpp"
#include "dilab/vec.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace dilab
{

enum class QuadratureScheme
{
    adaptive_gauss,
    tanh_sinh,
};

//! Tolerances and limits for every 1D integral evaluated by the library.
struct QuadratureSpec
{
    QuadratureScheme scheme = QuadratureScheme::adaptive_gauss;
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;
};

inline void validate(const QuadratureSpec& q)
{
    if (!(q.abs_tol > 0) || !(q.rel_tol > 0))
        throw Error(ErrorCode::InvalidArgument, "quadrature tolerances must be positive");
    if (q.max_subdivisions < 1)
        throw Error(ErrorCode::InvalidArgument, "max_subdivisions must be at least 1");
}

//! Fixed-size real vector integrand, for integrating several moments in one pass.
template<std::size_t N>
struct Multi
{
    std::array<double, N> v{};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    Multi& operator+=(const Multi& o)
    {
        for (std::size_t i = 0; i < N; ++i)
            v[i] += o.v[i];
        return *this;
    }
    Multi& operator-=(const Multi& o)
    {
        for (std::size_t i = 0; i < N; ++i)
            v[i] -= o.v[i];
        return *this;
    }
    Multi& operator*=(double s)
    {
        for (auto& x : v)
            x *= s;
        return *this;
    }
    friend Multi operator+(Multi a, const Multi& b) { return a += b; }
    friend Multi operator-(Multi a, const Multi& b) { return a -= b; }
    friend Multi operator*(double s, Multi a) { return a *= s; }
    friend Multi operator*(Multi a, double s) { return a *= s; }
};

template<class T>
struct QuadratureResult
{
    T value{};
    double error = 0;
    int subdivisions = 0;
};

namespace detail
{

inline double magnitude(double v)
{
    return std::abs(v);
}
inline double magnitude(const cplx& v)
{
    return std::abs(v);
}
template<std::size_t N>
double magnitude(const Multi<N>& m)
{
    double out = 0;
    for (double x : m.v)
        out = std::max(out, std::abs(x));
    return out;
}

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 tables).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template<class T>
struct Segment
{
    double a;
    double b;
    T value;
    double error;
    bool roundoff_limited;
};

template<class T, class F>
Segment<T> kronrod15(F& f, double a, double b)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<T, 15> samples;
    samples[7] = f(center);
    for (int j = 0; j < 7; ++j)
    {
        const double dx = half * kKronrodNodes[j];
        samples[j] = f(center - dx);
        samples[14 - j] = f(center + dx);
    }

    T kronrod = kKronrodWeights[7] * samples[7];
    T gauss = kGaussWeights[3] * samples[7];
    double resabs = kKronrodWeights[7] * magnitude(samples[7]);
    for (int j = 0; j < 7; ++j)
    {
        const T pair = samples[j] + samples[14 - j];
        kronrod += kKronrodWeights[j] * pair;
        resabs += kKronrodWeights[j] * (magnitude(samples[j]) + magnitude(samples[14 - j]));
        if (j % 2 == 1)
            gauss += kGaussWeights[j / 2] * pair;
    }

    const T mean = 0.5 * kronrod;
    double resasc = kKronrodWeights[7] * magnitude(samples[7] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kKronrodWeights[j] * (magnitude(samples[j] - mean) + magnitude(samples[14 - j] - mean));

    const double scale = std::abs(half);
    resabs *= scale;
    resasc *= scale;
    double err = magnitude(kronrod - gauss) * scale;
    if (resasc != 0 && err != 0)
        err = resasc * std::min(1.0, std::pow(200 * err / resasc, 1.5));
    const double floor = 50 * eps * resabs;
    bool limited = false;
    if (err <= floor)
    {
        err = floor;
        limited = true;
    }
    return {a, b, half * kronrod, err, limited};
}

template<class T, class F>
QuadratureResult<T> adaptive_gauss(F& f, double a, double b, const QuadratureSpec& q)
{
    auto worse = [](const Segment<T>& l, const Segment<T>& r) { return l.error < r.error; };
    std::priority_queue<Segment<T>, std::vector<Segment<T>>, decltype(worse)> heap(worse);

    Segment<T> first = kronrod15<T>(f, a, b);
    T total = first.value;
    double total_err = first.error;
    heap.push(first);
    int subdivisions = 1;

    auto converged = [&] {
        return total_err <= std::max(q.abs_tol, q.rel_tol * magnitude(total));
    };

    while (!converged())
    {
        const Segment<T> worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.roundoff_limited || mid <= worst.a || mid >= worst.b)
            break;
        if (subdivisions >= q.max_subdivisions)
        {
            throw Error(ErrorCode::NonConvergent,
                        "adaptive quadrature on [" + std::to_string(a) + ", " + std::to_string(b)
                            + "] exceeded " + std::to_string(q.max_subdivisions)
                            + " subdivisions (error estimate " + std::to_string(total_err) + ")");
        }
        heap.pop();
        Segment<T> left = kronrod15<T>(f, worst.a, mid);
        Segment<T> right = kronrod15<T>(f, mid, worst.b);
        total = total - worst.value + left.value + right.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum to drop the drift accumulated by incremental updates.
    T sum{};
    double err = 0;
    while (!heap.empty())
    {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {sum, err, subdivisions};
}

template<class F>
QuadratureResult<double> tanh_sinh_real(F& f, double a, double b, const QuadratureSpec& q)
{
    const int levels = std::clamp(static_cast<int>(std::ceil(std::log2(q.max_subdivisions + 1.0))), 1, 20);
    boost::math::quadrature::tanh_sinh<double> integrator(static_cast<std::size_t>(levels));
    double err = 0;
    double l1 = 0;
    std::size_t used = 0;
    const double value = integrator.integrate(f, a, b, q.rel_tol, &err, &l1, &used);
    if (err > std::max(q.abs_tol, q.rel_tol * std::max(std::abs(value), l1)))
    {
        throw Error(ErrorCode::NonConvergent,
                    "tanh-sinh quadrature did not reach tolerance (error estimate "
                        + std::to_string(err) + ")");
    }
    return {value, err, static_cast<int>(used)};
}

template<class T, class F>
QuadratureResult<T> tanh_sinh(F& f, double a, double b, const QuadratureSpec& q)
{
    if constexpr (std::is_same_v<T, double>)
    {
        return tanh_sinh_real(f, a, b, q);
    }
    else if constexpr (std::is_same_v<T, cplx>)
    {
        auto re = [&](double x) { return f(x).real(); };
        auto im = [&](double x) { return f(x).imag(); };
        const auto r = tanh_sinh_real(re, a, b, q);
        const auto i = tanh_sinh_real(im, a, b, q);
        return {cplx(r.value, i.value), std::hypot(r.error, i.error), r.subdivisions + i.subdivisions};
    }
    else
    {
        QuadratureResult<T> out;
        for (std::size_t c = 0; c < out.value.v.size(); ++c)
        {
            auto part = [&](double x) { return f(x)[c]; };
            const auto r = tanh_sinh_real(part, a, b, q);
            out.value[c] = r.value;
            out.error = std::max(out.error, r.error);
            out.subdivisions += r.subdivisions;
        }
        return out;
    }
}

} // namespace detail

//! Integrates f over [a, b] according to q; throws NonConvergent on failure.
template<class F>
auto integrate_with_error(F&& f, double a, double b, const QuadratureSpec& q)
{
    using T = std::decay_t<decltype(f(a))>;
    validate(q);
    if (a == b)
        return QuadratureResult<T>{};
    if (q.scheme == QuadratureScheme::tanh_sinh)
        return detail::tanh_sinh<T>(f, a, b, q);
    return detail::adaptive_gauss<T>(f, a, b, q);
}

template<class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& q)
{
    return integrate_with_error(std::forward<F>(f), a, b, q).value;
}

//! Gauss-Legendre nodes and weights on [-1, 1].
struct FixedRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

template<unsigned N>
const FixedRule& gauss_legendre()
{
    static const FixedRule rule = [] {
        using G = boost::math::quadrature::gauss<double, N>;
        const auto& x = G::abscissa();
        const auto& w = G::weights();
        FixedRule r;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            if (x[i] == 0)
            {
                r.nodes.push_back(0);
                r.weights.push_back(w[i]);
                continue;
            }
            r.nodes.push_back(-x[i]);
            r.weights.push_back(w[i]);
            r.nodes.push_back(x[i]);
            r.weights.push_back(w[i]);
        }
        return r;
    }();
    return rule;
}

struct SphereNode
{
    Vec3 n;
    double weight;
};

//! Product rule on the unit sphere: 20 Gauss-Legendre nodes in cos(theta),
//! 40 midpoint nodes in phi. Exact for spherical polynomials up to degree 39.
inline const std::vector<SphereNode>& sphere_rule()
{
    static const std::vector<SphereNode> nodes = [] {
        constexpr int kAzimuth = 40;
        const FixedRule& rule = gauss_legendre<20>();
        const double dphi = 2 * M_PI / kAzimuth;
        std::vector<SphereNode> out;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        {
            const double ct = rule.nodes[i];
            const double st = std::sqrt(std::max(0.0, 1 - ct * ct));
            for (int j = 0; j < kAzimuth; ++j)
            {
                const double phi = (j + 0.5) * dphi;
                out.push_back({Vec3{st * std::cos(phi), st * std::sin(phi), ct}, rule.weights[i] * dphi});
            }
        }
        return out;
    }();
    return nodes;
}

//! Integrates f over the unit sphere, f taking a unit vector.
template<class F>
auto integrate_sphere(F&& f)
{
    using T = std::decay_t<decltype(f(Vec3{}))>;
    T sum{};
    for (const auto& node : sphere_rule())
        sum += node.weight * f(node.n);
    return sum;
}

} // namespace dilab
