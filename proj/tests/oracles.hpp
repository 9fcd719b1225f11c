#pragma once

// Reference values computed without the library's quadrature or closed forms.

#include <cmath>
#include <complex>
#include <functional>

namespace oracle
{

//! Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000)
{
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3;
}

inline double double_factorial(int n)
{
    double out = 1;
    for (int k = n; k > 1; k -= 2)
        out *= k;
    return out;
}

//! int t^n N(0, sigma^2) dt for even n.
inline double gaussian_moment(double sigma, int n)
{
    if (n % 2)
        return 0;
    return std::pow(sigma, n) * double_factorial(n - 1);
}

//! Series of (E - m c^2) - p^2 / 2m in powers of p, negated.
inline double nonrel_gap_series(double p, double m, double c)
{
    const double x = p / (m * c);
    return m * c * c * (x * x * x * x / 8 - std::pow(x, 6) / 16 + 5 * std::pow(x, 8) / 128);
}

inline double lorentz_gamma(double v, double c)
{
    return 1 / std::sqrt(1 - v * v / (c * c));
}

//! Symmetric second difference.
inline std::complex<double> second_difference(const std::function<std::complex<double>(double)>& f, double x,
                                              double h)
{
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

} // namespace oracle
