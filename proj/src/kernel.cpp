#include "dilab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace dilab
{

namespace
{

constexpr double kCutoff = 1e-16;
constexpr int kMaxMomentOrder = 6;

double unit_bump(double x)
{
    const double x2 = x * x;
    if (x2 >= 1)
        return 0;
    return std::exp(-1 / (1 - x2));
}

// Radius beyond which peak * exp(-x^2 / (2 w^2)) drops below the cutoff.
double gaussian_support(double peak, double w)
{
    if (!(peak > kCutoff))
        return 0;
    return w * std::sqrt(2 * std::log(peak / kCutoff));
}

const QuadratureSpec& shape_quadrature()
{
    static const QuadratureSpec q{QuadratureScheme::adaptive_gauss, 1e-15, 1e-14, 10000};
    return q;
}

double bump_integral_1d(int n)
{
    return integrate([n](double x) { return std::pow(x, n) * unit_bump(x); }, -1.0, 1.0,
                     shape_quadrature());
}

double bump_integral_radial(int n)
{
    return integrate([n](double x) { return std::pow(x, n) * unit_bump(x); }, 0.0, 1.0,
                     shape_quadrature());
}

void check_order(int n)
{
    if (n < 0 || n > kMaxMomentOrder)
        throw Error(ErrorCode::InvalidArgument,
                    "moment order must be in [0, 6], got " + std::to_string(n));
}

void check_positive(double v, const char* what)
{
    if (!(v > 0) || !std::isfinite(v))
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive and finite");
}

void check_amplitude(double v)
{
    if (!(v >= 0) || !std::isfinite(v))
        throw Error(ErrorCode::InvalidArgument, "kernel zeroth moment must be nonnegative and finite");
}

std::shared_ptr<const KernelTable> checked_table(KernelTable table)
{
    if (table.abscissa.size() != table.values.size())
        throw Error(ErrorCode::InvalidArgument, "kernel table columns differ in length");
    if (table.abscissa.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "kernel table needs at least two samples");
    if (table.order != 1 && table.order != 3)
        throw Error(ErrorCode::InvalidArgument, "interpolation order must be 1 or 3");
    for (std::size_t i = 0; i < table.values.size(); ++i)
    {
        if (!std::isfinite(table.abscissa[i]) || !std::isfinite(table.values[i]) || table.values[i] < 0)
            throw Error(ErrorCode::InvalidArgument, "kernel table values must be finite and nonnegative");
        if (i > 0 && !(table.abscissa[i] > table.abscissa[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "kernel table abscissae must increase strictly");
    }
    if (table.abscissa.size() < 4)
        table.order = 1;
    return std::make_shared<const KernelTable>(std::move(table));
}

double table_extent(const KernelTable& t)
{
    return std::max(std::abs(t.abscissa.front()), std::abs(t.abscissa.back()));
}

} // namespace

std::string_view to_string(KernelFamily family)
{
    switch (family)
    {
    case KernelFamily::gaussian: return "gaussian";
    case KernelFamily::bump: return "bump";
    case KernelFamily::tabulated: return "tabulated";
    }
    return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name)
{
    if (name == "gaussian")
        return KernelFamily::gaussian;
    if (name == "bump")
        return KernelFamily::bump;
    if (name == "tabulated")
        return KernelFamily::tabulated;
    throw Error(ErrorCode::ConfigError, "unknown kernel family '" + std::string(name) + "'");
}

double KernelTable::interpolate(double x) const
{
    if (x < abscissa.front() || x > abscissa.back())
        return 0;
    const auto n = static_cast<std::ptrdiff_t>(abscissa.size());
    auto it = std::upper_bound(abscissa.begin(), abscissa.end(), x);
    std::ptrdiff_t i = std::clamp<std::ptrdiff_t>(it - abscissa.begin() - 1, 0, n - 2);

    if (order == 1)
    {
        const double t = (x - abscissa[i]) / (abscissa[i + 1] - abscissa[i]);
        return (1 - t) * values[i] + t * values[i + 1];
    }

    // Four-point Lagrange stencil, shifted inward at the table ends.
    const std::ptrdiff_t lo = std::clamp<std::ptrdiff_t>(i - 1, 0, n - 4);
    double sum = 0;
    for (std::ptrdiff_t j = lo; j < lo + 4; ++j)
    {
        double basis = 1;
        for (std::ptrdiff_t m = lo; m < lo + 4; ++m)
        {
            if (m != j)
                basis *= (x - abscissa[m]) / (abscissa[j] - abscissa[m]);
        }
        sum += basis * values[j];
    }
    return std::max(sum, 0.0);
}

// --- Kernel1D -------------------------------------------------------------

Kernel1D Kernel1D::gaussian(double sigma, double zeroth_moment)
{
    check_positive(sigma, "gaussian width");
    check_amplitude(zeroth_moment);
    Kernel1D k;
    k.family_ = KernelFamily::gaussian;
    k.width_ = sigma;
    k.zeroth_ = zeroth_moment;
    k.norm_ = zeroth_moment / (sigma * std::sqrt(2 * M_PI));
    k.support_ = gaussian_support(k.norm_, sigma);
    return k;
}

Kernel1D Kernel1D::bump(double radius, double zeroth_moment)
{
    check_positive(radius, "bump radius");
    check_amplitude(zeroth_moment);
    static const double i0 = bump_integral_1d(0);
    Kernel1D k;
    k.family_ = KernelFamily::bump;
    k.width_ = radius;
    k.zeroth_ = zeroth_moment;
    k.norm_ = zeroth_moment / (radius * i0);
    k.support_ = zeroth_moment > 0 ? radius : 0;
    return k;
}

Kernel1D Kernel1D::tabulated(KernelTable table)
{
    Kernel1D k;
    k.family_ = KernelFamily::tabulated;
    k.table_ = checked_table(std::move(table));
    k.width_ = 0;
    k.mirrored_ = k.table_->abscissa.front() >= 0;
    k.support_ = table_extent(*k.table_);
    k.zeroth_ = 0;
    k.zeroth_ = temporal_moment_quadrature(k, 0);
    return k;
}

double Kernel1D::operator()(double dt) const
{
    switch (family_)
    {
    case KernelFamily::gaussian:
        return norm_ * std::exp(-dt * dt / (2 * width_ * width_));
    case KernelFamily::bump:
        return norm_ * unit_bump(dt / width_);
    case KernelFamily::tabulated:
        if (mirrored_)
            return table_->interpolate(std::abs(dt));
        return 0.5 * (table_->interpolate(dt) + table_->interpolate(-dt));
    }
    return 0;
}

std::optional<double> Kernel1D::closed_form_moment(int n) const
{
    check_order(n);
    if (family_ != KernelFamily::gaussian)
        return std::nullopt;
    if (n % 2 == 1)
        return 0.0;
    // (n-1)!! sigma^n
    double value = zeroth_;
    for (int j = n - 1; j > 0; j -= 2)
        value *= j * width_ * width_;
    return value;
}

std::optional<double> Kernel1D::closed_form_fourier(double omega) const
{
    if (family_ != KernelFamily::gaussian)
        return std::nullopt;
    return zeroth_ * std::exp(-0.5 * omega * omega * width_ * width_);
}

// --- RadialKernel3D -------------------------------------------------------

RadialKernel3D RadialKernel3D::gaussian(double s, double zeroth_moment)
{
    check_positive(s, "gaussian width");
    check_amplitude(zeroth_moment);
    RadialKernel3D k;
    k.family_ = KernelFamily::gaussian;
    k.width_ = s;
    k.zeroth_ = zeroth_moment;
    k.norm_ = zeroth_moment / (std::pow(2 * M_PI, 1.5) * s * s * s);
    k.support_ = gaussian_support(k.norm_, s);
    return k;
}

RadialKernel3D RadialKernel3D::bump(double radius, double zeroth_moment)
{
    check_positive(radius, "bump radius");
    check_amplitude(zeroth_moment);
    static const double j2 = bump_integral_radial(2);
    RadialKernel3D k;
    k.family_ = KernelFamily::bump;
    k.width_ = radius;
    k.zeroth_ = zeroth_moment;
    k.norm_ = zeroth_moment / (4 * M_PI * radius * radius * radius * j2);
    k.support_ = zeroth_moment > 0 ? radius : 0;
    return k;
}

RadialKernel3D RadialKernel3D::tabulated(KernelTable table)
{
    RadialKernel3D k;
    k.family_ = KernelFamily::tabulated;
    k.table_ = checked_table(std::move(table));
    if (k.table_->abscissa.front() < 0)
        throw Error(ErrorCode::InvalidArgument, "radial kernel table needs nonnegative abscissae");
    k.width_ = 0;
    k.support_ = table_extent(*k.table_);
    k.zeroth_ = radial_moment_quadrature(k, 2);
    return k;
}

double RadialKernel3D::operator()(double rho) const
{
    rho = std::abs(rho);
    switch (family_)
    {
    case KernelFamily::gaussian:
        return norm_ * std::exp(-rho * rho / (2 * width_ * width_));
    case KernelFamily::bump:
        return norm_ * unit_bump(rho / width_);
    case KernelFamily::tabulated:
        return table_->interpolate(rho);
    }
    return 0;
}

std::optional<double> RadialKernel3D::closed_form_moment(int n) const
{
    check_order(n);
    if (family_ != KernelFamily::gaussian)
        return std::nullopt;
    // 4 pi norm * (1/2) (2 s^2)^((n+1)/2) Gamma((n+1)/2)
    const double half = 0.5 * (n + 1);
    return 4 * M_PI * norm_ * 0.5 * std::pow(2 * width_ * width_, half) * std::tgamma(half);
}

std::optional<double> RadialKernel3D::closed_form_fourier(double kmag) const
{
    if (family_ != KernelFamily::gaussian)
        return std::nullopt;
    return zeroth_ * std::exp(-0.5 * kmag * kmag * width_ * width_);
}

// --- moments and transforms -----------------------------------------------

double temporal_moment_quadrature(const Kernel1D& k, int n, const QuadratureSpec& q)
{
    check_order(n);
    const double r = k.support_radius();
    auto integrand = [&](double t) { return std::pow(t, n) * k(t); };
    if (n % 2 == 0)
        return 2 * integrate(integrand, 0.0, r, q);
    return integrate(integrand, -r, r, q);
}

double temporal_moment(const Kernel1D& k, int n, const QuadratureSpec& q)
{
    if (auto exact = k.closed_form_moment(n))
        return *exact;
    return temporal_moment_quadrature(k, n, q);
}

double radial_moment_quadrature(const RadialKernel3D& k, int n, const QuadratureSpec& q)
{
    check_order(n);
    return 4 * M_PI
           * integrate([&](double rho) { return std::pow(rho, n) * k(rho); }, 0.0, k.support_radius(), q);
}

double radial_moment(const RadialKernel3D& k, int n, const QuadratureSpec& q)
{
    if (auto exact = k.closed_form_moment(n))
        return *exact;
    return radial_moment_quadrature(k, n, q);
}

double fourier_1d(const Kernel1D& k, double omega, const QuadratureSpec& q)
{
    if (auto exact = k.closed_form_fourier(omega))
        return *exact;
    return 2 * integrate([&](double t) { return k(t) * std::cos(omega * t); }, 0.0, k.support_radius(), q);
}

cplx fourier_1d_quadrature(const Kernel1D& k, double omega, const QuadratureSpec& q)
{
    const double r = k.support_radius();
    return integrate([&](double t) { return k(t) * std::exp(cplx(0, -omega * t)); }, -r, r, q);
}

double fourier_radial(const RadialKernel3D& k, double kmag, const QuadratureSpec& q)
{
    if (kmag < 0)
        throw Error(ErrorCode::InvalidArgument, "wave number magnitude must be nonnegative");
    if (auto exact = k.closed_form_fourier(kmag))
        return *exact;
    if (kmag == 0)
        return radial_moment(k, 2, q);
    // Spherical average of exp(-i k.d) over |d| = rho is sin(k rho) / (k rho).
    auto integrand = [&](double rho) {
        const double x = kmag * rho;
        const double sinc = x == 0 ? 1.0 : std::sin(x) / x;
        return rho * rho * k(rho) * sinc;
    };
    return 4 * M_PI * integrate(integrand, 0.0, k.support_radius(), q);
}

double log_fourier_1d(const Kernel1D& k, double omega, const QuadratureSpec& q)
{
    if (k.family() == KernelFamily::gaussian && k.zeroth_moment_parameter() > 0)
    {
        const double w = k.width();
        return std::log(k.zeroth_moment_parameter()) - 0.5 * omega * omega * w * w;
    }
    return std::log(fourier_1d(k, omega, q));
}

double log_fourier_radial(const RadialKernel3D& k, double kmag, const QuadratureSpec& q)
{
    if (k.family() == KernelFamily::gaussian && k.zeroth_moment_parameter() > 0)
    {
        const double w = k.width();
        return std::log(k.zeroth_moment_parameter()) - 0.5 * kmag * kmag * w * w;
    }
    return std::log(fourier_radial(k, kmag, q));
}

double bump_moment_ratio_1d(int n)
{
    static const double i0 = bump_integral_1d(0);
    return bump_integral_1d(n) / i0;
}

double bump_moment_ratio_radial(int n)
{
    static const double j2 = bump_integral_radial(2);
    return bump_integral_radial(n) / j2;
}

KernelPair make_kernel_pair(double c, double m, double sigma, KernelFamily family)
{
    check_positive(c, "signal speed c");
    check_positive(sigma, "temporal width sigma");
    if (!(m >= 0) || !std::isfinite(m))
        throw Error(ErrorCode::InvalidArgument, "mass must be nonnegative and finite");

    const double c2 = c * c;
    const double deficit = 0.5 * m * m * c2 * c2 * sigma * sigma;
    if (deficit >= 1)
    {
        throw Error(ErrorCode::MassTooLarge,
                    "m^2 c^4 sigma^2 / 2 = " + std::to_string(deficit) + " must be below 1");
    }
    const double z = 1 - deficit;

    switch (family)
    {
    case KernelFamily::gaussian:
        return {Kernel1D::gaussian(sigma, 1.0), RadialKernel3D::gaussian(sigma * c / std::sqrt(z), z)};
    case KernelFamily::bump:
    {
        static const double t2 = bump_moment_ratio_1d(2);
        static const double r4 = bump_moment_ratio_radial(4);
        const double a = sigma / std::sqrt(t2);
        const double b = sigma * c * std::sqrt(3 / (z * r4));
        return {Kernel1D::bump(a, 1.0), RadialKernel3D::bump(b, z)};
    }
    case KernelFamily::tabulated:
        break;
    }
    throw Error(ErrorCode::InvalidArgument, "kernel pairs are built for gaussian and bump families only");
}

// --- table I/O ------------------------------------------------------------

KernelTable read_kernel_table(std::istream& in)
{
    KernelTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        double x = 0;
        double y = 0;
        if (!(fields >> x))
            continue;
        std::string extra;
        if (!(fields >> y) || (fields >> extra))
            throw Error(ErrorCode::IoError, "kernel table line " + std::to_string(lineno)
                                                + " must hold exactly two numbers");
        table.abscissa.push_back(x);
        table.values.push_back(y);
    }
    if (table.abscissa.empty())
        throw Error(ErrorCode::IoError, "kernel table is empty");
    return table;
}

void write_kernel_table(std::ostream& out, const KernelTable& table)
{
    out << "# abscissa value\n";
    char buf[64];
    for (std::size_t i = 0; i < table.abscissa.size(); ++i)
    {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", table.abscissa[i], table.values[i]);
        out << buf;
    }
}

namespace
{
template<class K>
KernelTable sample(const K& k, int points)
{
    if (points < 2)
        throw Error(ErrorCode::InvalidArgument, "need at least two sample points");
    KernelTable t;
    const double r = k.support_radius();
    for (int i = 0; i < points; ++i)
    {
        const double x = r * i / (points - 1);
        t.abscissa.push_back(x);
        t.values.push_back(k(x));
    }
    return t;
}
} // namespace

KernelTable sample_kernel(const Kernel1D& k, int points)
{
    return sample(k, points);
}

KernelTable sample_kernel(const RadialKernel3D& k, int points)
{
    return sample(k, points);
}

} // namespace dilab
