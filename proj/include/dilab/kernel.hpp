#pragma once

#include "dilab/quadrature.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dilab
{

enum class KernelFamily
{
    gaussian,
    bump,
    tabulated,
};

std::string_view to_string(KernelFamily family);
KernelFamily parse_kernel_family(std::string_view name);

//! Sampled kernel profile with local polynomial interpolation (order 1 or 3).
struct KernelTable
{
    std::vector<double> abscissa;
    std::vector<double> values;
    int order = 3;

    double interpolate(double x) const;
};

/*!
 * Even temporal kernel phi(dt).
 *
 * Values are nonnegative and fall below 1e-16 beyond support_radius().
 * Gaussian kernels are parametrised by their width and zeroth moment F0;
 * bump kernels exp(-1/(1-(t/a)^2)) by their compact radius and zeroth moment.
 */
class Kernel1D
{
  public:
    static Kernel1D gaussian(double sigma, double zeroth_moment = 1.0);
    static Kernel1D bump(double radius, double zeroth_moment = 1.0);
    //! Tabulated profile; a table with only nonnegative abscissae is mirrored,
    //! otherwise eval(x) is the average of the interpolant at x and -x.
    static Kernel1D tabulated(KernelTable table);

    double operator()(double dt) const;

    KernelFamily family() const noexcept { return family_; }
    double support_radius() const noexcept { return support_; }
    //! Gaussian sigma or bump radius; zero for tabulated kernels.
    double width() const noexcept { return width_; }
    double zeroth_moment_parameter() const noexcept { return zeroth_; }

    std::optional<double> closed_form_moment(int n) const;
    std::optional<double> closed_form_fourier(double omega) const;

  private:
    KernelFamily family_ = KernelFamily::gaussian;
    double width_ = 1;
    double zeroth_ = 1;
    double norm_ = 0;
    double support_ = 0;
    std::shared_ptr<const KernelTable> table_;
    bool mirrored_ = false;
};

/*!
 * Isotropic spatial kernel theta(|dr|) in three dimensions.
 *
 * The zeroth 3D moment Z = 4 pi int rho^2 theta d rho is the amplitude
 * parameter for both analytic families.
 */
class RadialKernel3D
{
  public:
    static RadialKernel3D gaussian(double s, double zeroth_moment = 1.0);
    static RadialKernel3D bump(double radius, double zeroth_moment = 1.0);
    //! Tabulated radial profile; abscissae must be nonnegative.
    static RadialKernel3D tabulated(KernelTable table);

    double operator()(double rho) const;

    KernelFamily family() const noexcept { return family_; }
    double support_radius() const noexcept { return support_; }
    double width() const noexcept { return width_; }
    double zeroth_moment_parameter() const noexcept { return zeroth_; }

    std::optional<double> closed_form_moment(int n) const;
    std::optional<double> closed_form_fourier(double kmag) const;

  private:
    KernelFamily family_ = KernelFamily::gaussian;
    double width_ = 1;
    double zeroth_ = 1;
    double norm_ = 0;
    double support_ = 0;
    std::shared_ptr<const KernelTable> table_;
};

//! int tau^n phi(tau) d tau over the real line; closed form for gaussians.
//! Odd n return a value that vanishes up to quadrature error.
double temporal_moment(const Kernel1D& k, int n, const QuadratureSpec& q = {});
//! Same integral, always by quadrature (used to cross-check closed forms).
double temporal_moment_quadrature(const Kernel1D& k, int n, const QuadratureSpec& q = {});

//! 4 pi int rho^n theta(rho) d rho; n = 2 is the zeroth 3D moment.
double radial_moment(const RadialKernel3D& k, int n, const QuadratureSpec& q = {});
double radial_moment_quadrature(const RadialKernel3D& k, int n, const QuadratureSpec& q = {});

//! phi_hat(omega) = int phi(tau) exp(-i omega tau) d tau (real by evenness).
double fourier_1d(const Kernel1D& k, double omega, const QuadratureSpec& q = {});
//! Full complex transform by quadrature over the whole support.
cplx fourier_1d_quadrature(const Kernel1D& k, double omega, const QuadratureSpec& q = {});

//! theta_hat(|k|) = int theta(|d|) exp(-i k.d) d^3 d.
double fourier_radial(const RadialKernel3D& k, double kmag, const QuadratureSpec& q = {});

//! Natural logarithms of the transforms; closed form for gaussians so that
//! ratios close to one keep full relative precision.
double log_fourier_1d(const Kernel1D& k, double omega, const QuadratureSpec& q = {});
double log_fourier_radial(const RadialKernel3D& k, double kmag, const QuadratureSpec& q = {});

struct KernelPair
{
    Kernel1D temporal;
    RadialKernel3D spatial;
};

/*!
 * Builds a kernel pair whose extracted constants are (c^2, m^2 c^4).
 *
 * The temporal kernel has unit zeroth moment and second moment sigma^2.
 * The spatial kernel has Z = 1 - m^2 c^4 sigma^2 / 2 and the width that makes
 * the corrected-factor extraction return c^2. Throws MassTooLarge when Z <= 0.
 */
KernelPair make_kernel_pair(double c, double m, double sigma,
                            KernelFamily family = KernelFamily::gaussian);

//! Ratio int x^n b(x) dx / int b(x) dx over [-1, 1] for the unit bump b.
double bump_moment_ratio_1d(int n);
//! Ratio int_0^1 x^n b dx / int_0^1 x^2 b dx for the unit radial bump.
double bump_moment_ratio_radial(int n);

//! Two-column plain-text table (abscissa, value), '#' starts a comment.
KernelTable read_kernel_table(std::istream& in);
void write_kernel_table(std::ostream& out, const KernelTable& table);
//! Samples a kernel on [0, support_radius] for export.
KernelTable sample_kernel(const Kernel1D& k, int points);
KernelTable sample_kernel(const RadialKernel3D& k, int points);

} // namespace dilab
