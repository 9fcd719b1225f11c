#include "dilab/experiment.hpp"

#include "dilab/coeff.hpp"
#include "dilab/consistency.hpp"
#include "dilab/field.hpp"
#include "dilab/fit.hpp"
#include "dilab/gauge.hpp"
#include "dilab/reduction.hpp"
#include "dilab/relativity.hpp"

#include <algorithm>
#include <charconv>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace dilab
{

namespace
{

const std::vector<std::pair<Experiment, std::string>>& experiment_table()
{
    static const std::vector<std::pair<Experiment, std::string>> table = {
        {Experiment::moments, "moments"},         {Experiment::coeffs, "coeffs"},
        {Experiment::consistency, "consistency"}, {Experiment::dispersion, "dispersion"},
        {Experiment::boost, "boost"},             {Experiment::scaling, "scaling"},
        {Experiment::gauge, "gauge"},             {Experiment::reduce, "reduce"},
        {Experiment::sweep, "sweep"},             {Experiment::all, "all"},
    };
    return table;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text)
{
    double out = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out))
        throw Error(ErrorCode::ConfigError, "value of '" + key + "' is not a finite number: '" + text + "'");
    return out;
}

double parse_positive(const std::string& key, const std::string& text)
{
    const double x = parse_double(key, text);
    if (!(x > 0))
        throw Error(ErrorCode::ConfigError, "'" + key + "' must be positive, got " + text);
    return x;
}

std::string clean_field(std::string s)
{
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '"', '\'');
    return s;
}

std::string fmt_input(const char* format, ...) __attribute__((format(printf, 1, 2)));

std::string fmt_input(const char* format, ...)
{
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// Row builder that applies the global tolerance override.
class Rows
{
  public:
    Rows(std::string experiment, double override_tol) : experiment_(std::move(experiment)), override_(override_tol) {}

    void add(std::string input, double measured, double reference, double tol)
    {
        ExperimentRow row;
        row.experiment = experiment_;
        row.input = clean_field(std::move(input));
        row.measured = measured;
        row.reference = reference;
        row.abs_error = std::abs(measured - reference);
        row.tolerance = override_ > 0 ? override_ : tol;
        row.pass = row.abs_error <= row.tolerance;
        out.rows.push_back(std::move(row));
    }

    void fail(const std::string& input, const Error& err)
    {
        ExperimentRow row;
        row.experiment = experiment_;
        row.input = clean_field(input + " error=" + err.what());
        row.measured = kNaN;
        row.reference = kNaN;
        row.abs_error = kNaN;
        row.tolerance = override_ > 0 ? override_ : kNaN;
        row.pass = false;
        out.rows.push_back(std::move(row));
    }

    //! Runs body; a library error becomes a failing row.
    template<class F>
    void guard(const std::string& input, F&& body)
    {
        try
        {
            body();
        }
        catch (const Error& err)
        {
            fail(input, err);
        }
    }

    void plot(std::string tag, std::vector<std::array<double, 2>> points)
    {
        out.plots.push_back({experiment_, std::move(tag), std::move(points)});
    }

    RunResult out;

  private:
    std::string experiment_;
    double override_;
};

double rel_scale(double reference)
{
    return std::max(1.0, std::abs(reference));
}

Kernel1D temporal_kernel(const ExperimentConfig& cfg)
{
    return cfg.family == KernelFamily::bump ? Kernel1D::bump(cfg.sigma, cfg.F0) : Kernel1D::gaussian(cfg.sigma, cfg.F0);
}

RadialKernel3D spatial_kernel(const ExperimentConfig& cfg)
{
    return cfg.family == KernelFamily::bump ? RadialKernel3D::bump(cfg.s, cfg.Z) : RadialKernel3D::gaussian(cfg.s, cfg.Z);
}

RunResult run_moments(const ExperimentConfig& cfg)
{
    Rows rows("moments", cfg.tol);
    const std::string family(to_string(cfg.family));
    QuadratureSpec reference_q;
    reference_q.scheme = QuadratureScheme::tanh_sinh;

    rows.guard("family=" + family, [&] {
        const Kernel1D phi = temporal_kernel(cfg);
        const RadialKernel3D theta = spatial_kernel(cfg);
        for (int n : {0, 2, 4})
        {
            const double ref = phi.closed_form_moment(n).value_or(temporal_moment_quadrature(phi, n, reference_q));
            rows.add(fmt_input("temporal family=%s sigma=%g F0=%g n=%d", family.c_str(), cfg.sigma, cfg.F0, n),
                     temporal_moment_quadrature(phi, n), ref, 1e-10 * rel_scale(ref));
        }
        for (int n : {1, 3})
        {
            rows.add(fmt_input("temporal family=%s sigma=%g F0=%g n=%d", family.c_str(), cfg.sigma, cfg.F0, n),
                     temporal_moment_quadrature(phi, n), 0.0, 1e-13);
        }
        for (int n : {2, 4})
        {
            const double ref = theta.closed_form_moment(n).value_or(radial_moment_quadrature(theta, n, reference_q));
            rows.add(fmt_input("radial family=%s s=%g Z=%g n=%d", family.c_str(), cfg.s, cfg.Z, n),
                     radial_moment_quadrature(theta, n), ref, 1e-10 * rel_scale(ref));
        }
        const double omega = 1 / cfg.sigma;
        const double ft_ref = phi.closed_form_fourier(omega).value_or(fourier_1d_quadrature(phi, omega, reference_q).real());
        rows.add(fmt_input("fourier_1d family=%s sigma=%g omega=%g", family.c_str(), cfg.sigma, omega),
                 fourier_1d_quadrature(phi, omega).real(), ft_ref, 1e-10 * rel_scale(ft_ref));
        const double kmag = 1 / cfg.s;
        const double fr_ref = theta.closed_form_fourier(kmag).value_or(fourier_radial(theta, kmag, reference_q));
        const double fr = 4 * M_PI / kmag
                          * integrate([&](double rho) { return rho * std::sin(kmag * rho) * theta(rho); }, 0.0,
                                      theta.support_radius(), QuadratureSpec{});
        rows.add(fmt_input("fourier_radial family=%s s=%g k=%g", family.c_str(), cfg.s, kmag), fr, fr_ref,
                 1e-10 * rel_scale(fr_ref));
    });
    return std::move(rows.out);
}

void coefficient_rows(Rows& rows, double c, double m, double sigma, KernelFamily family)
{
    const std::string input = fmt_input("family=%s c=%g m=%g sigma=%g", std::string(to_string(family)).c_str(), c, m, sigma);
    rows.guard(input, [&] {
        const KernelPair pair = make_kernel_pair(c, m, sigma, family);
        const ParticleCoefficients coeffs = extract_coefficients(pair.temporal, pair.spatial);
        const double c2 = c * c;
        const double m2c4 = m * m * c2 * c2;
        rows.add(input + " quantity=c2", coeffs.c2, c2, 1e-10 * c2);
        rows.add(input + " quantity=m2c4", coeffs.m2c4, m2c4, 1e-10 * std::max(m2c4, 1.0));
    });
}

RunResult run_coeffs(const ExperimentConfig& cfg)
{
    Rows rows("coeffs", cfg.tol);
    coefficient_rows(rows, cfg.c, cfg.m, cfg.sigma, cfg.family);
    const std::string input = fmt_input("family=%s c=%g m=%g sigma=%g quantity=literal_over_corrected",
                                        std::string(to_string(cfg.family)).c_str(), cfg.c, cfg.m, cfg.sigma);
    rows.guard(input, [&] {
        const KernelPair pair = make_kernel_pair(cfg.c, cfg.m, cfg.sigma, cfg.family);
        const double lit = extract_c2(pair.temporal, pair.spatial, FactorMode::paper_literal);
        const double cor = extract_c2(pair.temporal, pair.spatial, FactorMode::corrected);
        rows.add(input, lit / cor, 3.0, 1e-12);
    });
    return std::move(rows.out);
}

RunResult run_consistency(const ExperimentConfig& cfg)
{
    Rows rows("consistency", cfg.tol);
    const Vec3 r{0.3, -0.2, 0.1};
    const double t = 0.4;
    const std::string base = fmt_input("family=%s c=%g m=%g sigma=%g k=%g",
                                       std::string(to_string(cfg.family)).c_str(), cfg.c, cfg.m, cfg.sigma, cfg.k);
    rows.guard(base, [&] {
        const KernelPair pair = make_kernel_pair(cfg.c, cfg.m, cfg.sigma, cfg.family);
        const ParticleCoefficients coeffs = ParticleCoefficients::from_physical(cfg.c, cfg.m);
        const TestField psi = TestField::on_shell(coeffs, {cfg.k, 0.1, -0.05});

        const cplx pt = p_t_quadrature(psi, pair.temporal, r, t);
        const cplx pt_ref = p_t_plane_wave(psi, pair.temporal, r, t);
        rows.add(base + " quantity=p_t_real", pt.real(), pt_ref.real(), 1e-10);
        rows.add(base + " quantity=p_t_imag", pt.imag(), pt_ref.imag(), 1e-10);
        const cplx pr = p_r_quadrature(psi, pair.spatial, r, t);
        const cplx pr_ref = p_r_plane_wave(psi, pair.spatial, r, t);
        rows.add(base + " quantity=p_r_real", pr.real(), pr_ref.real(), 1e-10);
        rows.add(base + " quantity=p_r_imag", pr.imag(), pr_ref.imag(), 1e-10);

        // A quadratic field makes the second-order spatial expansion exact.
        const PolynomialField x2 = PolynomialField::monomial("x2");
        const ConsistencyReport rep = expansion_values(x2, pair.temporal, pair.spatial, r, t);
        const double expected = rep.p_r_expansion_corrected.real();
        rows.add(base + " field=x2 quantity=p_r_vs_corrected", rep.p_r.real(), expected, 1e-8 * rel_scale(expected));

        const double z = radial_moment(pair.spatial, 2);
        const double measured_lap_coeff = (rep.p_r.real() - z * x2.value(r, t).real()) / (0.5 * x2.laplacian(r, t).real());
        const double literal_lap_coeff = radial_moment(pair.spatial, 4);
        rows.add(base + " field=x2 quantity=literal_over_measured_laplacian_coefficient",
                 literal_lap_coeff / measured_lap_coeff, 3.0, 1e-6);
    });
    return std::move(rows.out);
}

RunResult run_dispersion(const ExperimentConfig& cfg)
{
    Rows rows("dispersion", cfg.tol);
    const std::vector<double> sigmas{0.4, 0.2, 0.1, 0.05};
    const std::string family(to_string(cfg.family));
    const std::string input = fmt_input("family=%s c=%g m=%g k=%g sigma=0.4..0.05", family.c_str(), cfg.c, cfg.m, cfg.k);
    rows.guard(input, [&] {
        const ConvergenceStudy study = convergence_study(cfg.c, cfg.m, sigmas, cfg.k, cfg.family);
        std::vector<std::array<double, 2>> pts;
        double worst = 0;
        for (const auto& p : study.points)
        {
            pts.push_back({p.scale, p.error});
            worst = std::max(worst, p.error);
        }
        rows.plot("convergence", std::move(pts));
        if (study.exact)
            rows.add(input + " quantity=max_error exact", worst, 0.0, kMachineFloor);
        else
            rows.add(input + " quantity=order", study.fit.slope, 2.0, 0.2);
    });

    const std::string massless = fmt_input("family=gaussian c=%g m=0 k=%g sigma=0.4..0.05", cfg.c, cfg.k);
    rows.guard(massless, [&] {
        const ConvergenceStudy study = convergence_study(cfg.c, 0.0, sigmas, cfg.k, KernelFamily::gaussian);
        double worst = 0;
        for (const auto& p : study.points)
            worst = std::max(worst, p.error);
        rows.add(massless + (study.exact ? " quantity=max_error exact" : " quantity=max_error"), worst, 0.0,
                 kMachineFloor);
    });

    const std::string nonrel = fmt_input("c=%g m=%g p=0.02..0.2 quantity=nonrel_gap_order", cfg.c, cfg.m);
    rows.guard(nonrel, [&] {
        const ParticleCoefficients coeffs = ParticleCoefficients::from_physical(cfg.c, cfg.m);
        std::vector<ScaleError> points;
        std::vector<std::array<double, 2>> pts;
        for (int i = 0; i < 10; ++i)
        {
            const double p = 0.02 * std::pow(10.0, i / 9.0) * cfg.m * cfg.c;
            const double gap = nonrel_limit_gap(coeffs, {p, 0, 0});
            points.push_back({p, gap});
            pts.push_back({p, gap});
        }
        rows.plot("nonrel_gap", std::move(pts));
        rows.add(nonrel, fit_order(points).slope, 4.0, 0.1);
    });
    return std::move(rows.out);
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

RunResult run_boost(const ExperimentConfig& cfg)
{
    Rows rows("boost", cfg.tol);
    const std::string base = fmt_input("v=%g c=%g", cfg.v, cfg.c);
    rows.guard(base, [&] {
        const Boost b = solve_boost(cfg.v, cfg.c);
        const BoostConditions cond = boost_conditions(b);
        rows.add(base + " quantity=cross_condition", cond.cross, 0.0, 1e-12);
        rows.add(base + " quantity=time_form", cond.time_form, 1.0, 1e-12);
        rows.add(base + " quantity=space_form", cond.space_form, 1.0, 1e-12);
        rows.add(base + " quantity=determinant", b.determinant(), 1.0, 1e-12);

        const double v2 = 0.3 * cfg.c;
        const Boost composed = compose(b, solve_boost(v2, cfg.c));
        const Boost direct = solve_boost((cfg.v + v2) / (1 + cfg.v * v2 / (cfg.c * cfg.c)), cfg.c);
        const double dev = std::max({std::abs(composed.a11 - direct.a11), std::abs(composed.a12 - direct.a12),
                                     std::abs(composed.a21 - direct.a21), std::abs(composed.a22 - direct.a22)});
        rows.add(base + fmt_input(" v2=%g quantity=composition", v2), dev, 0.0, 1e-10);

        const ParticleCoefficients coeffs = ParticleCoefficients::from_physical(cfg.c, cfg.m);
        const Vec3 k{cfg.k, 0.2, 0};
        const TestField psi = TestField::on_shell(coeffs, k);
        rows.add(base + " quantity=form_invariance_lorentz", std::abs(form_invariance_residual(b, coeffs, psi)), 0.0,
                 1e-10);

        // Galilean frame: omega' = omega + v k_x, k' = k, so the residual is omega^2 - omega'^2.
        const double omega = psi.terms()[0].omega;
        const double omega_g = omega + cfg.v * k.x;
        rows.add(base + " quantity=form_invariance_galilean",
                 std::abs(form_invariance_residual(Boost::galilean(cfg.v, cfg.c), coeffs, psi)),
                 std::abs(omega_g * omega_g - omega * omega), 1e-10);

        auto rng = seeded(cfg.seed, 5);
        std::uniform_real_distribution<double> mass(0.0, 2.0);
        std::normal_distribution<double> mom(0.0, 1.0);
        double worst = 0;
        for (int i = 0; i < 50; ++i)
        {
            const double mi = mass(rng);
            const Vec3 p{mom(rng), mom(rng), mom(rng)};
            const ParticleCoefficients ci = ParticleCoefficients::from_physical(cfg.c, mi);
            const OperatorEigenpair e{dispersion_energy(ci, p), p};
            const OperatorEigenpair e2 = transform_eigenpair(b, e);
            const double before = e.E * e.E - cfg.c * cfg.c * norm2(e.p);
            const double after = e2.E * e2.E - cfg.c * cfg.c * norm2(e2.p);
            worst = std::max(worst, std::abs(after - before));
        }
        rows.add(base + fmt_input(" seed=%llu pairs=50 quantity=invariant_mass_drift",
                                  static_cast<unsigned long long>(cfg.seed)),
                 worst, 0.0, 1e-10);
    });
    return std::move(rows.out);
}

RunResult run_scaling(const ExperimentConfig& cfg)
{
    Rows rows("scaling", cfg.tol);
    const std::string family(to_string(cfg.family));
    const std::string base = fmt_input("family=%s sigma=%g n=%d eps=%g", family.c_str(), cfg.sigma, cfg.n, cfg.eps);
    rows.guard(base, [&] {
        const Kernel1D phi = temporal_kernel(cfg);
        const ScaledMomentCheck check = scaled_moment_check(phi, cfg.n, cfg.eps);
        rows.add(base + " quantity=scaled_moment", check.lhs, check.rhs, 1e-9 * rel_scale(check.rhs));
    });
    const std::string series = fmt_input("n=%d eps=%g K=60 quantity=appendix_series", cfg.n, cfg.eps);
    rows.guard(series, [&] {
        std::vector<std::array<double, 2>> pts;
        for (int k = 0; k <= 60; ++k)
            pts.push_back({static_cast<double>(k), std::abs(appendix_series(cfg.n, cfg.eps, k) - 1)});
        rows.plot("series", std::move(pts));
        rows.add(series, appendix_series(cfg.n, cfg.eps, 60), 1.0, 1e-12);
    });
    return std::move(rows.out);
}

RunResult run_gauge(const ExperimentConfig& cfg)
{
    Rows rows("gauge", cfg.tol);
    const Vec3 r{0.3, -0.2, 0.1};
    const double t = 0.4;
    const std::string base = fmt_input("c=%g m=%g sigma=%g e=%g A0=%g A=(%g;%g;%g)", cfg.c, cfg.m, cfg.sigma, cfg.e,
                                       cfg.A0, cfg.A.x, cfg.A.y, cfg.A.z);
    rows.guard(base, [&] {
        const InternalKernelSet ks = make_gauge_kernel_set(cfg.c, cfg.m, cfg.sigma, cfg.A0, cfg.A);
        const QRCoefficients qr = qr_coefficients(ks);
        rows.add(base + " quantity=normalized_constraint", normalized_constraint_residual(qr, cfg.c) / (qr.Q1 * qr.Q1),
                 0.0, 1e-9);
        const U1Reduction red = u1_reduce(qr, cfg.e, cfg.c);
        rows.add(base + " quantity=A0", red.potential.A0, cfg.A0, 1e-9);
        rows.add(base + " quantity=A_deviation", norm(red.potential.A - cfg.A), 0.0, 1e-9);
        rows.add(base + " quantity=c2", red.coeffs.c2, cfg.c * cfg.c, 1e-9 * cfg.c * cfg.c);
        const double m2c4 = std::pow(cfg.m * cfg.c * cfg.c, 2);
        rows.add(base + " quantity=m2c4", red.coeffs.m2c4, m2c4, 1e-9 * std::max(1.0, m2c4));

        const TestField wave = gauge_shifted_wave(red.potential, red.coeffs, {0.5, 0.2, -0.3});
        rows.add(base + " quantity=minimal_coupling_shifted_wave",
                 std::abs(minimal_coupling_residual(red.potential, red.coeffs, wave, r, t)), 0.0, 1e-10);

        GaugePotential neutral = red.potential;
        neutral.e = 0;
        const TestField probe({PlaneWave{{0.7, 0.2}, {0.4, -0.3, 0.6}, 1.3}, PlaneWave{{-0.1, 0.5}, {0.1, 0.9, -0.2}, 0.8}});
        rows.add(base + " e=0 quantity=minimal_coupling_minus_kg",
                 std::abs(minimal_coupling_residual(neutral, red.coeffs, probe, r, t)
                          - kg_residual(probe, red.coeffs, r, t)),
                 0.0, 1e-12);
    });

    const std::string conv = base + " sigma=0.2..0.05 quantity=expansion_order";
    rows.guard(conv, [&] {
        const GaugePotential gp{cfg.A0, cfg.A, cfg.e};
        const ParticleCoefficients coeffs = ParticleCoefficients::from_physical(cfg.c, cfg.m);
        const TestField wave = gauge_shifted_wave(gp, coeffs, {0.5, 0.2, -0.3});
        const std::vector<double> sigmas{0.2, 0.1, 0.05};
        std::vector<std::future<double>> jobs;
        for (double s : sigmas)
        {
            jobs.push_back(std::async(std::launch::async, [&, s] {
                const InternalKernelSet ks = make_gauge_kernel_set(cfg.c, cfg.m, s, cfg.A0, cfg.A);
                return std::abs(expansion32_residual(ks, cfg.e, wave, r, t));
            }));
        }
        std::vector<ScaleError> points;
        std::vector<std::array<double, 2>> pts;
        for (std::size_t i = 0; i < sigmas.size(); ++i)
        {
            const double err = jobs[i].get();
            points.push_back({sigmas[i], err});
            pts.push_back({sigmas[i], err});
        }
        rows.plot("expansion32", std::move(pts));
        rows.add(conv, fit_order(points).slope, 2.0, 0.3);
    });
    return std::move(rows.out);
}

RunResult run_reduce(const ExperimentConfig& cfg)
{
    Rows rows("reduce", cfg.tol);
    const std::string dirac = fmt_input("m=%g seed=%llu spinors=20 quantity=dirac_max_residual", cfg.m,
                                        static_cast<unsigned long long>(cfg.seed));
    rows.guard(dirac, [&] {
        auto rng = seeded(cfg.seed, 9);
        std::normal_distribution<double> g(0.0, 1.0);
        double worst = 0;
        for (int i = 0; i < 20; ++i)
        {
            const Spinor eta{cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
            const Real4 k3{0, g(rng), g(rng), g(rng)};
            const double k0 = std::sqrt(k3[1] * k3[1] + k3[2] * k3[2] + k3[3] * k3[3] + cfg.m * cfg.m);
            const DiracResiduals res = dirac_residuals(dirac_build(eta, {k0, k3[1], k3[2], k3[3]}, cfg.m));
            worst = std::max({worst, max_abs(res.first), max_abs(res.second), max_abs(res.kg)});
        }
        rows.add(dirac, worst, 0.0, 1e-12);
    });

    const std::string vacuum = fmt_input("c=%g k=%g quantity=maxwell_vacuum_max_residual", cfg.c, cfg.k);
    rows.guard(vacuum, [&] {
        const FourPotential A = transverse_wave({0.8, -0.3}, cfg.k, cfg.c * cfg.k, cfg.c);
        const MaxwellResiduals res = maxwell_residuals(A, {}, cfg.c);
        rows.add(vacuum, std::max({max_abs(res.kg), max_abs(res.vec_a), max_abs(res.inhomogeneous), max_abs(res.bianchi)}),
                 0.0, 1e-12);
    });

    const std::string bianchi = fmt_input("c=%g seed=%llu potentials=100 quantity=bianchi_max", cfg.c,
                                          static_cast<unsigned long long>(cfg.seed));
    rows.guard(bianchi, [&] {
        auto rng = seeded(cfg.seed, 11);
        std::normal_distribution<double> g(0.0, 1.0);
        double worst = 0;
        for (int i = 0; i < 100; ++i)
        {
            FourPotential A;
            for (int j = 0; j < 2; ++j)
            {
                PotentialTerm term;
                for (int mu = 0; mu < 4; ++mu)
                {
                    term.a[mu] = cplx(g(rng), g(rng));
                    term.k[mu] = g(rng);
                }
                A.terms.push_back(term);
            }
            worst = std::max(worst, max_abs(maxwell_residuals(A, {}, cfg.c).bianchi));
        }
        rows.add(bianchi, worst, 0.0, 1e-12);
    });

    const std::string sourced = fmt_input("c=%g quantity=maxwell_sourced_inhomogeneous", cfg.c);
    rows.guard(sourced, [&] {
        PotentialTerm term;
        term.a = {cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.5, 0), cplx(0.1, -0.6)};
        term.k = {0.5, 0.3, 0, 0.4};
        const FourPotential A{{term}};
        const MaxwellResiduals res = maxwell_residuals(A, divergence_source(A), cfg.c);
        rows.add(sourced, std::max(max_abs(res.inhomogeneous), max_abs(res.vec_a)), 0.0, 1e-12);
    });
    return std::move(rows.out);
}

RunResult run_sweep(const ExperimentConfig& cfg)
{
    std::vector<std::future<RunResult>> jobs;
    for (double c : {0.5, 1.0, 2.0})
    {
        for (double m : {0.0, 1.0})
        {
            for (double sigma : {0.1, 0.2})
            {
                jobs.push_back(std::async(std::launch::async, [&cfg, c, m, sigma] {
                    Rows rows("sweep", cfg.tol);
                    coefficient_rows(rows, c, m, sigma, cfg.family);
                    return std::move(rows.out);
                }));
            }
        }
    }
    RunResult out;
    for (auto& job : jobs)
    {
        RunResult part = job.get();
        out.rows.insert(out.rows.end(), part.rows.begin(), part.rows.end());
    }
    return out;
}

using Runner = RunResult (*)(const ExperimentConfig&);

Runner runner_for(Experiment e)
{
    switch (e)
    {
    case Experiment::moments: return run_moments;
    case Experiment::coeffs: return run_coeffs;
    case Experiment::consistency: return run_consistency;
    case Experiment::dispersion: return run_dispersion;
    case Experiment::boost: return run_boost;
    case Experiment::scaling: return run_scaling;
    case Experiment::gauge: return run_gauge;
    case Experiment::reduce: return run_reduce;
    case Experiment::sweep: return run_sweep;
    case Experiment::all: break;
    }
    return nullptr;
}

} // namespace

std::string_view to_string(Experiment e)
{
    for (const auto& [value, name] : experiment_table())
    {
        if (value == e)
            return name;
    }
    return "unknown";
}

Experiment parse_experiment(std::string_view name)
{
    for (const auto& [value, n] : experiment_table())
    {
        if (n == name)
            return value;
    }
    throw Error(ErrorCode::ConfigError, "unknown experiment '" + std::string(name) + "'");
}

const std::vector<std::string>& experiment_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& entry : experiment_table())
            out.push_back(entry.second);
        return out;
    }();
    return names;
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = {"experiment", "family", "sigma", "s",  "Z",  "F0", "c",
                                                  "m",          "e",      "A0",    "Ax", "Ay", "Az", "k",
                                                  "v",          "eps",    "n",     "tol", "out"};
    return keys;
}

std::map<std::string, std::string> read_config_file(std::istream& in)
{
    std::map<std::string, std::string> values;
    std::vector<std::string> unknown;
    const auto& keys = config_keys();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string body = trim(line);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty())
            throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": empty key");
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            unknown.push_back(key);
        values[key] = value;
    }
    if (!unknown.empty())
    {
        std::string list;
        for (const auto& k : unknown)
            list += (list.empty() ? "" : ", ") + k;
        throw Error(ErrorCode::ConfigError, "unknown config keys: " + list);
    }
    return values;
}

std::map<std::string, std::string> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open config file '" + path + "'");
    return read_config_file(in);
}

void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& values)
{
    std::vector<std::string> unknown;
    for (const auto& [key, value] : values)
    {
        if (key == "experiment")
            cfg.experiment = parse_experiment(value);
        else if (key == "family")
        {
            try
            {
                cfg.family = parse_kernel_family(value);
            }
            catch (const Error& err)
            {
                throw Error(ErrorCode::ConfigError, err.what());
            }
            if (cfg.family == KernelFamily::tabulated)
                throw Error(ErrorCode::ConfigError, "experiments build gaussian or bump kernels, not tabulated");
        }
        else if (key == "sigma")
            cfg.sigma = parse_positive(key, value);
        else if (key == "s")
            cfg.s = parse_positive(key, value);
        else if (key == "Z")
            cfg.Z = parse_positive(key, value);
        else if (key == "F0")
            cfg.F0 = parse_positive(key, value);
        else if (key == "c")
            cfg.c = parse_positive(key, value);
        else if (key == "m")
            cfg.m = parse_double(key, value);
        else if (key == "e")
            cfg.e = parse_double(key, value);
        else if (key == "A0")
            cfg.A0 = parse_double(key, value);
        else if (key == "Ax")
            cfg.A.x = parse_double(key, value);
        else if (key == "Ay")
            cfg.A.y = parse_double(key, value);
        else if (key == "Az")
            cfg.A.z = parse_double(key, value);
        else if (key == "k")
            cfg.k = parse_double(key, value);
        else if (key == "v")
            cfg.v = parse_double(key, value);
        else if (key == "eps")
            cfg.eps = parse_double(key, value);
        else if (key == "n")
        {
            const double n = parse_double(key, value);
            if (n != std::floor(n) || n < 0 || n > 6)
                throw Error(ErrorCode::ConfigError, "'n' must be an integer in [0, 6], got " + value);
            cfg.n = static_cast<int>(n);
        }
        else if (key == "tol")
            cfg.tol = parse_positive(key, value);
        else if (key == "out")
            cfg.output_path = value;
        else
            unknown.push_back(key);
    }
    if (!unknown.empty())
    {
        std::string list;
        for (const auto& k : unknown)
            list += (list.empty() ? "" : ", ") + k;
        throw Error(ErrorCode::ConfigError, "unknown config keys: " + list);
    }
    if (cfg.m < 0)
        throw Error(ErrorCode::ConfigError, "'m' must be nonnegative");
}

bool RunResult::all_pass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const ExperimentRow& r) { return r.pass; });
}

RunResult run(const ExperimentConfig& cfg)
{
    if (cfg.experiment != Experiment::all)
        return runner_for(cfg.experiment)(cfg);

    std::vector<std::future<RunResult>> jobs;
    for (const auto& [e, name] : experiment_table())
    {
        if (e == Experiment::all)
            continue;
        jobs.push_back(std::async(std::launch::async, runner_for(e), std::cref(cfg)));
    }
    RunResult out;
    for (auto& job : jobs)
    {
        RunResult part = job.get();
        out.rows.insert(out.rows.end(), part.rows.begin(), part.rows.end());
        out.plots.insert(out.plots.end(), part.plots.begin(), part.plots.end());
    }
    return out;
}

std::string format_number(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows)
{
    out << "experiment,input,measured,reference,abs_error,tolerance,pass\n";
    for (const auto& r : rows)
    {
        out << r.experiment << ',' << r.input << ',' << format_number(r.measured) << ','
            << format_number(r.reference) << ',' << format_number(r.abs_error) << ',' << format_number(r.tolerance)
            << ',' << (r.pass ? "true" : "false") << '\n';
    }
}

void write_dat(std::ostream& out, const PlotSeries& series)
{
    out << "# " << series.experiment << ' ' << series.tag << '\n';
    for (const auto& p : series.points)
        out << format_number(p[0]) << ' ' << format_number(p[1]) << '\n';
}

void write_summary(std::ostream& out, const std::vector<ExperimentRow>& rows)
{
    std::size_t passed = 0;
    for (const auto& r : rows)
    {
        char line[96];
        std::snprintf(line, sizeof line, "%-12s %-4s err=%-12.3e tol=%-10.3e ", r.experiment.c_str(),
                      r.pass ? "ok" : "FAIL", r.abs_error, r.tolerance);
        out << line << r.input << '\n';
        passed += r.pass ? 1 : 0;
    }
    out << passed << '/' << rows.size() << " checks passed\n";
}

} // namespace dilab
