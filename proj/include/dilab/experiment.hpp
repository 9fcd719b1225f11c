#pragma once

#include "dilab/kernel.hpp"
#include "dilab/vec.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dilab
{

enum class Experiment
{
    moments,
    coeffs,
    consistency,
    dispersion,
    boost,
    scaling,
    gauge,
    reduce,
    sweep,
    all,
};

std::string_view to_string(Experiment e);
//! Throws ConfigError for unknown names.
Experiment parse_experiment(std::string_view name);
const std::vector<std::string>& experiment_names();

struct ExperimentConfig
{
    Experiment experiment = Experiment::all;

    KernelFamily family = KernelFamily::gaussian;
    double sigma = 0.2;
    double s = 1.0;
    double Z = 1.0;
    double F0 = 1.0;

    double c = 1.0;
    double m = 1.0;
    double e = 0.7;
    double A0 = 0.3;
    Vec3 A{0.2, -0.1, 0.05};

    double k = 0.3;
    double v = 0.6;
    double eps = 0.3;
    int n = 2;

    //! Overrides every row tolerance when positive.
    double tol = 0;
    std::string output_path;
    std::uint64_t seed = 0;
};

//! Keys accepted in config files and as --key flags.
const std::vector<std::string>& config_keys();

//! Flat key=value text; '#' starts a comment. Throws ConfigError on
//! malformed lines and on unknown keys (all of them listed).
std::map<std::string, std::string> read_config_file(std::istream& in);
std::map<std::string, std::string> read_config_file(const std::string& path);

//! Applies key/value pairs on top of cfg; later maps win. Throws ConfigError.
void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& values);

struct ExperimentRow
{
    std::string experiment;
    std::string input;
    double measured = 0;
    double reference = 0;
    double abs_error = 0;
    double tolerance = 0;
    bool pass = false;
};

//! Two-column series written as <experiment>_<tag>.dat.
struct PlotSeries
{
    std::string experiment;
    std::string tag;
    std::vector<std::array<double, 2>> points;
};

struct RunResult
{
    std::vector<ExperimentRow> rows;
    std::vector<PlotSeries> plots;

    bool all_pass() const;
};

/*!
 * Runs the configured experiment; `all` and `sweep` run their parts
 * concurrently and concatenate rows in fixed order. Library errors inside
 * an experiment become failing rows naming the error code.
 */
RunResult run(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
void write_dat(std::ostream& out, const PlotSeries& series);
void write_summary(std::ostream& out, const std::vector<ExperimentRow>& rows);

//! Formats with 17 significant digits.
std::string format_number(double x);

} // namespace dilab
