// dilab: runs the verification experiments and writes CSV results.

#include "dilab/error.hpp"
#include "dilab/experiment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace
{

std::uint64_t seed_from_env()
{
    const char* raw = std::getenv("DILAB_SEED");
    if (raw == nullptr || *raw == '\0')
        return 0;
    try
    {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size())
            throw std::invalid_argument(raw);
        return v;
    }
    catch (const std::exception&)
    {
        throw dilab::Error(dilab::ErrorCode::ConfigError, std::string("DILAB_SEED is not an unsigned integer: ") + raw);
    }
}

void write_outputs(const dilab::RunResult& result, const std::string& out_path)
{
    namespace fs = std::filesystem;
    if (out_path.empty())
    {
        dilab::write_csv(std::cout, result.rows);
        dilab::write_summary(std::cerr, result.rows);
        return;
    }
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv)
        throw dilab::Error(dilab::ErrorCode::IoError, "cannot write '" + out_path + "'");
    dilab::write_csv(csv, result.rows);
    if (!csv.flush())
        throw dilab::Error(dilab::ErrorCode::IoError, "write to '" + out_path + "' failed");

    const fs::path dir = fs::path(out_path).parent_path();
    for (const auto& series : result.plots)
    {
        const fs::path dat = dir / (series.experiment + "_" + series.tag + ".dat");
        std::ofstream f(dat, std::ios::binary);
        if (!f)
            throw dilab::Error(dilab::ErrorCode::IoError, "cannot write '" + dat.string() + "'");
        dilab::write_dat(f, series);
    }
    dilab::write_summary(std::cout, result.rows);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Kernel-moment verification laboratory"};
    app.set_help_flag("-h,--help", "Show usage");

    std::string subcommand;
    std::string config_path;
    std::optional<std::string> out_path;
    std::optional<std::string> tol;
    app.add_option("subcommand", subcommand, "Experiment to run")
        ->required()
        ->check(CLI::IsMember(dilab::experiment_names()));
    app.add_option("--config", config_path, "Flat key=value config file");
    app.add_option("--out", out_path, "CSV output path; .dat files go beside it");
    app.add_option("--tol", tol, "Tolerance applied to every check");

    std::map<std::string, std::optional<std::string>> flags;
    for (const auto& key : dilab::config_keys())
    {
        if (key == "experiment" || key == "out" || key == "tol")
            continue;
        app.add_option("--" + key, flags[key], "Config key " + key);
    }

    CLI11_PARSE(app, argc, argv);

    try
    {
        std::map<std::string, std::string> values;
        if (!config_path.empty())
            values = dilab::read_config_file(config_path);
        for (const auto& [key, value] : flags)
        {
            if (value)
                values[key] = *value;
        }
        if (out_path)
            values["out"] = *out_path;
        if (tol)
            values["tol"] = *tol;
        values["experiment"] = subcommand;

        dilab::ExperimentConfig cfg;
        dilab::apply_config(cfg, values);
        cfg.seed = seed_from_env();

        const dilab::RunResult result = dilab::run(cfg);
        write_outputs(result, cfg.output_path);
        return result.all_pass() ? 0 : 1;
    }
    catch (const dilab::Error& err)
    {
        std::cerr << "dilab: " << err.what() << '\n';
        return 2;
    }
}
