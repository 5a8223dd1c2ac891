#include "ringpair/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "ringpair/pump_steady.hpp"

#ifndef RINGPAIR_PRESET_DIR
#define RINGPAIR_PRESET_DIR "presets"
#endif

namespace ringpair::cli
{

namespace fs = std::filesystem;

const char* to_string(Output o)
{
    switch (o)
    {
    case Output::Pump:
        return "pump";
    case Output::Flux:
        return "flux";
    case Output::Spectrum:
        return "spectrum";
    case Output::Jsi:
        return "jsi";
    case Output::Rho:
        return "rho";
    case Output::Validate:
        return "validate";
    }
    return "unknown";
}

namespace
{

std::size_t count_or(const Config& cfg, const std::string& key, std::size_t fallback)
{
    if (!cfg.has(key))
        return fallback;
    const double v = cfg.number(key);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e8)
        throw ConfigError("key '" + key + "' must be a positive integer", cfg.line_of(key));
    return static_cast<std::size_t>(v);
}

void require_ascending(const std::vector<double>& g, const Config& cfg, const std::string& key)
{
    if (g.empty())
        throw ConfigError("grid '" + key + "' is empty", cfg.line_of(key));
    for (std::size_t k = 1; k < g.size(); ++k)
        if (!(g[k] > g[k - 1]))
            throw ConfigError("grid '" + key + "' must be strictly ascending", cfg.line_of(key));
}

// Either an explicit list `key = [...]` or `key_min`, `key_max`, `key_points`
// and optional `key_scale = "log" | "linear"`.
std::vector<double> read_grid(const Config& cfg, const std::string& key)
{
    std::vector<double> g;
    if (cfg.has(key))
    {
        g = cfg.numbers(key);
        require_ascending(g, cfg, key);
        return g;
    }
    if (!cfg.has(key + "_min") && !cfg.has(key + "_max"))
        return g;
    const double lo = cfg.number(key + "_min");
    const double hi = cfg.number(key + "_max");
    const std::size_t n = count_or(cfg, key + "_points", 101);
    const std::string scale = cfg.string_or(key + "_scale", "linear");
    const int line = cfg.line_of(key + "_min");
    if (n == 1)
        return {lo};
    if (!(hi > lo))
        throw ConfigError("'" + key + "_max' must exceed '" + key + "_min'", line);
    if (scale == "log")
    {
        if (!(lo > 0.0))
            throw ConfigError("log grid '" + key + "' needs a positive minimum", line);
        const double a = std::log10(lo), b = std::log10(hi);
        for (std::size_t k = 0; k < n; ++k)
            g.push_back(std::pow(10.0, a + (b - a) * k / (n - 1)));
        g.front() = lo;
        g.back() = hi;
    }
    else if (scale == "linear")
    {
        for (std::size_t k = 0; k < n; ++k)
            g.push_back(lo + (hi - lo) * k / (n - 1));
    }
    else
    {
        throw ConfigError("'" + key + "_scale' must be \"log\" or \"linear\"",
                          cfg.line_of(key + "_scale"));
    }
    return g;
}

RingParams read_params(const Config& cfg)
{
    double gamma_ext = 0.0, gamma_loss = 0.0;
    if (cfg.has("gamma_tot"))
    {
        const double g = cfg.number("gamma_tot");
        const double frac = cfg.number_or("gamma_ext_fraction", 0.5);
        if (!(frac >= 0.0 && frac <= 1.0))
            throw ConfigError("gamma_ext_fraction must lie in [0, 1]",
                              cfg.line_of("gamma_ext_fraction"));
        gamma_ext = frac * g;
        gamma_loss = g - gamma_ext;
    }
    else
    {
        gamma_ext = cfg.number("gamma_ext");
        gamma_loss = cfg.number("gamma_loss");
    }

    double omega_p = 0.0;
    if (cfg.has("omega_p"))
        omega_p = cfg.number("omega_p");
    else
        omega_p = omega_from_wavelength(cfg.number_or("wavelength", 1550e-9));

    double lambda = 0.0;
    if (cfg.has("lambda_fwm"))
    {
        lambda = cfg.number("lambda_fwm");
    }
    else if (cfg.has("n2"))
    {
        MaterialGeometry mat{cfg.number("n_linear"), cfg.number("n2"), cfg.number("ring_length"),
                             cfg.number("cross_section")};
        lambda = estimate_lambda(mat, omega_p).lambda_fwm;
    }
    else
    {
        throw ConfigError("set either lambda_fwm or the material keys n_linear, n2, "
                          "ring_length, cross_section");
    }

    if (cfg.has("eta_spm") || cfg.has("zeta_xpm"))
        return RingParams::explicit_couplings(gamma_ext, gamma_loss, lambda, cfg.number("eta_spm"),
                                              cfg.number("zeta_xpm"), omega_p);
    ThermalOffsets th{cfg.number_or("thermal_eta", 0.0), cfg.number_or("thermal_zeta", 0.0)};
    return RingParams::from_lambda(gamma_ext, gamma_loss, lambda, omega_p, th);
}

std::vector<DetuningChoice> read_detunings(const Config& cfg, const RingParams& p)
{
    std::vector<double> values;
    if (cfg.has("detunings"))
        for (double d : cfg.numbers("detunings"))
            values.push_back(d);
    if (cfg.has("detunings_gamma"))
        for (double d : cfg.numbers("detunings_gamma"))
            values.push_back(d * p.gamma_tot());
    if (cfg.has("detunings_critical"))
        for (double d : cfg.numbers("detunings_critical"))
            values.push_back(d * critical_detuning(p));
    std::vector<DetuningChoice> out;
    for (std::size_t k = 0; k < values.size(); ++k)
        out.push_back({"d" + std::to_string(k), false, values[k]});
    if (cfg.bool_or("optimal_detuning", false))
        out.push_back({"opt", true, 0.0});
    return out;
}

std::optional<FilterModel> read_filter(const Config& cfg, const RingParams& p)
{
    if (!cfg.has("filter_shape") && !cfg.has("filter_width") && !cfg.has("filter_width_gamma"))
        return std::nullopt;
    const std::string shape = cfg.string_or("filter_shape", "rect");
    double dt = 0.0;
    if (cfg.has("coincidence_window"))
        dt = cfg.number("coincidence_window");
    else
        dt = cfg.number("coincidence_window_gamma") / p.gamma_tot();
    if (shape == "rect")
    {
        const double w = cfg.has("filter_width") ? cfg.number("filter_width")
                                                 : cfg.number("filter_width_gamma") * p.gamma_tot();
        return FilterModel::rect(w, dt);
    }
    if (shape == "custom")
        return FilterModel::custom(cfg.numbers("filter_omega"), cfg.numbers("filter_transmission"),
                                   dt);
    throw ConfigError("filter_shape must be \"rect\" or \"custom\"", cfg.line_of("filter_shape"));
}

} // namespace

Scenario scenario_from_config(const Config& cfg)
{
    Scenario sc;
    try
    {
        sc.name = cfg.string_or("name", fs::path(cfg.source()).stem().string());
        sc.description = cfg.string_or("description", "");
        sc.params = read_params(cfg);
        sc.p_in = read_grid(cfg, "p_in");
        for (double p : sc.p_in)
            if (!(p >= 0.0))
                throw ConfigError("input powers must be non-negative", cfg.line_of("p_in"));
        sc.detunings = read_detunings(cfg, sc.params);
        sc.n_p = read_grid(cfg, "n_p");
        sc.spectrum_half_width_gamma = cfg.number_or("spectrum_half_width_gamma", 10.0);
        sc.spectrum_points = count_or(cfg, "spectrum_points", 2001);
        sc.filter = read_filter(cfg, sc.params);
        sc.jsi.n_s = sc.jsi.n_i = count_or(cfg, "jsi_points", 201);
        sc.jsi.half_width_in_gamma = cfg.number_or("jsi_half_width_gamma", 6.0);
        sc.jsi.supersample = count_or(cfg, "jsi_supersample", 10);
        sc.jsi_normalize = cfg.bool_or("jsi_normalize", true);
        sc.jsi_binary = cfg.bool_or("jsi_binary", false);
        sc.validation.samples = count_or(cfg, "validate_samples", 100);
        if (cfg.has("validate_seed"))
            sc.validation.seed = static_cast<std::uint64_t>(cfg.number("validate_seed"));

        for (const std::string& o : cfg.strings("outputs"))
        {
            if (o == "pump")
                sc.outputs.insert(Output::Pump);
            else if (o == "flux")
                sc.outputs.insert(Output::Flux);
            else if (o == "spectrum")
                sc.outputs.insert(Output::Spectrum);
            else if (o == "jsi")
                sc.outputs.insert(Output::Jsi);
            else if (o == "rho")
                sc.outputs.insert(Output::Rho);
            else if (o == "validate")
                sc.outputs.insert(Output::Validate);
            else
                throw ConfigError("unknown output '" + o + "'", cfg.line_of("outputs"));
        }
    }
    catch (const ConfigError&)
    {
        throw;
    }
    catch (const std::exception& e)
    {
        throw ConfigError(e.what());
    }

    if (sc.outputs.empty())
        throw ConfigError("'outputs' must name at least one output", cfg.line_of("outputs"));
    const bool needs_power = sc.outputs.count(Output::Pump) || sc.outputs.count(Output::Flux);
    const bool needs_np = sc.outputs.count(Output::Spectrum) || sc.outputs.count(Output::Jsi)
                          || sc.outputs.count(Output::Rho);
    if (needs_power && sc.p_in.empty())
        throw ConfigError("pump and flux outputs need a power grid (p_in)");
    if ((needs_power || needs_np) && sc.detunings.empty())
        throw ConfigError("set detunings, detunings_gamma, detunings_critical or optimal_detuning");
    if (needs_np && sc.n_p.empty())
        throw ConfigError("spectrum, jsi and rho outputs need photon numbers (n_p)");
    if (sc.outputs.count(Output::Jsi) && !sc.filter)
        throw ConfigError("jsi output needs a filter (filter_width or filter_width_gamma)");

    const auto unused = cfg.unused_keys();
    if (!unused.empty())
        throw ConfigError("unknown or unused key '" + unused.front() + "'", cfg.line_of(unused.front()));
    return sc;
}

std::string resolve_config_path(const std::string& name_or_path)
{
    if (fs::exists(name_or_path))
        return name_or_path;
    const fs::path preset = fs::path(RINGPAIR_PRESET_DIR) / (name_or_path + ".toml");
    if (fs::exists(preset))
        return preset.string();
    throw ConfigError("no config file or preset named '" + name_or_path + "'");
}

std::vector<std::string> list_presets()
{
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(RINGPAIR_PRESET_DIR, ec))
        if (e.path().extension() == ".toml")
            out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ringpair::cli
