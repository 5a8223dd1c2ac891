#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ringpair/cli/config.hpp"
#include "ringpair/jsi.hpp"
#include "ringpair/oracle.hpp"
#include "ringpair/params.hpp"

namespace ringpair::cli
{

enum class Output
{
    Pump,
    Flux,
    Spectrum,
    Jsi,
    Rho,
    Validate
};

const char* to_string(Output o);

/// A detuning choice with a short tag used in file names.
struct DetuningChoice
{
    std::string tag;
    bool optimal = false;
    double detuning = 0.0; // rad/s, unused when optimal
};

struct Scenario
{
    std::string name;
    std::string description;
    RingParams params = RingParams::from_lambda(1.0, 0.0, 1.0, 1.0);

    std::vector<double> p_in;       // W, ascending
    std::vector<DetuningChoice> detunings;
    std::vector<double> n_p;        // operating points for spectra and JSI, ascending

    double spectrum_half_width_gamma = 10.0;
    std::size_t spectrum_points = 2001;

    std::optional<FilterModel> filter;
    JsiOptions jsi;
    bool jsi_normalize = true;
    bool jsi_binary = false;

    ValidationOptions validation;
    std::set<Output> outputs;
};

/// Builds and validates a scenario; every problem is reported as a
/// ConfigError carrying the offending line.
Scenario scenario_from_config(const Config& cfg);

/// Resolves a preset name (fig2 ... fig8, validate) or a path to a file.
std::string resolve_config_path(const std::string& name_or_path);
std::vector<std::string> list_presets();

} // namespace ringpair::cli
