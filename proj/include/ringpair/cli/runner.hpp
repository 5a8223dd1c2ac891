#pragma once

#include <ostream>
#include <string>

#include "ringpair/cli/scenario.hpp"
#include "ringpair/cli/writers.hpp"

namespace ringpair::cli
{

enum ExitCode : int
{
    kExitOk = 0,
    kExitConfigError = 1,
    kExitValidationFailure = 2
};

struct RunOptions
{
    std::string out_dir = "out";
    unsigned threads = 1;
    TableFormat format = TableFormat::Csv;
};

/// Writes every selected artifact for the scenario. Returns kExitOk, or
/// kExitValidationFailure when a validation output breaches its tolerances.
int run_scenario(const Scenario& sc, const RunOptions& opts, std::ostream& log);

/// Runs only the oracle validation of the scenario.
int validate_scenario(const Scenario& sc, const RunOptions& opts, std::ostream& log);

nlohmann::ordered_json params_json(const RingParams& p);

} // namespace ringpair::cli
