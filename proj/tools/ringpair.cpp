// Command line front end: run scenarios, validate closed forms, list presets.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ringpair/cli/runner.hpp"

using namespace ringpair::cli;

namespace
{

int with_scenario(const std::string& config, const RunOptions& opts, bool validate_only)
{
    try
    {
        const std::string path = resolve_config_path(config);
        const Scenario sc = scenario_from_config(Config::load(path));
        std::cerr << "scenario '" << sc.name << "' from " << path << " -> " << opts.out_dir << '\n';
        return validate_only ? validate_scenario(sc, opts, std::cerr) : run_scenario(sc, opts, std::cerr);
    }
    catch (const ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Microring photon-pair source simulator"};
    app.require_subcommand(1);

    RunOptions opts;
    std::string format = "csv";
    std::string config;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config, "Config file or preset name")->required();
        sub->add_option("--out-dir", opts.out_dir, "Directory for artifacts")->capture_default_str();
        sub->add_option("--threads", opts.threads, "Worker threads (0 = all cores)")->capture_default_str();
        sub->add_option("--format", format, "Table format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };

    CLI::App* run = app.add_subcommand("run", "Compute every output selected in a scenario");
    add_common(run);
    CLI::App* validate = app.add_subcommand("validate", "Check closed forms against the moment oracle");
    add_common(validate);
    CLI::App* presets = app.add_subcommand("presets", "Bundled scenario presets");
    CLI::App* presets_list = presets->add_subcommand("list", "List preset names");
    presets->require_subcommand(1);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    opts.format = format == "json" ? TableFormat::Json : TableFormat::Csv;
    try
    {
        if (presets_list->parsed())
        {
            for (const std::string& name : list_presets())
                std::cout << name << '\n';
            return kExitOk;
        }
        return with_scenario(config, opts, validate->parsed());
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}
