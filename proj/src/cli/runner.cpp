#include "ringpair/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "ringpair/observables.hpp"
#include "ringpair/pump_steady.hpp"

namespace ringpair::cli
{

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

nlohmann::ordered_json params_json(const RingParams& p)
{
    ojson j;
    j["gamma_ext"] = p.gamma_ext();
    j["gamma_loss"] = p.gamma_loss();
    j["gamma_tot"] = p.gamma_tot();
    j["lambda_fwm"] = p.lambda_fwm();
    j["eta_spm"] = p.eta_spm();
    j["zeta_xpm"] = p.zeta_xpm();
    j["omega_p"] = p.omega_p();
    j["quality_factor"] = quality_factor(p);
    j["critical_detuning"] = critical_detuning(p);
    j["units"] = "angular rates in 1/s, powers in W";
    return j;
}

namespace
{

double detuning_for(const DetuningChoice& d, double n_p, const RingParams& p)
{
    return d.optimal ? optimal_detuning(n_p, p) : d.detuning;
}

ojson header(const Scenario& sc, const char* what)
{
    ojson j;
    j["scenario"] = sc.name;
    if (!sc.description.empty())
        j["description"] = sc.description;
    j["output"] = what;
    j["params"] = params_json(sc.params);
    return j;
}

void run_pump(const Scenario& sc, const RunOptions& opts, std::ostream& log)
{
    const RingParams& p = sc.params;
    ojson meta = header(sc, "pump");
    meta["columns"] = {"p_in_W", "n_p", "stable", "branch"};
    ojson entries = ojson::array();
    for (const DetuningChoice& d : sc.detunings)
    {
        Table t;
        t.columns = {"p_in_W", "n_p", "stable", "branch"};
        ojson e;
        e["tag"] = d.tag;
        if (d.optimal)
        {
            e["detuning"] = "optimal (2 eta N_P, varies with power)";
            for (double pin : sc.p_in)
                for (const PumpSolution& s : solve_steady_state(optimal_drive(pin, p), p))
                    t.rows.push_back({pin, s.n_p, std::string(s.stability == Stability::Stable ? "1" : "0"),
                                      std::string(to_string(s.branch))});
            e["file"] = write_table(opts.out_dir, "pump_" + d.tag, t, opts.format);
            entries.push_back(e);
            continue;
        }
        const HysteresisTable h = hysteresis_sweep(sc.p_in, d.detuning, p);
        for (std::size_t k = 0; k < h.p_in.size(); ++k)
            for (const PumpSolution& s : h.roots[k])
                t.rows.push_back({h.p_in[k], s.n_p,
                                  std::string(s.stability == Stability::Stable ? "1" : "0"),
                                  std::string(to_string(s.branch))});
        Table traces;
        traces.columns = {"p_in_W", "n_p_up", "n_p_down"};
        for (std::size_t k = 0; k < h.p_in.size(); ++k)
            traces.rows.push_back({h.p_in[k], h.up_trace[k], h.down_trace[k]});
        e["detuning"] = d.detuning;
        e["detuning_over_critical"] = d.detuning / critical_detuning(p);
        e["file"] = write_table(opts.out_dir, "pump_" + d.tag, t, opts.format);
        e["traces_file"] = write_table(opts.out_dir, "pump_" + d.tag + "_traces", traces, opts.format);
        e["trace_convention"] = h.convention;
        const FoldPoints fp = fold_points(d.detuning, p);
        if (fp.defined)
            e["fold_points_W"] = {fp.p_in_low, fp.p_in_high};
        entries.push_back(e);
    }
    meta["detunings"] = entries;
    write_json((fs::path(opts.out_dir) / "pump.json").string(), meta);
    log << "pump: " << sc.detunings.size() << " detuning(s), " << sc.p_in.size() << " powers\n";
}

void run_flux(const Scenario& sc, const RunOptions& opts, std::ostream& log)
{
    Table t;
    t.columns = {"p_in_W", "delta_p", "n_p", "j_s", "e_ring", "regime"};
    std::size_t above = 0;
    for (const DetuningChoice& d : sc.detunings)
    {
        const DetuningPolicy policy =
            d.optimal ? DetuningPolicy::optimal() : DetuningPolicy::fixed(d.detuning);
        for (const FluxRow& r : flux_vs_power_sweep(sc.p_in, policy, sc.params, opts.threads))
        {
            above += r.above_threshold;
            t.rows.push_back({r.p_in, r.detuning, r.n_p, r.j_s, r.e_ring,
                              std::string(r.above_threshold ? "above_threshold" : to_string(r.regime))});
        }
    }
    ojson meta = header(sc, "flux");
    meta["file"] = write_table(opts.out_dir, "flux", t, opts.format);
    meta["rows"] = t.rows.size();
    meta["above_threshold_rows"] = above;
    meta["note"] = "one row per stable pump root per power; above-threshold rows carry null/nan flux";
    write_json((fs::path(opts.out_dir) / "flux.json").string(), meta);
    log << "flux: " << t.rows.size() << " rows";
    if (above)
        log << " (" << above << " above threshold)";
    log << '\n';
}

void run_spectrum(const Scenario& sc, const RunOptions& opts, std::ostream& log)
{
    const RingParams& p = sc.params;
    ojson meta = header(sc, "spectrum");
    ojson entries = ojson::array();
    std::size_t written = 0;
    for (const DetuningChoice& d : sc.detunings)
        for (std::size_t k = 0; k < sc.n_p.size(); ++k)
        {
            const DynParam dyn = DynParam::make(sc.n_p[k], detuning_for(d, sc.n_p[k], p), p);
            ojson e;
            e["tag"] = d.tag;
            e["n_p"] = dyn.n_p();
            e["detuning"] = dyn.detuning();
            e["rho_sq"] = dyn.rho_sq();
            e["regime"] = to_string(dyn.regime());
            if (dyn.above_threshold())
            {
                e["skipped"] = "above threshold: no steady state";
                entries.push_back(e);
                continue;
            }
            const auto grid = default_spectrum_grid(dyn, sc.spectrum_half_width_gamma, sc.spectrum_points);
            const SpectrumGrid s = lineshape(dyn, grid);
            Table t;
            t.columns = {"omega_s", "nu_s"};
            for (std::size_t i = 0; i < s.omega_s.size(); ++i)
                t.rows.push_back({s.omega_s[i], s.values[i]});
            e["file"] = write_table(opts.out_dir, "spectrum_" + d.tag + "_n" + std::to_string(k), t,
                                    opts.format);
            const auto peaks = find_peaks(s);
            ojson pk = ojson::array();
            for (const Peak& q : peaks)
                pk.push_back(q.position);
            e["peaks"] = pk;
            e["fwhm"] = spectrum_fwhm(s);
            e["min_peak_separation_gamma"] = min_peak_separation(peaks, p.gamma_tot());
            entries.push_back(e);
            ++written;
        }
    meta["convention"] = "nu_s(omega) = (2 pi)^(-1/2) * integral dtau exp(i omega tau) g1(tau); "
                         "omega_s is the angular offset from the signal resonance";
    meta["spectra"] = entries;
    write_json((fs::path(opts.out_dir) / "spectrum.json").string(), meta);
    log << "spectrum: " << written << " lineshape(s)\n";
}

void run_rho(const Scenario& sc, const RunOptions& opts, std::ostream& log)
{
    const RingParams& p = sc.params;
    Table t;
    t.columns = {"n_p", "delta_p", "rho_sq", "re_rho", "im_rho", "regime", "above_threshold"};
    for (const DetuningChoice& d : sc.detunings)
        for (double n : sc.n_p)
        {
            const DynParam dyn = DynParam::make(n, detuning_for(d, n, p), p);
            const double r = std::sqrt(std::abs(dyn.rho_sq()));
            const bool real = dyn.rho_sq() >= 0.0;
            t.rows.push_back({n, dyn.detuning(), dyn.rho_sq(), real ? r : 0.0, real ? 0.0 : r,
                              std::string(to_string(dyn.regime())),
                              std::string(dyn.above_threshold() ? "1" : "0")});
        }
    ojson meta = header(sc, "rho");
    meta["file"] = write_table(opts.out_dir, "rho", t, opts.format);
    meta["threshold"] = "rho = Gamma_tot (rho_sq = gamma_tot^2)";
    write_json((fs::path(opts.out_dir) / "rho.json").string(), meta);
    log << "rho: " << t.rows.size() << " rows\n";
}

// Smallest distance (in units of Gamma_tot) from a local maximum of the
// uncorrelated map to the energy-conserving line omega_s + omega_i = 2 Delta.
double band_peak_separation(const JsiGrid& g, double gamma_tot)
{
    double best = std::numeric_limits<double>::infinity();
    for (const GridPoint& m : local_maxima_2d(g.i_uncorr, g.rows(), g.cols()))
    {
        const double u = g.omega_s[m.s] + g.omega_i[m.i] - 2.0 * g.detuning;
        best = std::min(best, std::abs(u) / std::sqrt(2.0) / gamma_tot);
    }
    return best;
}

void write_jsi_part(const std::string& stem, const JsiGrid& g, const std::vector<double>& raw,
                    bool normalize, bool binary, const RunOptions& opts, ojson& e, const char* key)
{
    const double scale = raw.empty() ? 0.0 : *std::max_element(raw.begin(), raw.end());
    const std::vector<double> vals = normalize ? scaled_to_unit_max(raw) : raw;
    Table t;
    t.columns = {"omega_s", "omega_i", "value"};
    for (std::size_t s = 0; s < g.rows(); ++s)
        for (std::size_t i = 0; i < g.cols(); ++i)
            t.rows.push_back({g.omega_s[s], g.omega_i[i], vals[g.index(s, i)]});
    ojson part;
    part["file"] = write_table(opts.out_dir, stem, t, opts.format);
    part["max_raw"] = scale;
    part["value_scale"] = normalize && scale > 0.0 ? scale : 1.0;
    if (binary)
    {
        write_binary((fs::path(opts.out_dir) / (stem + ".bin")).string(), raw);
        part["binary_file"] = stem + ".bin";
    }
    e[key] = part;
}

void run_jsi(const Scenario& sc, const RunOptions& opts, std::ostream& log)
{
    const RingParams& p = sc.params;
    JsiOptions jo = sc.jsi;
    jo.threads = opts.threads;
    std::size_t written = 0;
    for (const DetuningChoice& d : sc.detunings)
        for (std::size_t k = 0; k < sc.n_p.size(); ++k)
        {
            const DynParam dyn = DynParam::make(sc.n_p[k], detuning_for(d, sc.n_p[k], p), p);
            const std::string stem = "jsi_" + d.tag + "_n" + std::to_string(k);
            ojson e = header(sc, "jsi");
            e["n_p"] = dyn.n_p();
            e["detuning"] = dyn.detuning();
            e["rho_sq"] = dyn.rho_sq();
            e["regime"] = to_string(dyn.regime());
            e["filter"] = {{"shape", sc.filter->shape() == FilterModel::Shape::Rect ? "rect" : "custom"},
                           {"delta_omega_trans", sc.filter->delta_omega_trans()},
                           {"delta_t", sc.filter->delta_t()}};
            if (dyn.above_threshold())
            {
                e["skipped"] = "above threshold: no steady state";
                write_json((fs::path(opts.out_dir) / (stem + ".json")).string(), e);
                continue;
            }
            const JsiGrid g = jsi_total(dyn, *sc.filter, jo);
            e["rows"] = g.rows();
            e["cols"] = g.cols();
            e["layout"] = "row-major, row index along omega_s; binary dumps are little-endian float64";
            e["supersample"] = g.supersample;
            e["normalized_to_unit_max"] = sc.jsi_normalize;
            e["convention"] = "value = coincidence rate per bin (1/s), divided by value_scale when "
                              "normalized; frequencies are angular offsets from the resonances";
            e["max_ratio_uncorr_over_corr"] = g.max_ratio;
            e["uncorr_local_maxima"] = local_maxima_2d(g.i_uncorr, g.rows(), g.cols()).size();
            e["band_peak_separation_gamma"] = band_peak_separation(g, p.gamma_tot());
            e["total_footprint_area"] = footprint_area(g.i_total, g.omega_s, g.omega_i);
            e["warnings"] = g.warnings;
            write_jsi_part(stem + "_corr", g, g.i_corr, sc.jsi_normalize, sc.jsi_binary, opts, e, "corr");
            write_jsi_part(stem + "_uncorr", g, g.i_uncorr, sc.jsi_normalize, sc.jsi_binary, opts, e,
                           "uncorr");
            write_jsi_part(stem + "_total", g, g.i_total, sc.jsi_normalize, sc.jsi_binary, opts, e,
                           "total");
            write_json((fs::path(opts.out_dir) / (stem + ".json")).string(), e);
            for (const std::string& w : g.warnings)
                log << "warning: " << w << '\n';
            ++written;
        }
    log << "jsi: " << written << " map(s)\n";
}

int run_validate(const Scenario& sc, const RunOptions& opts, std::ostream& log)
{
    ValidationOptions vo = sc.validation;
    vo.threads = opts.threads;
    const ValidationReport rep = run_validation(vo);
    ojson j;
    j["scenario"] = sc.name;
    j["seed"] = vo.seed;
    j["samples"] = vo.samples;
    j["tolerances"] = {{"flux_rel", vo.flux_tol}, {"g1_rel", vo.g1_tol}, {"kernel", vo.kernel_tol}};
    j["max_flux_dev"] = rep.max_flux_dev;
    j["median_flux_dev"] = rep.median_flux_dev;
    j["max_g1_dev"] = rep.max_g1_dev;
    j["max_kernel_dev"] = rep.max_kernel_dev;
    j["failures"] = rep.failures;
    j["pass"] = rep.pass;
    ojson rows = ojson::array();
    for (const ValidationSample& s : rep.samples)
        rows.push_back({{"n_p", s.n_p},
                        {"detuning", s.detuning},
                        {"gamma_ext", s.gamma_ext},
                        {"gamma_loss", s.gamma_loss},
                        {"lambda_fwm", s.lambda_fwm},
                        {"rho_sq", s.rho_sq},
                        {"regime", to_string(s.regime)},
                        {"j_s_closed", s.j_s_closed},
                        {"j_s_oracle", s.j_s_oracle},
                        {"flux_rel_dev", s.flux_rel_dev},
                        {"g1_rel_dev", s.g1_rel_dev},
                        {"kernel_dev", s.kernel_abs_dev},
                        {"pass", s.pass}});
    j["per_sample"] = rows;
    write_json((fs::path(opts.out_dir) / "validation.json").string(), j);
    log << "validate: " << rep.samples.size() << " samples, max flux deviation "
        << format_number(rep.max_flux_dev) << ", max g1 deviation " << format_number(rep.max_g1_dev)
        << ", max kernel deviation " << format_number(rep.max_kernel_dev) << " -> "
        << (rep.pass ? "PASS" : "FAIL") << '\n';
    return rep.pass ? kExitOk : kExitValidationFailure;
}

} // namespace

int run_scenario(const Scenario& sc, const RunOptions& opts, std::ostream& log)
{
    fs::create_directories(opts.out_dir);
    int code = kExitOk;
    for (Output o : sc.outputs)
    {
        switch (o)
        {
        case Output::Pump:
            run_pump(sc, opts, log);
            break;
        case Output::Flux:
            run_flux(sc, opts, log);
            break;
        case Output::Spectrum:
            run_spectrum(sc, opts, log);
            break;
        case Output::Jsi:
            run_jsi(sc, opts, log);
            break;
        case Output::Rho:
            run_rho(sc, opts, log);
            break;
        case Output::Validate:
            code = std::max(code, run_validate(sc, opts, log));
            break;
        }
    }
    return code;
}

int validate_scenario(const Scenario& sc, const RunOptions& opts, std::ostream& log)
{
    fs::create_directories(opts.out_dir);
    return run_validate(sc, opts, log);
}

} // namespace ringpair::cli
