#pragma once

#include <span>
#include <string>
#include <vector>

#include "ringpair/dynamics.hpp"

namespace ringpair
{

/// Monochromator transmission T(omega) (real, symmetric) together with the
/// coincidence time resolution.
class FilterModel
{
public:
    enum class Shape
    {
        Rect,
        Custom
    };

    /// Unit transmission on |omega| <= delta_omega_trans / 2.
    static FilterModel rect(double delta_omega_trans, double delta_t);
    /// Piecewise-linear T through the given samples, zero outside them.
    /// delta_omega_trans is taken as the equivalent width (integral of T^2).
    static FilterModel custom(std::vector<double> omega, std::vector<double> transmission,
                              double delta_t);

    Shape shape() const { return shape_; }
    double delta_omega_trans() const { return delta_omega_trans_; }
    double delta_t() const { return delta_t_; }
    const std::vector<double>& sample_omega() const { return omega_; }
    const std::vector<double>& sample_transmission() const { return trans_; }

    double transmission(double omega) const;
    /// Integral of T^2 over omega.
    double transmission_power() const;
    /// D(u) = (1/2 pi) (T * T)(u), u = omega_s + omega_i measured from twice
    /// the pump line. Exact for both shapes.
    double smoothing(double u) const;
    /// Half-width in u outside which D vanishes.
    double support_half_width() const;

    /// Human-readable notes when the filter is too coarse for the closed forms.
    std::vector<std::string> warnings(double gamma_tot) const;

private:
    FilterModel(Shape shape, double delta_omega_trans, double delta_t);

    Shape shape_;
    double delta_omega_trans_;
    double delta_t_;
    std::vector<double> omega_;
    std::vector<double> trans_;
};

/// D(omega_s, omega_i) with both frequencies measured from the pump line.
double smoothing_D(double omega_s, double omega_i, const FilterModel& filter);

/// Single-point correlated and uncorrelated coincidence rates. Frequencies are
/// offsets from the signal/idler resonances. Throw above threshold.
double jsi_correlated_value(const DynParam& dyn, double omega_s, double omega_i,
                            const FilterModel& filter);
double jsi_uncorrelated_value(const DynParam& dyn, double omega_s, double omega_i,
                              const FilterModel& filter);

/// I_corr + I_uncorr at one point; identical to a JsiGrid cell computed with
/// supersample = 1.
double coincidence_rate(const DynParam& dyn, double omega_s, double omega_i,
                        const FilterModel& filter);

struct JsiOptions
{
    std::size_t n_s = 201;
    std::size_t n_i = 201;
    double half_width_in_gamma = 6.0; // both axes centred on the pump detuning
    /// Sub-samples across each cell, orthogonal to the energy-conserving line.
    std::size_t supersample = 10;
    unsigned threads = 1;
};

struct JsiGrid
{
    std::vector<double> omega_s;
    std::vector<double> omega_i;
    // row-major, index s * omega_i.size() + i
    std::vector<double> i_corr;
    std::vector<double> i_uncorr;
    std::vector<double> i_total;

    double n_p = 0.0;
    double detuning = 0.0;
    double rho_sq = 0.0;
    std::size_t supersample = 1;
    double max_ratio = 0.0; // max(i_uncorr) / max(i_corr)
    std::vector<std::string> warnings;

    std::size_t rows() const { return omega_s.size(); }
    std::size_t cols() const { return omega_i.size(); }
    std::size_t index(std::size_t s, std::size_t i) const { return s * omega_i.size() + i; }
};

std::vector<double> jsi_axis(const DynParam& dyn, std::size_t points, double half_width_in_gamma);

/// Cell values of I_corr; with supersample > 1 each cell is the mean over
/// shifts (omega_s + d, omega_i + d), |d| <= half a grid step.
std::vector<double> jsi_correlated(const DynParam& dyn, std::span<const double> omega_s,
                                   std::span<const double> omega_i, const FilterModel& filter,
                                   std::size_t supersample = 1, unsigned threads = 1);
std::vector<double> jsi_uncorrelated(const DynParam& dyn, std::span<const double> omega_s,
                                     std::span<const double> omega_i, const FilterModel& filter);

JsiGrid jsi_total(const DynParam& dyn, const FilterModel& filter, const JsiOptions& opts = {});

struct GridPoint
{
    std::size_t s = 0;
    std::size_t i = 0;
    double value = 0.0;
};

/// Interior cells strictly above zero and not exceeded by any of their eight
/// neighbours (ties resolved in favour of the first cell in row-major order).
std::vector<GridPoint> local_maxima_2d(std::span<const double> values, std::size_t rows,
                                       std::size_t cols);

/// Area (rad^2/s^2) of the cells at or above half the maximum.
double footprint_area(std::span<const double> values, std::span<const double> omega_s,
                      std::span<const double> omega_i);

/// Divides a copy of the values by their maximum (no-op for an all-zero map).
std::vector<double> scaled_to_unit_max(std::span<const double> values);

} // namespace ringpair
