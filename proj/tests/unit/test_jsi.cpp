#include "doctest.h"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ringpair/jsi.hpp"
#include "ringpair/observables.hpp"

using namespace ringpair;
using testsupport::rel_err;

namespace
{

constexpr double kG = 1e9;
constexpr double kOmega = 1.2152e15;

RingParams ring(double lambda = 10.0, double gext = 0.5 * kG, double gloss = 0.5 * kG)
{
    return RingParams::from_lambda(gext, gloss, lambda, kOmega);
}

FilterModel fine_rect(double g = kG)
{
    return FilterModel::rect(g / 20.0, 0.05 / g);
}

FilterModel triangle(double half_base, double dt)
{
    return FilterModel::custom({-half_base, 0.0, half_base}, {0.0, 1.0, 0.0}, dt);
}

// (1/2 pi) int T(w) T(u - w) dw by brute-force quadrature on the kinks
double smoothing_by_quadrature(const FilterModel& f, double u)
{
    const double h = f.support_half_width();
    std::vector<double> edges = f.sample_omega();
    if (edges.empty())
        edges = {-0.5 * f.delta_omega_trans(), 0.5 * f.delta_omega_trans()};
    std::vector<double> cuts;
    for (double w : edges)
    {
        cuts.push_back(w);
        cuts.push_back(u - w);
    }
    cuts.push_back(-h);
    cuts.push_back(h);
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        if (cuts[k + 1] > cuts[k])
            sum += testsupport::integrate(
                [&](double w) { return f.transmission(w) * f.transmission(u - w); }, cuts[k],
                cuts[k + 1], 4);
    return sum / (2.0 * kPi);
}

} // namespace

TEST_CASE("correlated and uncorrelated rates match the frozen oracle values")
{
    const DynParam dyn = DynParam::make(2e7, 3e9, ring(30.0, 6e8, 4e8));
    const FilterModel f = fine_rect();
    CHECK(rel_err(jsi_correlated_value(dyn, 3.3e9, 2.72e9, f), 43.921329773188382337) < 1e-10);
    CHECK(rel_err(jsi_uncorrelated_value(dyn, 3.3e9, 2.72e9, f), 10.871591424988892865) < 1e-10);
    CHECK(coincidence_rate(dyn, 3.3e9, 2.72e9, f)
          == jsi_correlated_value(dyn, 3.3e9, 2.72e9, f)
                 + jsi_uncorrelated_value(dyn, 3.3e9, 2.72e9, f));
}

TEST_CASE("rect filter")
{
    const FilterModel f = FilterModel::rect(4.0, 0.5);
    CHECK(f.shape() == FilterModel::Shape::Rect);
    CHECK(f.transmission(1.99) == 1.0);
    CHECK(f.transmission(2.01) == 0.0);
    CHECK(f.transmission_power() == 4.0);
    CHECK(f.support_half_width() == 4.0);
    CHECK(f.smoothing(0.0) == doctest::Approx(4.0 / (2.0 * kPi)));
    CHECK(f.smoothing(-1.0) == doctest::Approx(3.0 / (2.0 * kPi)));
    CHECK(f.smoothing(4.5) == 0.0);
    for (double u : {0.0, 0.3, 1.7, 3.9})
        CHECK(rel_err(f.smoothing(u), smoothing_by_quadrature(f, u)) < 1e-12);
    CHECK_THROWS(FilterModel::rect(-1.0, 0.1));
    CHECK_THROWS(FilterModel::rect(1.0, -0.1));
}

TEST_CASE("custom piecewise-linear filter")
{
    const FilterModel tri = triangle(2.0, 0.1);
    CHECK(tri.shape() == FilterModel::Shape::Custom);
    CHECK(tri.transmission(1.0) == doctest::Approx(0.5));
    CHECK(tri.transmission(3.0) == 0.0);
    // int T^2 over a unit-height triangle of half-base b is 2b/3
    CHECK(rel_err(tri.transmission_power(), 4.0 / 3.0) < 1e-14);
    CHECK(tri.delta_omega_trans() == tri.transmission_power());
    CHECK(rel_err(tri.smoothing(0.0), tri.transmission_power() / (2.0 * kPi)) < 1e-14);
    for (double u : {0.1, 0.9, 2.0, 3.3})
        CHECK(rel_err(tri.smoothing(u), smoothing_by_quadrature(tri, u)) < 1e-12);
    CHECK(tri.smoothing(4.01) == 0.0);

    // a flat custom filter reproduces the rect closed form
    const FilterModel flat = FilterModel::custom({-2.0, 2.0}, {1.0, 1.0}, 0.1);
    const FilterModel rect = FilterModel::rect(4.0, 0.1);
    for (double u : {0.0, 1.0, 3.5})
        CHECK(rel_err(flat.smoothing(u), rect.smoothing(u)) < 1e-14);

    const FilterModel skew = FilterModel::custom({-1.0, 0.0, 2.0}, {0.0, 1.0, 0.0}, 0.1);
    for (double u : {-1.5, 0.0, 0.7, 2.9})
        CHECK(rel_err(skew.smoothing(u), smoothing_by_quadrature(skew, u)) < 1e-12);

    CHECK_THROWS(FilterModel::custom({0.0}, {1.0}, 0.1));
    CHECK_THROWS(FilterModel::custom({1.0, 0.0}, {1.0, 1.0}, 0.1));
    CHECK_THROWS(FilterModel::custom({0.0, 1.0}, {1.0, -1.0}, 0.1));
    CHECK_THROWS(FilterModel::custom({0.0, 1.0, 2.0}, {1.0, 1.0}, 0.1));
}

TEST_CASE("filter warnings")
{
    CHECK(fine_rect().warnings(kG).empty());
    CHECK(FilterModel::rect(0.2 * kG, 0.05 / kG).warnings(kG).size() == 1);
    CHECK(FilterModel::rect(0.2 * kG, 0.5 / kG).warnings(kG).size() == 2);
    const FilterModel skew = FilterModel::custom({-1e7, 0.0, 3e7}, {0.0, 1.0, 0.0}, 0.05 / kG);
    CHECK(skew.warnings(kG).size() == 1);
    CHECK(triangle(1e7, 0.05 / kG).warnings(kG).empty());
}

TEST_CASE("correlated part lives on the energy-conserving line")
{
    const RingParams p = ring();
    const DynParam dyn = DynParam::make(3e7, 1e9, p);
    const FilterModel f = fine_rect();
    const double dw = f.delta_omega_trans();
    // u = omega_s + omega_i - 2 Delta
    CHECK(jsi_correlated_value(dyn, 1.2e9, 0.8e9, f) > 0.0);
    CHECK(jsi_correlated_value(dyn, 1.2e9, 0.8e9 + 0.99 * dw, f) > 0.0);
    CHECK(jsi_correlated_value(dyn, 1.2e9, 0.8e9 + 1.01 * dw, f) == 0.0);
    CHECK(jsi_correlated_value(dyn, 1.2e9, 0.8e9 - 1.01 * dw, f) == 0.0);
    CHECK(smoothing_D(1.2e9 - 1e9, 0.8e9 - 1e9, f) == doctest::Approx(f.smoothing(0.0)));
}

TEST_CASE("uncorrelated part is the product of single-photon spectra")
{
    const RingParams p = ring();
    const DynParam dyn = DynParam::make(5e7, 2e9, p);
    const FilterModel f = fine_rect();
    const double base = jsi_uncorrelated_value(dyn, 1e9, 1e9, f);
    for (double ws : {-3e9, 0.5e9, 4e9})
        for (double wi : {0.0, 2.5e9})
        {
            const double expect = base * lineshape_value(dyn, ws) * lineshape_value(dyn, wi)
                                  / (lineshape_value(dyn, 1e9) * lineshape_value(dyn, 1e9));
            CHECK(rel_err(jsi_uncorrelated_value(dyn, ws, wi, f), expect) < 1e-13);
        }
}

TEST_CASE("uncorrelated part is negligible at low power")
{
    const RingParams p = ring();
    const FilterModel f = fine_rect();
    const DynParam weak = DynParam::make(1e4, 0.0, p);
    CHECK(jsi_uncorrelated_value(weak, 0.0, 0.0, f) < 1e-6 * jsi_correlated_value(weak, 0.0, 0.0, f));
}

TEST_CASE("grid evaluation")
{
    const RingParams p = ring();
    const DynParam dyn = DynParam::make(4e7, 1.5e9, p);
    const FilterModel f = fine_rect();
    JsiOptions opts;
    opts.n_s = 41;
    opts.n_i = 37;
    opts.half_width_in_gamma = 4.0;
    opts.supersample = 1;

    const JsiGrid a = jsi_total(dyn, f, opts);
    REQUIRE(a.rows() == 41);
    REQUIRE(a.cols() == 37);
    CHECK(a.omega_s.front() == doctest::Approx(dyn.detuning() - 4.0 * kG));
    CHECK(a.omega_s.back() == doctest::Approx(dyn.detuning() + 4.0 * kG));
    for (std::size_t s = 0; s < a.rows(); s += 7)
        for (std::size_t i = 0; i < a.cols(); i += 5)
        {
            const std::size_t k = a.index(s, i);
            CHECK(a.i_total[k] == a.i_corr[k] + a.i_uncorr[k]);
            CHECK(a.i_total[k] == coincidence_rate(dyn, a.omega_s[s], a.omega_i[i], f));
        }

    opts.threads = 3;
    const JsiGrid b = jsi_total(dyn, f, opts);
    CHECK(a.i_total == b.i_total);

    // supersampling spreads the narrow line over whole cells
    opts.supersample = 10;
    const JsiGrid c = jsi_total(dyn, f, opts);
    CHECK(c.supersample == 10);
    CHECK(c.i_uncorr == a.i_uncorr);
    double ca = 0.0, cc = 0.0;
    for (std::size_t k = 0; k < a.i_corr.size(); ++k)
    {
        ca += a.i_corr[k] > 0.0;
        cc += c.i_corr[k] > 0.0;
    }
    CHECK(cc > ca);
    CHECK(c.max_ratio > 0.0);

    const DynParam hot = DynParam::make(0.5 * (stability_window(4e9, p).n_minus
                                                + stability_window(4e9, p).n_plus),
                                        4e9, p);
    CHECK_THROWS(jsi_total(hot, f, opts));
    CHECK_THROWS(jsi_axis(dyn, 1, 4.0));
}

TEST_CASE("split spectrum gives a quadruplet in the uncorrelated map")
{
    const RingParams p = ring();
    const DynParam dyn = DynParam::make(1e6, 3.0 * kG, p);
    REQUIRE(dyn.rho_sq() < -kG * kG);
    const std::vector<double> axis = jsi_axis(dyn, 121, 6.0);
    const std::vector<double> u = jsi_uncorrelated(dyn, axis, axis, fine_rect());
    const auto maxima = local_maxima_2d(u, axis.size(), axis.size());
    CHECK(maxima.size() == 4);
}

TEST_CASE("grid helpers")
{
    // 5 x 5 with two separated bumps
    std::vector<double> v(25, 0.0);
    v[6] = 3.0;
    v[18] = 2.0;
    v[17] = 2.0; // tie with 18: first in row-major order wins
    const auto m = local_maxima_2d(v, 5, 5);
    REQUIRE(m.size() == 2);
    CHECK(m[0].s == 1);
    CHECK(m[0].i == 1);
    CHECK(m[1].s == 3);
    CHECK(m[1].i == 2);
    CHECK_THROWS(local_maxima_2d(v, 4, 5));

    const std::vector<double> axis = {0.0, 1.0, 2.0, 3.0, 4.0};
    // cells >= 1.5 : 6, 17, 18 -> three unit cells
    CHECK(footprint_area(v, axis, axis) == doctest::Approx(3.0));

    const std::vector<double> scaled = scaled_to_unit_max(v);
    CHECK(scaled[6] == 1.0);
    CHECK(scaled[18] == doctest::Approx(2.0 / 3.0));
    const std::vector<double> zeros(4, 0.0);
    CHECK(scaled_to_unit_max(zeros) == zeros);
}
