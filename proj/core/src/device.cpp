#include "gmid/device.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "gmid/errors.hpp"
#include "gmid/lut.hpp"
#include "gmid/numfmt.hpp"

namespace gmid {

std::string_view to_string(Polarity p) noexcept {
    return p == Polarity::N ? "N" : "P";
}

double thermal_voltage(double temperature_k) {
    if (!(temperature_k > 0.0)) {
        throw InvalidArgument("temperature must be positive");
    }
    return kBoltzmann * temperature_k / kElementaryCharge;
}

void DeviceParams::validate(double l_min, double l_max) const {
    if (!(ut > 0.0)) throw InvalidArgument("device ut must be > 0");
    if (!(n >= 1.0)) throw InvalidArgument("device slope factor n must be >= 1");
    if (!(k_prime > 0.0)) throw InvalidArgument("device k_prime must be > 0");
    if (!(lambda0 >= 0.0)) throw InvalidArgument("device lambda0 must be >= 0");
    if (!(vds_char > 0.0)) throw InvalidArgument("device vds_char must be > 0");
    if (!(l_min > 0.0) || !(l_max >= l_min)) {
        throw InvalidArgument("characterization length range must be positive and ordered");
    }
    // lambda(L) is largest at the shortest length.
    if (lambda(l_min) * vds_char >= 1.0) {
        throw InvalidArgument("lambda(L)*vds_char = " + format_number(lambda(l_min) * vds_char) +
                              " >= 1 at L=" + format_number(l_min) + " m");
    }
}

DeviceParams DeviceParams::default_nmos(double temperature_k) {
    DeviceParams p;
    p.polarity = Polarity::N;
    p.vth0 = 0.30;
    p.n = 1.3;
    p.ut = thermal_voltage(temperature_k);
    p.k_prime = 300e-6;
    p.lambda0 = 0.02e-6;
    p.vds_char = 0.45;
    return p;
}

DeviceParams DeviceParams::default_pmos(double temperature_k) {
    DeviceParams p = default_nmos(temperature_k);
    p.polarity = Polarity::P;
    p.vth0 = 0.32;
    p.k_prime = 120e-6;
    return p;
}

namespace {

// ln(1 + e^x) without overflow for large x.
double softplus(double x) {
    if (x > 30.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double logistic(double x) {
    return 1.0 / (1.0 + std::exp(-x));
}

} // namespace

DeviceMetrics eval_device(const DeviceParams& params, double vgs, double vds, double l) {
    if (!(l > 0.0)) throw InvalidArgument("channel length must be > 0");
    if (!(vds > 0.0)) throw InvalidArgument("vds must be > 0");

    const double two_n_ut = 2.0 * params.n * params.ut;
    const double x = (vgs - params.vth0) / two_n_ut;
    const double f = softplus(x);
    const double lam = params.lambda(l);
    const double clm = 1.0 + lam * vds;

    DeviceMetrics m;
    m.vgs = vgs;
    m.l = l;
    m.id_per_w = (2.0 * params.n * params.k_prime * params.ut * params.ut / l) * f * f * clm;
    // d/dvgs ln^2(1+e^x) = 2 f * logistic(x) / (2 n ut)
    m.gm_over_id = logistic(x) / (params.n * params.ut * f);
    m.gm_over_gds = lam > 0.0 ? m.gm_over_id * clm / lam
                              : std::numeric_limits<double>::infinity();
    return m;
}

void SweepGrid::validate() const {
    if (!(l_min > 0.0) || !(l_min < l_max)) {
        throw InvalidArgument("sweep requires 0 < l_min < l_max");
    }
    if (!(vgs_min < vgs_max)) throw InvalidArgument("sweep requires vgs_min < vgs_max");
    if (n_l < 2 || n_vgs < 2) throw InvalidArgument("sweep requires at least 2 points per axis");
}

namespace {

std::vector<double> uniform(double lo, double hi, int count) {
    std::vector<double> g(static_cast<std::size_t>(count));
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + step * i;
    g.back() = hi;
    return g;
}

} // namespace

DeviceLUT generate_lut(const DeviceParams& params, const SweepGrid& grid) {
    grid.validate();
    params.validate(grid.l_min, grid.l_max);

    auto l_grid = uniform(grid.l_min, grid.l_max, grid.n_l);
    auto vgs_grid = uniform(grid.vgs_min, grid.vgs_max, grid.n_vgs);

    const std::size_t cells = l_grid.size() * vgs_grid.size();
    std::vector<double> gm_id, gm_gds, id_w;
    gm_id.reserve(cells);
    gm_gds.reserve(cells);
    id_w.reserve(cells);
    for (double l : l_grid) {
        for (double vgs : vgs_grid) {
            const auto m = eval_device(params, vgs, params.vds_char, l);
            gm_id.push_back(m.gm_over_id);
            gm_gds.push_back(m.gm_over_gds);
            id_w.push_back(m.id_per_w);
        }
    }

    std::string provenance = "surrogate polarity=" + std::string(to_string(params.polarity)) +
                             " vth0=" + format_number(params.vth0) +
                             " n=" + format_number(params.n) +
                             " ut=" + format_number(params.ut) +
                             " k_prime=" + format_number(params.k_prime) +
                             " lambda0=" + format_number(params.lambda0);
    return DeviceLUT(params.polarity, params.vds_char, std::move(l_grid), std::move(vgs_grid),
                     std::move(gm_id), std::move(gm_gds), std::move(id_w), std::move(provenance));
}

} // namespace gmid
