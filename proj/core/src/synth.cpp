#include "gmid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gmid/errors.hpp"
#include "gmid/numfmt.hpp"

namespace gmid {

double db_to_linear(double db) { return std::pow(10.0, db / 20.0); }
double linear_to_db(double ratio) { return 20.0 * std::log10(ratio); }

void AmpSpec::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidArgument(std::string("spec ") + name + " must be positive");
        }
    };
    positive(vdd, "vdd");
    positive(temperature, "temperature");
    positive(noise_density, "noise_density");
    positive(gbw, "gbw");
    positive(c_load, "c_load");
    positive(slew_rate, "slew_rate");
    positive(av1_target, "av1_target");
    positive(av2_target, "av2_target");
    positive(cmrr_target, "cmrr_target");
    positive(vcm_low, "vcm_low");
    positive(power_max, "power_max");
    if (!(pm_target > 0.0 && pm_target < 90.0)) {
        throw InvalidArgument("spec pm_target must lie in (0, 90) degrees");
    }
}

void AmpSpec::set_total_gain_db(double gain_db) {
    av1_target = av2_target = db_to_linear(gain_db / 2.0);
}

AmpSpec AmpSpec::reference() {
    AmpSpec s;
    s.set_total_gain_db(40.4);
    s.cmrr_target = db_to_linear(68.0);
    return s;
}

void SynthOptions::validate() const {
    if (!(input_gm_id_max > 0.0)) throw InvalidArgument("input_gm_id_max must be > 0");
    if (!(load_gm_id_init > 0.0)) throw InvalidArgument("load_gm_id_init must be > 0");
    if (!(mirror_gm_id > 0.0)) throw InvalidArgument("mirror_gm_id must be > 0");
    if (!(ref_current_ratio > 0.0)) throw InvalidArgument("ref_current_ratio must be > 0");
    if (!(pm_guard_deg >= 0.0)) throw InvalidArgument("pm_guard_deg must be >= 0");
    if (!(width_grid > 0.0)) throw InvalidArgument("width_grid must be > 0");
    if (active_load_max_rounds < 1) throw InvalidArgument("active_load_max_rounds must be >= 1");
    if (!(active_load_tol >= 0.0)) throw InvalidArgument("active_load_tol must be >= 0");
}

std::string_view device_name(std::size_t index) {
    static constexpr std::array<std::string_view, kDeviceCount> names = {
        "M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8"};
    return names.at(index);
}

double gm_from_noise(double noise_density, double temperature) {
    if (!(noise_density > 0.0)) throw InvalidArgument("noise density must be > 0");
    if (!(temperature > 0.0)) throw InvalidArgument("temperature must be > 0");
    return (16.0 / 3.0) * kBoltzmann * temperature / (noise_density * noise_density);
}

double compensation_cap(double gm12, double gbw) {
    if (!(gm12 > 0.0)) throw InvalidArgument("gm12 must be > 0");
    if (!(gbw > 0.0)) throw InvalidArgument("gbw must be > 0");
    return gm12 / (2.0 * std::numbers::pi * gbw);
}

TailCurrents tail_currents(double slew_rate, double c_c) {
    if (!(slew_rate > 0.0)) throw InvalidArgument("slew rate must be > 0");
    if (!(c_c > 0.0)) throw InvalidArgument("compensation capacitance must be > 0");
    const double i_d5 = slew_rate * c_c;
    return {i_d5, i_d5 / 2.0};
}

StageConductances stage1_conductances(double gm12, double av1_target) {
    if (!(av1_target > 0.0)) throw InvalidArgument("first-stage gain target must be > 0");
    const double g = gm12 / (2.0 * av1_target);
    return {g, g};
}

SizedDevice size_device(const DeviceLUT& lut, double gm, double i_d, double gds_max,
                        double width_grid) {
    if (!(gm > 0.0) || !(i_d > 0.0)) throw InvalidArgument("gm and i_d must be > 0");
    if (!(gds_max > 0.0)) throw InvalidArgument("gds_max must be > 0");
    if (!(width_grid > 0.0)) throw InvalidArgument("width grid must be > 0");

    const double gm_id = gm / i_d;
    const double l = select_length(lut, gm_id, gm / gds_max);
    const double vgs = invert_gmid(lut, l, gm_id);
    const double w_exact = i_d / interp(lut, l, vgs, Quantity::IdPerW);
    // Snap up; the 1e-9 keeps exact multiples from bumping a whole step.
    const double steps = std::ceil(w_exact / width_grid - 1e-9);
    return {std::max(steps, 1.0) * width_grid, l, vgs};
}

LoadVerdict active_load_check(const DeviceLUT& lut_n, double vgs34, double l34,
                              double assumed_gm_id, double rel_tol) {
    const double actual = interp(lut_n, l34, vgs34, Quantity::GmOverId);
    if (actual <= assumed_gm_id * (1.0 + rel_tol)) return Accept{};
    return Reassess{actual};
}

double tail_requirement(double cmrr_target, double gm12, double gds12, double gds34, double gm34) {
    if (!(cmrr_target > 0.0) || !(gm12 > 0.0) || !(gds12 > 0.0) || !(gds34 > 0.0) ||
        !(gm34 > 0.0)) {
        throw InvalidArgument("tail requirement inputs must be positive");
    }
    const double r_ss = cmrr_target * (gds12 + gds34) / (gm12 * 2.0 * gm34);
    return 1.0 / r_ss;
}

double second_stage_current(double i_d1, double c_c, double c_load) {
    if (!(i_d1 > 0.0) || !(c_c > 0.0) || !(c_load >= 0.0)) {
        throw InvalidArgument("second-stage current inputs must be positive");
    }
    return i_d1 * 2.0 * (c_load + c_c) / c_c;
}

double phase_margin(double alpha, double i_d1, double i_d6, double c_load, double c_c) {
    const double ratio = alpha * (i_d1 / i_d6);
    const double deg = 180.0 / std::numbers::pi;
    return 90.0 - std::atan(ratio * (c_load / c_c)) * deg - std::atan(ratio) * deg;
}

double solve_alpha(double pm_target, double i_d1, double i_d6, double c_load, double c_c) {
    if (!(i_d1 > 0.0) || !(i_d6 > 0.0) || !(c_load > 0.0) || !(c_c > 0.0)) {
        throw InvalidArgument("solve_alpha needs positive currents and capacitances");
    }
    if (!(pm_target < 90.0)) {
        throw Infeasible("phase margin " + format_number(pm_target) +
                         " deg not reachable (limit 90 deg at alpha = 0)");
    }
    if (!(pm_target > -90.0)) throw Infeasible("phase margin below -90 deg not reachable");

    auto pm = [&](double a) { return phase_margin(a, i_d1, i_d6, c_load, c_c); };
    double lo = 0.0;
    double hi = 1.0;
    while (pm(hi) >= pm_target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw Infeasible("alpha bracket diverged");
    }
    // pm is strictly decreasing; keep pm(lo) >= target so the result never undershoots.
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (pm(mid) >= pm_target ? lo : hi) = mid;
    }
    return lo;
}

double mirror_width(double w5, double i_d8, double i_d5) {
    if (!(w5 > 0.0) || !(i_d8 > 0.0) || !(i_d5 > 0.0)) {
        throw InvalidArgument("mirror width inputs must be positive");
    }
    return (2.0 / 3.0) * w5 * (i_d8 / i_d5);
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SynthesisError&) {
        throw;
    } catch (const Error& e) {
        throw SynthesisError(name, e.what());
    }
}

double snap_up(double w, double grid) {
    return std::max(std::ceil(w / grid - 1e-9), 1.0) * grid;
}

} // namespace

AmpDesign synthesize(const AmpSpec& spec, const DeviceLUT& lut_n, const DeviceLUT& lut_p,
                     const SynthOptions& opt) {
    stage("spec", [&] {
        spec.validate();
        opt.validate();
        if (lut_n.polarity() != Polarity::N) throw InvalidArgument("lut_n is not an N-device LUT");
        if (lut_p.polarity() != Polarity::P) throw InvalidArgument("lut_p is not a P-device LUT");
        return 0;
    });

    AmpDesign d;
    d.gm12 = stage("noise", [&] { return gm_from_noise(spec.noise_density, spec.temperature); });
    d.c_c = stage("compensation", [&] { return compensation_cap(d.gm12, spec.gbw); });

    // The slew rate is a lower bound; the tail may carry more so the input pair
    // stays at a reachable current efficiency.
    stage("slew", [&] {
        const auto tail = tail_currents(spec.slew_rate, d.c_c);
        d.i_d1 = std::max(tail.i_d1, d.gm12 / opt.input_gm_id_max);
        d.i_d5 = 2.0 * d.i_d1;
        return 0;
    });

    const auto g1 = stage1_conductances(d.gm12, spec.av1_target);
    d.gds12 = g1.gds12;
    d.gds34 = g1.gds34;

    const auto m1 = stage("M1/M2 input pair", [&] {
        return size_device(lut_p, d.gm12, d.i_d1, d.gds12, opt.width_grid);
    });
    d.vgs1 = m1.vgs;
    d.devices[M1] = d.devices[M2] = {m1.w, m1.l};

    d.i_d6 = second_stage_current(d.i_d1, d.c_c, spec.c_load);
    d.i_d7 = d.i_d6;
    d.id1_over_id6_bound = d.c_c / (2.0 * (spec.c_load + d.c_c));

    d.alpha = stage("alpha", [&] {
        double target = spec.pm_target + opt.pm_guard_deg;
        if (target >= 90.0) target = spec.pm_target;
        return solve_alpha(target, d.i_d1, d.i_d6, spec.c_load, d.c_c);
    });

    // alpha = (gm1/id1) / (gm6/id6)
    d.gm6 = (d.gm12 / d.i_d1) * d.i_d6 / d.alpha;
    d.gds6 = d.gds7 = d.gm6 / (2.0 * spec.av2_target);
    const auto m6 = stage("M6 second stage", [&] {
        return size_device(lut_n, d.gm6, d.i_d6, d.gds6, opt.width_grid);
    });
    d.vgs6 = m6.vgs;
    d.devices[M6] = {m6.w, m6.l};

    // Active load: M4's drain drives M6's gate, so the load operates at vgs6.
    stage("M3/M4 active load", [&] {
        double assumed = opt.load_gm_id_init;
        for (int round = 1; round <= opt.active_load_max_rounds; ++round) {
            const auto m3 = size_device(lut_n, assumed * d.i_d1, d.i_d1, d.gds34, opt.width_grid);
            const auto verdict =
                active_load_check(lut_n, d.vgs6, m3.l, assumed, opt.active_load_tol);
            if (const auto* re = std::get_if<Reassess>(&verdict)) {
                assumed = re->gm_id;
                continue;
            }
            const double actual = interp(lut_n, m3.l, d.vgs6, Quantity::GmOverId);
            const double w = snap_up(d.i_d1 / interp(lut_n, m3.l, d.vgs6, Quantity::IdPerW),
                                     opt.width_grid);
            d.devices[M3] = d.devices[M4] = {w, m3.l};
            d.vgs34 = d.vgs6;
            d.gm34 = actual * d.i_d1;
            d.active_load_rounds = round;
            return 0;
        }
        throw Infeasible("active load gm/id did not settle within " +
                         std::to_string(opt.active_load_max_rounds) + " rounds");
    });

    // Tail conductance from the conductances the sized devices actually reach.
    d.gds5 = stage("M5 tail (CMRR)", [&] {
        const double gds12 = d.gm12 / interp(lut_p, m1.l, m1.vgs, Quantity::GmOverGds);
        const double gds34 = d.gm34 / interp(lut_n, d.devices[M3].l, d.vgs34, Quantity::GmOverGds);
        return tail_requirement(spec.cmrr_target, d.gm12, gds12, gds34, d.gm34);
    });

    // M5, M7 and M8 share gate and length; M7's gds scales from M5's by i_d6/i_d5.
    const auto m5 = stage("M5 tail", [&] {
        const double gds_max = std::min(d.gds5, d.gds7 * d.i_d5 / d.i_d6);
        return size_device(lut_p, opt.mirror_gm_id * d.i_d5, d.i_d5, gds_max, opt.width_grid);
    });
    d.vgs5 = m5.vgs;
    d.devices[M5] = {m5.w, m5.l};

    stage("M7 second-stage load", [&] {
        const double w7 = d.i_d7 / interp(lut_p, m5.l, m5.vgs, Quantity::IdPerW);
        d.devices[M7] = {snap_up(w7, opt.width_grid), m5.l};
        return 0;
    });

    stage("M8 mirror reference", [&] {
        d.i_d8 = opt.ref_current_ratio * d.i_d5;
        d.devices[M8] = {snap_up(mirror_width(m5.w, d.i_d8, d.i_d5), opt.width_grid), m5.l};
        return 0;
    });

    return d;
}

} // namespace gmid
