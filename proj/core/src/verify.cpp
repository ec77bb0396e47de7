#include "gmid/verify.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gmid/errors.hpp"

namespace gmid {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

struct OperatingPoint {
    double gm;
    double gds;
};

OperatingPoint evaluate(const DeviceLUT& lut, std::size_t dev, double l, double vgs, double i_d) {
    try {
        const double gm = interp(lut, l, vgs, Quantity::GmOverId) * i_d;
        return {gm, gm / interp(lut, l, vgs, Quantity::GmOverGds)};
    } catch (const RangeError& e) {
        throw RangeError(std::string(device_name(dev)) + "." + e.axis(),
                         e.axis() == "l" ? l : vgs, e.lo(), e.hi());
    }
}

} // namespace

double pm_dominant_pole(double gbw, double p2, double z1) {
    return 90.0 - std::atan(gbw / p2) * kDeg - std::atan(gbw / z1) * kDeg;
}

AmpReport report(const AmpDesign& d, const DeviceLUT& lut_n, const DeviceLUT& lut_p,
                 const AmpSpec& spec) {
    if (!(d.c_c > 0.0)) throw InvalidArgument("invalid design: c_c must be > 0");
    if (!(spec.c_load > 0.0)) throw InvalidArgument("invalid design: c_load must be > 0");
    if (!(d.i_d1 > 0.0) || !(d.i_d5 > 0.0) || !(d.i_d6 > 0.0) || !(d.i_d7 > 0.0) ||
        !(d.i_d8 >= 0.0)) {
        throw InvalidArgument("invalid design: branch currents must be positive");
    }

    const auto m1 = evaluate(lut_p, M1, d.devices[M1].l, d.vgs1, d.i_d1);
    const auto m3 = evaluate(lut_n, M3, d.devices[M3].l, d.vgs34, d.i_d1);
    const auto m5 = evaluate(lut_p, M5, d.devices[M5].l, d.vgs5, d.i_d5);
    const auto m6 = evaluate(lut_n, M6, d.devices[M6].l, d.vgs6, d.i_d6);
    const auto m7 = evaluate(lut_p, M7, d.devices[M7].l, d.vgs5, d.i_d7);

    AmpReport r;
    r.gm12 = m1.gm;
    r.gds12 = m1.gds;
    r.gm34 = m3.gm;
    r.gds34 = m3.gds;
    r.gds5 = m5.gds;
    r.gm6 = m6.gm;
    r.gds6 = m6.gds;
    r.gds7 = m7.gds;

    r.av1 = r.gm12 / (r.gds12 + r.gds34);
    r.av2 = r.gm6 / (r.gds6 + r.gds7);
    r.a0 = r.av1 * r.av2;
    r.av1_db = linear_to_db(r.av1);
    r.av2_db = linear_to_db(r.av2);
    r.a0_db = linear_to_db(r.a0);

    const double two_pi = 2.0 * std::numbers::pi;
    r.gbw = r.gm12 / (two_pi * d.c_c);
    r.p1 = r.gbw / r.a0;
    r.p2 = r.gm6 / (two_pi * spec.c_load);
    r.z1 = r.gm6 / (two_pi * d.c_c);
    r.pm = pm_dominant_pole(r.gbw, r.p2, r.z1);
    r.alpha = (r.gm12 / d.i_d1) / (r.gm6 / d.i_d6);
    r.pm_alpha_form = phase_margin(r.alpha, d.i_d1, d.i_d6, spec.c_load, d.c_c);

    const double r_ss = 1.0 / r.gds5;
    r.cmrr = r.av1 * 2.0 * r.gm34 * r_ss;
    r.cmrr_db = linear_to_db(r.cmrr);
    r.slew = d.i_d5 / d.c_c;
    r.power = spec.vdd * (d.i_d5 + d.i_d6 + d.i_d8);

    r.verdicts = check_against_spec(r, spec);
    return r;
}

BodePoint bode_point(const AmpReport& rep, double f) {
    const double x1 = f / rep.p1;
    const double x2 = f / rep.p2;
    const double xz = f / rep.z1;
    BodePoint b;
    b.freq = f;
    b.mag_db = 20.0 * std::log10(rep.a0) + 10.0 * std::log10(1.0 + xz * xz) -
               10.0 * std::log10(1.0 + x1 * x1) - 10.0 * std::log10(1.0 + x2 * x2);
    // Right-half-plane zero: lags like a pole.
    b.phase_deg = -(std::atan(x1) + std::atan(x2) + std::atan(xz)) * kDeg;
    return b;
}

std::vector<BodePoint> bode(const AmpReport& rep, double f_start, double f_stop,
                            int points_per_decade) {
    if (!(f_start > 0.0) || !(f_stop > f_start)) {
        throw InvalidArgument("bode sweep needs 0 < f_start < f_stop");
    }
    if (points_per_decade < 1) throw InvalidArgument("points_per_decade must be >= 1");

    const double decades = std::log10(f_stop / f_start);
    const auto n = static_cast<long>(std::floor(decades * points_per_decade + 1e-9));
    std::vector<BodePoint> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k) {
        const double f = k == 0 ? f_start
                                : f_start * std::pow(10.0, static_cast<double>(k) /
                                                               points_per_decade);
        out.push_back(bode_point(rep, f));
    }
    return out;
}

VerdictTable check_against_spec(const AmpReport& rep, const AmpSpec& spec) {
    VerdictTable t;
    auto add = [&](std::string key, std::string label, std::string unit, double value,
                   double target, Sense sense, double tol = 0.0) {
        Verdict v{std::move(key), std::move(label), std::move(unit), value, target, tol, sense,
                  false};
        switch (sense) {
        case Sense::AtLeast: v.pass = value >= target; break;
        case Sense::AtMost: v.pass = value <= target; break;
        case Sense::Within: v.pass = std::abs(value - target) <= tol * std::abs(target); break;
        }
        t.rows.push_back(std::move(v));
    };

    add("dc_gain", "DC gain (A_o)", "V/V", rep.a0, spec.total_gain(), Sense::AtLeast);
    add("gbw", "Gain Bandwidth Product (GBW)", "Hz", rep.gbw, spec.gbw, Sense::Within, 0.05);
    add("phase_margin", "Phase Margin (in degrees)", "deg", rep.pm, spec.pm_target,
        Sense::AtLeast);
    add("cmrr", "CMRR", "V/V", rep.cmrr, spec.cmrr_target, Sense::AtLeast);
    add("slew_rate", "Slew Rate", "V/s", rep.slew, spec.slew_rate, Sense::AtLeast);
    add("power", "Power Dissipation", "W", rep.power, spec.power_max, Sense::AtMost);

    t.overall = true;
    for (const auto& v : t.rows) t.overall = t.overall && v.pass;
    return t;
}

} // namespace gmid
