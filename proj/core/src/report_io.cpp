#include "gmid/report_io.hpp"

#include <cmath>

#include "gmid/errors.hpp"
#include "gmid/numfmt.hpp"

namespace gmid {

namespace {

std::string prefix(std::size_t dev) { return std::string(device_name(dev)) + "."; }

// Micrometres rounded to the picometre, for the human-facing listing.
double to_um(double m) { return std::round(m * 1e12) / 1e6; }

} // namespace

KvDocument design_to_kv(const AmpDesign& d) {
    KvDocument kv;
    kv.set("kind", std::string("amp_design"));
    for (std::size_t i = 0; i < kDeviceCount; ++i) {
        kv.set(prefix(i) + "w_um", to_um(d.devices[i].w));
        kv.set(prefix(i) + "l_um", to_um(d.devices[i].l));
    }
    for (std::size_t i = 0; i < kDeviceCount; ++i) {
        kv.set(prefix(i) + "w_m", d.devices[i].w);
        kv.set(prefix(i) + "l_m", d.devices[i].l);
    }
    kv.set("gm12_S", d.gm12);
    kv.set("c_c_F", d.c_c);
    kv.set("i_d1_A", d.i_d1);
    kv.set("i_d5_A", d.i_d5);
    kv.set("i_d6_A", d.i_d6);
    kv.set("i_d7_A", d.i_d7);
    kv.set("i_d8_A", d.i_d8);
    kv.set("id1_over_id6_bound", d.id1_over_id6_bound);
    kv.set("alpha", d.alpha);
    kv.set("gm34_S", d.gm34);
    kv.set("gm6_S", d.gm6);
    kv.set("gds12_S", d.gds12);
    kv.set("gds34_S", d.gds34);
    kv.set("gds5_S", d.gds5);
    kv.set("gds6_S", d.gds6);
    kv.set("gds7_S", d.gds7);
    kv.set("vgs1_V", d.vgs1);
    kv.set("vgs34_V", d.vgs34);
    kv.set("vgs5_V", d.vgs5);
    kv.set("vgs6_V", d.vgs6);
    kv.set("active_load_rounds", d.active_load_rounds);
    return kv;
}

AmpDesign design_from_kv(const KvDocument& kv) {
    if (kv.text("kind") != "amp_design") throw ParseError("not an amp_design document", 0);
    AmpDesign d;
    for (std::size_t i = 0; i < kDeviceCount; ++i) {
        d.devices[i].w = kv.number(prefix(i) + "w_m");
        d.devices[i].l = kv.number(prefix(i) + "l_m");
    }
    d.gm12 = kv.number("gm12_S");
    d.c_c = kv.number("c_c_F");
    d.i_d1 = kv.number("i_d1_A");
    d.i_d5 = kv.number("i_d5_A");
    d.i_d6 = kv.number("i_d6_A");
    d.i_d7 = kv.number("i_d7_A");
    d.i_d8 = kv.number("i_d8_A");
    d.id1_over_id6_bound = kv.number("id1_over_id6_bound");
    d.alpha = kv.number("alpha");
    d.gm34 = kv.number("gm34_S");
    d.gm6 = kv.number("gm6_S");
    d.gds12 = kv.number("gds12_S");
    d.gds34 = kv.number("gds34_S");
    d.gds5 = kv.number("gds5_S");
    d.gds6 = kv.number("gds6_S");
    d.gds7 = kv.number("gds7_S");
    d.vgs1 = kv.number("vgs1_V");
    d.vgs34 = kv.number("vgs34_V");
    d.vgs5 = kv.number("vgs5_V");
    d.vgs6 = kv.number("vgs6_V");
    d.active_load_rounds = static_cast<int>(kv.number("active_load_rounds"));
    return d;
}

KvDocument report_to_kv(const AmpReport& r, const AmpSpec& spec) {
    KvDocument kv;
    kv.set("kind", std::string("amp_report"));
    kv.set("supply_V", spec.vdd);
    kv.set("irnv_V_per_rtHz", spec.noise_density);
    kv.set("c_load_F", spec.c_load);
    kv.set("av1", r.av1);
    kv.set("av1_dB", r.av1_db);
    kv.set("av2", r.av2);
    kv.set("av2_dB", r.av2_db);
    kv.set("a0", r.a0);
    kv.set("a0_dB", r.a0_db);
    kv.set("gbw_Hz", r.gbw);
    kv.set("p1_Hz", r.p1);
    kv.set("p2_Hz", r.p2);
    kv.set("z1_Hz", r.z1);
    kv.set("pm_deg", r.pm);
    kv.set("pm_alpha_form_deg", r.pm_alpha_form);
    kv.set("alpha", r.alpha);
    kv.set("cmrr", r.cmrr);
    kv.set("cmrr_dB", r.cmrr_db);
    kv.set("slew_V_per_s", r.slew);
    kv.set("power_W", r.power);
    kv.set("gm12_S", r.gm12);
    kv.set("gm34_S", r.gm34);
    kv.set("gm6_S", r.gm6);
    kv.set("gds12_S", r.gds12);
    kv.set("gds34_S", r.gds34);
    kv.set("gds5_S", r.gds5);
    kv.set("gds6_S", r.gds6);
    kv.set("gds7_S", r.gds7);
    // Echoed from the spec, not derived from the design.
    kv.set("cm_input_low_V", spec.vcm_low);
    kv.set("cm_input_high", std::string("not verified"));
    kv.set("overall_pass", r.verdicts.overall);
    return kv;
}

KvDocument verdicts_to_kv(const VerdictTable& t) {
    KvDocument kv;
    for (const auto& v : t.rows) {
        const std::string p = v.key + ".";
        kv.set(p + "label", v.label);
        kv.set(p + "unit", v.unit);
        kv.set(p + "value", v.value);
        kv.set(p + "target", v.target);
        switch (v.sense) {
        case Sense::AtLeast: kv.set(p + "sense", std::string(">=")); break;
        case Sense::AtMost: kv.set(p + "sense", std::string("<=")); break;
        case Sense::Within:
            kv.set(p + "sense", std::string("within"));
            kv.set(p + "tolerance_rel", v.tolerance);
            break;
        }
        kv.set(p + "pass", v.pass);
    }
    kv.set("overall.pass", t.overall);
    return kv;
}

std::string bode_csv(const std::vector<BodePoint>& points) {
    std::string out = "freq_hz,mag_db,phase_deg\n";
    for (const auto& b : points) {
        out += format_number(b.freq);
        out += ',' + format_number(b.mag_db);
        out += ',' + format_number(b.phase_deg);
        out += '\n';
    }
    return out;
}

} // namespace gmid
