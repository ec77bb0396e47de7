#pragma once

#include <string>
#include <vector>

#include "gmid/lut.hpp"
#include "gmid/synth.hpp"

namespace gmid {

enum class Sense { AtLeast, AtMost, Within };

struct Verdict {
    std::string key;     // machine name, e.g. "dc_gain"
    std::string label;   // performance-table row name
    std::string unit;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;  // relative, only for Sense::Within
    Sense sense = Sense::AtLeast;
    bool pass = false;
};

struct VerdictTable {
    std::vector<Verdict> rows;
    bool overall = false;
};

/// Small-signal performance of a sized design.
struct AmpReport {
    double av1 = 0.0, av2 = 0.0, a0 = 0.0;
    double av1_db = 0.0, av2_db = 0.0, a0_db = 0.0;
    double gbw = 0.0;                    // Hz
    double p1 = 0.0, p2 = 0.0, z1 = 0.0;  // Hz
    double pm = 0.0;                     // degrees, dominant-pole form
    double pm_alpha_form = 0.0;          // degrees, alpha form
    double alpha = 0.0;
    double cmrr = 0.0, cmrr_db = 0.0;
    double slew = 0.0;                   // V/s
    double power = 0.0;                  // W
    // Operating-point small-signal values re-read from the LUTs.
    double gm12 = 0.0, gm34 = 0.0, gm6 = 0.0;
    double gds12 = 0.0, gds34 = 0.0, gds5 = 0.0, gds6 = 0.0, gds7 = 0.0;
    VerdictTable verdicts;
};

struct BodePoint {
    double freq = 0.0;       // Hz
    double mag_db = 0.0;
    double phase_deg = 0.0;  // unwrapped, 0 at DC
};

/// 90 - atan(gbw/p2) - atan(gbw/z1), in degrees.
double pm_dominant_pole(double gbw, double p2, double z1);

AmpReport report(const AmpDesign& design, const DeviceLUT& lut_n, const DeviceLUT& lut_p,
                 const AmpSpec& spec);

/// A(jf) = a0 (1 - jf/z1) / ((1 + jf/p1)(1 + jf/p2)); f = 0 gives the DC limit.
BodePoint bode_point(const AmpReport& rep, double freq);

/// Log-spaced sweep starting exactly at f_start.
std::vector<BodePoint> bode(const AmpReport& rep, double f_start, double f_stop,
                            int points_per_decade);

VerdictTable check_against_spec(const AmpReport& rep, const AmpSpec& spec);

} // namespace gmid
