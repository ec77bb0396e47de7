#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <variant>

#include "gmid/lut.hpp"

namespace gmid {

/// Target specification of the two-stage Miller op-amp (SI units throughout).
struct AmpSpec {
    double vdd = 0.9;              // V
    double temperature = 300.0;    // K
    double noise_density = 8e-9;   // V/sqrt(Hz)
    double gbw = 60e6;             // Hz
    double c_load = 4e-12;         // F
    double slew_rate = 18e6;       // V/s
    double av1_target = 0.0;       // linear
    double av2_target = 0.0;       // linear
    double cmrr_target = 0.0;      // linear
    double pm_target = 61.3;       // degrees
    double vcm_low = 0.125;        // V, echoed only
    double power_max = 0.29e-3;    // W

    double total_gain() const noexcept { return av1_target * av2_target; }
    void validate() const;

    /// Splits a total gain evenly (in dB) between the two stages.
    void set_total_gain_db(double gain_db);

    /// Reference targets: 0.9 V, 60 MHz, 4 pF, 18 V/us, 61.3 deg, 40.4 dB.
    static AmpSpec reference();
};

double db_to_linear(double db);
double linear_to_db(double ratio);

/// Tunables for the parts of the procedure the charts alone do not pin down.
struct SynthOptions {
    double input_gm_id_max = 20.0;   // 1/V, caps the input-pair current efficiency
    double load_gm_id_init = 10.0;   // 1/V, first guess for M3/M4
    double mirror_gm_id = 10.0;      // 1/V, M5/M7/M8 bias
    double ref_current_ratio = 0.1;  // i_d8 / i_d5
    double pm_guard_deg = 0.05;      // added to pm_target when solving alpha
    double width_grid = 10e-9;       // m
    int active_load_max_rounds = 5;
    double active_load_tol = 1e-6;   // relative slack in the load check

    void validate() const;
};

enum Device : std::size_t { M1 = 0, M2, M3, M4, M5, M6, M7, M8, kDeviceCount };

std::string_view device_name(std::size_t index);

struct DeviceSize {
    double w = 0.0;  // m
    double l = 0.0;  // m
};

struct AmpDesign {
    std::array<DeviceSize, kDeviceCount> devices{};
    double c_c = 0.0;
    double i_d1 = 0.0, i_d5 = 0.0, i_d6 = 0.0, i_d7 = 0.0, i_d8 = 0.0;
    double alpha = 0.0;
    double vgs1 = 0.0, vgs34 = 0.0, vgs5 = 0.0, vgs6 = 0.0;
    double gm12 = 0.0, gm34 = 0.0, gm6 = 0.0;
    double gds12 = 0.0, gds34 = 0.0, gds5 = 0.0, gds6 = 0.0, gds7 = 0.0;
    double id1_over_id6_bound = 0.0;
    int active_load_rounds = 0;
};

// Individual design steps, in procedure order.

double gm_from_noise(double noise_density, double temperature);
double compensation_cap(double gm12, double gbw);

struct TailCurrents {
    double i_d5;
    double i_d1;
};
TailCurrents tail_currents(double slew_rate, double c_c);

struct StageConductances {
    double gds12;
    double gds34;
};
StageConductances stage1_conductances(double gm12, double av1_target);

struct SizedDevice {
    double w;
    double l;
    double vgs;
};

/// Chart-driven sizing: picks L from the intrinsic-gain need, Vgs from gm/id,
/// then W from the current density, rounded up to `width_grid`.
SizedDevice size_device(const DeviceLUT& lut, double gm, double i_d, double gds_max,
                        double width_grid = 10e-9);

struct Accept {};
struct Reassess {
    double gm_id;
};
using LoadVerdict = std::variant<Accept, Reassess>;

/// Accepts when the efficiency actually reached at (l34, vgs34) does not exceed
/// the assumption (times 1 + rel_tol); otherwise carries the actual value.
LoadVerdict active_load_check(const DeviceLUT& lut_n, double vgs34, double l34,
                              double assumed_gm_id, double rel_tol = 0.0);

double tail_requirement(double cmrr_target, double gm12, double gds12, double gds34, double gm34);
double second_stage_current(double i_d1, double c_c, double c_load);
double phase_margin(double alpha, double i_d1, double i_d6, double c_load, double c_c);
double solve_alpha(double pm_target, double i_d1, double i_d6, double c_load, double c_c);
double mirror_width(double w5, double i_d8, double i_d5);

/// Runs the whole procedure. Throws SynthesisError naming the failing stage.
AmpDesign synthesize(const AmpSpec& spec, const DeviceLUT& lut_n, const DeviceLUT& lut_p,
                     const SynthOptions& options = {});

} // namespace gmid
