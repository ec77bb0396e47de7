#pragma once

#include <string>
#include <string_view>

namespace gmid {

enum class Polarity { N, P };

std::string_view to_string(Polarity p) noexcept;

/// Boltzmann constant (J/K) and elementary charge (C), exact SI values.
inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kElementaryCharge = 1.602176634e-19;

double thermal_voltage(double temperature_k);

/// Analytic weak-to-strong-inversion surrogate for one device flavour.
///
/// PMOS parameters use the magnitude convention: vth0, vgs and vds are
/// stored as positive Vsg/Vsd values.
struct DeviceParams {
    Polarity polarity = Polarity::N;
    double vth0 = 0.30;          // V
    double n = 1.3;              // subthreshold slope factor
    double ut = 0.0258520;       // V, kT/q
    double k_prime = 300e-6;     // A/V^2
    double lambda0 = 0.02e-6;    // m/V, lambda(L) = lambda0 / L
    double vds_char = 0.45;      // V

    double lambda(double l) const noexcept { return lambda0 / l; }

    /// Throws InvalidArgument if a field is out of range, or if
    /// lambda(l) * vds_char >= 1 anywhere in [l_min, l_max].
    void validate(double l_min, double l_max) const;

    static DeviceParams default_nmos(double temperature_k = 300.0);
    static DeviceParams default_pmos(double temperature_k = 300.0);
};

struct DeviceMetrics {
    double id_per_w = 0.0;     // A/m
    double gm_over_id = 0.0;   // 1/V
    double gm_over_gds = 0.0;  // +inf when lambda0 == 0
    double vgs = 0.0;          // V
    double l = 0.0;            // m
};

DeviceMetrics eval_device(const DeviceParams& params, double vgs, double vds, double l);

/// Uniform sweep over channel length and gate drive.
struct SweepGrid {
    double l_min = 65e-9;
    double l_max = 180e-9;
    int n_l = 10;
    double vgs_min = 0.1;
    double vgs_max = 0.9;
    int n_vgs = 10;

    void validate() const;
};

class DeviceLUT;

/// Characterizes the device over `grid` at vds = params.vds_char.
DeviceLUT generate_lut(const DeviceParams& params, const SweepGrid& grid);

} // namespace gmid
