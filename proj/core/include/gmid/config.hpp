#pragma once

#include <filesystem>
#include <string>

#include "gmid/device.hpp"
#include "gmid/synth.hpp"

namespace gmid {

struct BodeSweep {
    double f_start = 1e3;
    double f_stop = 1e9;
    int points_per_decade = 50;
};

/// Everything one reproducible run needs, read from a single JSON document.
struct ToolConfig {
    double characterization_temperature = 300.0;  // K
    DeviceParams nmos = DeviceParams::default_nmos();
    DeviceParams pmos = DeviceParams::default_pmos();
    SweepGrid sweep;
    AmpSpec spec = AmpSpec::reference();
    SynthOptions synth;
    BodeSweep bode;
    std::string output_dir = "out";
};

/// Parses a config document. Missing keys keep their defaults; unknown keys
/// and type mismatches raise ParseError carrying the JSON path of the field.
ToolConfig parse_config(const std::string& json_text);
ToolConfig load_config(const std::filesystem::path& path);

} // namespace gmid
