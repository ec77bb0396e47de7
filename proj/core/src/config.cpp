#include "gmid/config.hpp"

#include <set>

#include <json.hpp>

#include "gmid/errors.hpp"
#include "gmid/fileio.hpp"

namespace gmid {

namespace {

using nlohmann::json;

// Walks one JSON object, remembering which keys were consumed.
class Section {
public:
    Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ParseError(path_ + ": expected an object", 0);
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    double number(const std::string& key, double fallback) {
        if (!take(key)) return fallback;
        const auto& v = obj_.at(key);
        if (!v.is_number()) throw ParseError(field(key) + ": expected a number", 0);
        return v.get<double>();
    }

    int integer(const std::string& key, int fallback) {
        if (!take(key)) return fallback;
        const auto& v = obj_.at(key);
        if (!v.is_number_integer()) throw ParseError(field(key) + ": expected an integer", 0);
        return v.get<int>();
    }

    std::string string(const std::string& key, std::string fallback) {
        if (!take(key)) return fallback;
        const auto& v = obj_.at(key);
        if (!v.is_string()) throw ParseError(field(key) + ": expected a string", 0);
        return v.get<std::string>();
    }

    template <class F>
    void child(const std::string& key, F&& f) {
        if (!take(key)) return;
        Section s(obj_.at(key), field(key));
        f(s);
        s.finish();
    }

    void finish() const {
        for (const auto& [k, v] : obj_.items()) {
            if (!used_.count(k)) throw ParseError(field(k) + ": unknown key", 0);
        }
    }

    std::string field(const std::string& key) const { return path_ + "/" + key; }

private:
    bool take(const std::string& key) {
        if (!obj_.contains(key)) return false;
        used_.insert(key);
        return true;
    }

    const json& obj_;
    std::string path_;
    std::set<std::string> used_;
};

void read_device(Section& s, DeviceParams& p, double temperature) {
    p.ut = thermal_voltage(temperature);
    p.vth0 = s.number("vth0_V", p.vth0);
    p.n = s.number("n", p.n);
    p.k_prime = s.number("k_prime_A_per_V2", p.k_prime);
    p.lambda0 = s.number("lambda0_m_per_V", p.lambda0);
    p.vds_char = s.number("vds_char_V", p.vds_char);
}

} // namespace

ToolConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }

    ToolConfig cfg;
    Section root(doc, "");

    // The spec comes first: vdd sets the default characterization drain bias.
    root.child("spec", [&](Section& s) {
        auto& sp = cfg.spec;
        sp.vdd = s.number("vdd_V", sp.vdd);
        sp.temperature = s.number("temperature_K", sp.temperature);
        sp.noise_density = s.number("noise_density_V_per_rtHz", sp.noise_density);
        sp.gbw = s.number("gbw_Hz", sp.gbw);
        sp.c_load = s.number("c_load_F", sp.c_load);
        sp.slew_rate = s.number("slew_rate_V_per_s", sp.slew_rate);
        if (s.has("av1_dB") || s.has("av2_dB")) {
            if (!s.has("av1_dB") || !s.has("av2_dB")) {
                throw ParseError(s.field("av1_dB") + ": av1_dB and av2_dB must be given together",
                                 0);
            }
            if (s.has("gain_dB")) {
                throw ParseError(s.field("gain_dB") + ": give either gain_dB or av1_dB/av2_dB", 0);
            }
            sp.av1_target = db_to_linear(s.number("av1_dB", 0.0));
            sp.av2_target = db_to_linear(s.number("av2_dB", 0.0));
        } else {
            sp.set_total_gain_db(s.number("gain_dB", 40.4));
        }
        sp.cmrr_target = db_to_linear(s.number("cmrr_dB", 68.0));
        sp.pm_target = s.number("pm_deg", sp.pm_target);
        sp.vcm_low = s.number("vcm_low_V", sp.vcm_low);
        sp.power_max = s.number("power_max_W", sp.power_max);
    });

    cfg.nmos.vds_char = cfg.pmos.vds_char = cfg.spec.vdd / 2.0;
    cfg.nmos.ut = cfg.pmos.ut = thermal_voltage(cfg.characterization_temperature);
    root.child("devices", [&](Section& s) {
        cfg.characterization_temperature =
            s.number("temperature_K", cfg.characterization_temperature);
        cfg.nmos.ut = cfg.pmos.ut = thermal_voltage(cfg.characterization_temperature);
        s.child("nmos", [&](Section& d) { read_device(d, cfg.nmos, cfg.characterization_temperature); });
        s.child("pmos", [&](Section& d) { read_device(d, cfg.pmos, cfg.characterization_temperature); });
    });

    root.child("sweep", [&](Section& s) {
        auto& g = cfg.sweep;
        g.l_min = s.number("l_min_m", g.l_min);
        g.l_max = s.number("l_max_m", g.l_max);
        g.n_l = s.integer("n_l", g.n_l);
        g.vgs_min = s.number("vgs_min_V", g.vgs_min);
        g.vgs_max = s.number("vgs_max_V", g.vgs_max);
        g.n_vgs = s.integer("n_vgs", g.n_vgs);
    });

    root.child("synthesis", [&](Section& s) {
        auto& o = cfg.synth;
        o.input_gm_id_max = s.number("input_gm_id_max_per_V", o.input_gm_id_max);
        o.load_gm_id_init = s.number("load_gm_id_init_per_V", o.load_gm_id_init);
        o.mirror_gm_id = s.number("mirror_gm_id_per_V", o.mirror_gm_id);
        o.ref_current_ratio = s.number("ref_current_ratio", o.ref_current_ratio);
        o.pm_guard_deg = s.number("pm_guard_deg", o.pm_guard_deg);
        o.width_grid = s.number("width_grid_m", o.width_grid);
        o.active_load_max_rounds = s.integer("active_load_max_rounds", o.active_load_max_rounds);
        o.active_load_tol = s.number("active_load_tol", o.active_load_tol);
    });

    root.child("bode", [&](Section& s) {
        cfg.bode.f_start = s.number("f_start_Hz", cfg.bode.f_start);
        cfg.bode.f_stop = s.number("f_stop_Hz", cfg.bode.f_stop);
        cfg.bode.points_per_decade = s.integer("points_per_decade", cfg.bode.points_per_decade);
    });

    cfg.output_dir = root.string("output_dir", cfg.output_dir);
    root.finish();

    try {
        cfg.sweep.validate();
        cfg.nmos.validate(cfg.sweep.l_min, cfg.sweep.l_max);
        cfg.pmos.validate(cfg.sweep.l_min, cfg.sweep.l_max);
        cfg.spec.validate();
        cfg.synth.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("config: ") + e.what(), 0);
    }
    return cfg;
}

ToolConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_file(path));
}

} // namespace gmid
