#include "commands.hpp"

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gmid/config.hpp"
#include "gmid/errors.hpp"
#include "gmid/fileio.hpp"
#include "gmid/kv.hpp"
#include "gmid/lut.hpp"
#include "gmid/report_io.hpp"
#include "gmid/synth.hpp"
#include "gmid/verify.hpp"

namespace gmid::cli {

namespace {

using Files = std::vector<std::pair<fs::path, std::string>>;

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw Error("cannot create output directory '" + dir.string() + "'");
    }
}

DeviceLUT load_lut_checked(const fs::path& path, std::optional<Polarity> expect) {
    if (!fs::exists(path)) throw Error("LUT file not found: '" + path.string() + "'");
    try {
        auto lut = load_lut(path);
        if (expect && lut.polarity() != *expect) {
            throw Error("LUT '" + path.string() + "' has polarity " +
                        std::string(to_string(lut.polarity())) + ", expected " +
                        std::string(to_string(*expect)));
        }
        return lut;
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
}

ToolConfig load_config_checked(const fs::path& path) {
    if (!fs::exists(path)) throw ParseError("config file not found: '" + path.string() + "'", 0);
    try {
        return load_config(path);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
}

// Maps the error hierarchy onto exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SynthesisError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kFail;
    } catch (const Infeasible& e) {
        err << "infeasible: " << e.what() << '\n';
        return kFail;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace

int characterize(const std::optional<fs::path>& config, const fs::path& out_dir, std::ostream& err) {
    return guarded(err, [&] {
        const ToolConfig cfg = config ? load_config_checked(*config) : ToolConfig{};
        const auto n = generate_lut(cfg.nmos, cfg.sweep);
        const auto p = generate_lut(cfg.pmos, cfg.sweep);
        ensure_dir(out_dir);
        write_files_atomic({{out_dir / "nmos_lut.csv", format_lut(n)},
                            {out_dir / "pmos_lut.csv", format_lut(p)}});
        return static_cast<int>(kOk);
    });
}

int charts(const fs::path& lut_path, const fs::path& out_dir, std::ostream& err) {
    return guarded(err, [&] {
        const auto lut = load_lut_checked(lut_path, std::nullopt);
        const std::string stem = lut.polarity() == Polarity::P ? "pmos" : "nmos";
        Files files;
        for (const auto& panel : emit_charts(lut)) {
            std::ostringstream os;
            write_chart_csv(panel, os);
            files.emplace_back(out_dir / (stem + "_panel" + std::to_string(panel.index) + ".csv"),
                               os.str());
        }
        ensure_dir(out_dir);
        write_files_atomic(files);
        return static_cast<int>(kOk);
    });
}

int size(const fs::path& config, const fs::path& lut_n, const fs::path& lut_p,
         const fs::path& out_dir, std::ostream& err) {
    return guarded(err, [&] {
        const auto cfg = load_config_checked(config);
        const auto n = load_lut_checked(lut_n, Polarity::N);
        const auto p = load_lut_checked(lut_p, Polarity::P);
        const auto design = synthesize(cfg.spec, n, p, cfg.synth);
        ensure_dir(out_dir);
        write_file_atomic(out_dir / "design.kv", design_to_kv(design).str());
        return static_cast<int>(kOk);
    });
}

int verify(const fs::path& design_path, const fs::path& lut_n, const fs::path& lut_p,
           const fs::path& config, const fs::path& out_dir, std::ostream& err) {
    return guarded(err, [&] {
        const auto cfg = load_config_checked(config);
        const auto n = load_lut_checked(lut_n, Polarity::N);
        const auto p = load_lut_checked(lut_p, Polarity::P);
        if (!fs::exists(design_path)) {
            throw Error("design file not found: '" + design_path.string() + "'");
        }
        AmpDesign design;
        try {
            design = design_from_kv(KvDocument::parse(read_file(design_path)));
        } catch (const ParseError& e) {
            throw ParseError(design_path.string() + ": " + e.what(), 0);
        }

        AmpReport rep;
        try {
            rep = report(design, n, p, cfg.spec);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), 0);
        } catch (const RangeError& e) {
            throw ParseError(e.what(), 0);
        }
        const auto points =
            bode(rep, cfg.bode.f_start, cfg.bode.f_stop, cfg.bode.points_per_decade);

        ensure_dir(out_dir);
        write_files_atomic({{out_dir / "report.kv", report_to_kv(rep, cfg.spec).str()},
                            {out_dir / "bode.csv", bode_csv(points)},
                            {out_dir / "verdicts.kv", verdicts_to_kv(rep.verdicts).str()}});
        for (const auto& v : rep.verdicts.rows) {
            if (!v.pass) err << "verdict failed: " << v.label << '\n';
        }
        return static_cast<int>(rep.verdicts.overall ? kOk : kFail);
    });
}

} // namespace gmid::cli
