#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gm/ID sizing and verification for a two-stage Miller op-amp"};
    app.require_subcommand(1);

    std::string config, out, lut, lut_n, lut_p, design;

    auto* characterize = app.add_subcommand("characterize", "Generate nMOS/pMOS sizing LUTs");
    characterize->add_option("--config", config, "Tool config (JSON); defaults if omitted")
        ->check(CLI::ExistingFile);
    characterize->add_option("--out", out, "Output directory")->required();

    auto* charts = app.add_subcommand("charts", "Emit sizing-chart series from a LUT");
    charts->add_option("--lut", lut, "LUT CSV")->required();
    charts->add_option("--out", out, "Output directory")->required();

    auto* size = app.add_subcommand("size", "Size the op-amp from a spec and two LUTs");
    size->add_option("--config", config, "Tool config (JSON)")->required();
    size->add_option("--lut-n", lut_n, "nMOS LUT CSV")->required();
    size->add_option("--lut-p", lut_p, "pMOS LUT CSV")->required();
    size->add_option("--out", out, "Output directory")->required();

    auto* verify = app.add_subcommand("verify", "Verify a sized design against the spec");
    verify->add_option("--design", design, "design.kv from `size`")->required();
    verify->add_option("--config", config, "Tool config (JSON)")->required();
    verify->add_option("--lut-n", lut_n, "nMOS LUT CSV")->required();
    verify->add_option("--lut-p", lut_p, "pMOS LUT CSV")->required();
    verify->add_option("--out", out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return gmid::cli::kUsage;
    }

    namespace cli = gmid::cli;
    if (characterize->parsed()) {
        std::optional<cli::fs::path> cfg;
        if (!config.empty()) cfg = config;
        return cli::characterize(cfg, out, std::cerr);
    }
    if (charts->parsed()) return cli::charts(lut, out, std::cerr);
    if (size->parsed()) return cli::size(config, lut_n, lut_p, out, std::cerr);
    return cli::verify(design, lut_n, lut_p, config, out, std::cerr);
}
