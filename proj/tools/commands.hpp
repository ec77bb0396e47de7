#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace gmid::cli {

namespace fs = std::filesystem;

/// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kFail = 1, kUsage = 2 };

/// Writes nmos_lut.csv and pmos_lut.csv. Without a config the built-in defaults apply.
int characterize(const std::optional<fs::path>& config, const fs::path& out_dir, std::ostream& err);

/// Writes <nmos|pmos>_panel{1,2,3}.csv for one LUT.
int charts(const fs::path& lut, const fs::path& out_dir, std::ostream& err);

/// Writes design.kv.
int size(const fs::path& config, const fs::path& lut_n, const fs::path& lut_p,
         const fs::path& out_dir, std::ostream& err);

/// Writes report.kv, bode.csv and verdicts.kv; returns kOk only if every verdict passes.
int verify(const fs::path& design, const fs::path& lut_n, const fs::path& lut_p,
           const fs::path& config, const fs::path& out_dir, std::ostream& err);

} // namespace gmid::cli
