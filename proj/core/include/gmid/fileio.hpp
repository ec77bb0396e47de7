#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace gmid {

std::string read_file(const std::filesystem::path& path);

/// Writes via a sibling temp file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// All-or-nothing write of several files: every temp file is written before any rename.
void write_files_atomic(const std::vector<std::pair<std::filesystem::path, std::string>>& files);

} // namespace gmid
