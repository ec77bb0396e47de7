#include "gmid/fileio.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "gmid/errors.hpp"

namespace gmid {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

fs::path temp_sibling(const fs::path& path) {
    fs::path tmp = path;
    tmp += ".tmp";
    return tmp;
}

void write_temp(const fs::path& tmp, const std::string& content) {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw Error("write to '" + tmp.string() + "' failed");
    }
}

} // namespace

void write_file_atomic(const fs::path& path, const std::string& content) {
    write_files_atomic({{path, content}});
}

void write_files_atomic(const std::vector<std::pair<fs::path, std::string>>& files) {
    std::vector<fs::path> temps;
    auto cleanup = [&]() {
        std::error_code ec;
        for (const auto& t : temps) fs::remove(t, ec);
    };
    try {
        for (const auto& [path, content] : files) {
            auto tmp = temp_sibling(path);
            write_temp(tmp, content);
            temps.push_back(tmp);
        }
    } catch (...) {
        cleanup();
        throw;
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::error_code ec;
        fs::rename(temps[i], files[i].first, ec);
        if (ec) {
            cleanup();
            throw Error("cannot rename into '" + files[i].first.string() + "': " + ec.message());
        }
    }
}

} // namespace gmid
