#include "gmid/kv.hpp"

#include <sstream>

#include "gmid/errors.hpp"
#include "gmid/numfmt.hpp"

namespace gmid {

void KvDocument::set(std::string key, std::string value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

void KvDocument::set(std::string key, double value) { set(std::move(key), format_number(value)); }
void KvDocument::set(std::string key, int value) { set(std::move(key), std::to_string(value)); }
void KvDocument::set(std::string key, bool value) {
    set(std::move(key), std::string(value ? "true" : "false"));
}

const std::string* KvDocument::find(std::string_view key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return &v;
    }
    return nullptr;
}

const std::string& KvDocument::text(std::string_view key) const {
    const auto* v = find(key);
    if (v == nullptr) throw ParseError("missing key '" + std::string(key) + "'", 0);
    return *v;
}

double KvDocument::number(std::string_view key) const {
    const auto& s = text(key);
    double out = 0.0;
    if (!parse_number(s, out)) {
        throw ParseError("key '" + std::string(key) + "' is not a number: '" + s + "'", 0);
    }
    return out;
}

std::string KvDocument::str() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

KvDocument KvDocument::parse(const std::string& text) {
    KvDocument doc;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value", lineno);
        std::string key = line.substr(0, eq);
        if (doc.find(key) != nullptr) throw ParseError("duplicate key '" + key + "'", lineno);
        doc.entries_.emplace_back(std::move(key), line.substr(eq + 1));
    }
    return doc;
}

} // namespace gmid
