#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gmid {

/// Flat `key=value` document with stable insertion order.
///
/// Blank lines and lines starting with '#' are ignored on parse. Keys must
/// be unique.
class KvDocument {
public:
    void set(std::string key, std::string value);
    void set(std::string key, double value);
    void set(std::string key, int value);
    void set(std::string key, bool value);

    const std::string* find(std::string_view key) const;
    double number(std::string_view key) const;
    const std::string& text(std::string_view key) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
        return entries_;
    }

    std::string str() const;
    static KvDocument parse(const std::string& text);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

} // namespace gmid
