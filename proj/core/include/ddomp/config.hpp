#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ddomp {

/// Flat key=value configuration with dotted section prefixes (frame.L=128).
/// '#' starts a comment; values keep internal spaces trimmed at the ends.
/// Serialization is sorted by key, which makes the text form canonical.
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig parse(const std::string& text);
    static KeyValueConfig load(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    long get_int(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;  // "inf" allowed
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;

    /// Keys read through any getter so far; used to reject unknown keys.
    const std::map<std::string, std::string>& entries() const { return entries_; }

    std::string serialize() const;
    std::uint64_t hash() const;

private:
    std::map<std::string, std::string> entries_;
};

std::string format_double(double v);

}  // namespace ddomp
