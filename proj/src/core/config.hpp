#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "core/types.hpp"

namespace twostrain {

/// Flat typed key-value file with one section per command:
///
///   [simulate]
///   model = full
///   beta1 = 0.4
///
/// `#` starts a comment. Unknown section names, duplicate keys and — via
/// SectionReader — unknown keys are hard errors.
class RunConfig {
public:
    static RunConfig load(const std::string& path);

    bool has_section(const std::string& name) const;
    const std::map<std::string, std::string>& section(
        const std::string& name) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Typed access to one section; every get marks its key as consumed and
/// finish() rejects whatever was not recognized.
class SectionReader {
public:
    SectionReader(const RunConfig& config, std::string section);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key,
                           const std::string& fallback);
    double get_double(const std::string& key);
    double get_double(const std::string& key, double fallback);
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
    std::size_t get_size(const std::string& key, std::size_t fallback);
    bool get_bool(const std::string& key, bool fallback);

    /// Throws config_error naming any key that was never consumed.
    void finish() const;

private:
    std::string raw(const std::string& key);

    const std::map<std::string, std::string>* kv_;
    std::string section_;
    std::set<std::string> consumed_;
};

} // namespace twostrain
