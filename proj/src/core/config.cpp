#include "core/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace twostrain {

namespace {

const std::set<std::string> kKnownSections = {"simulate", "analyze", "phase",
                                              "scan", "fit"};

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void config_fail(const std::string& path, std::size_t line,
                              const std::string& what) {
    std::ostringstream os;
    os << path << ":" << line << ": " << what;
    raise(errc::config_error, os.str());
}

} // namespace

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        raise(errc::config_error, "cannot open config '" + path + "'");
    }
    RunConfig out;
    std::string line;
    std::string current;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                config_fail(path, lineno, "malformed section header");
            }
            current = trim(line.substr(1, line.size() - 2));
            if (!kKnownSections.count(current)) {
                config_fail(path, lineno,
                            "unknown section '" + current + "'");
            }
            out.sections_[current]; // may legitimately stay empty
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            config_fail(path, lineno, "expected 'key = value'");
        }
        if (current.empty()) {
            config_fail(path, lineno, "key outside any [section]");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            config_fail(path, lineno, "empty key");
        }
        auto& section = out.sections_[current];
        if (section.count(key)) {
            config_fail(path, lineno, "duplicate key '" + key + "'");
        }
        section[key] = value;
    }
    return out;
}

bool RunConfig::has_section(const std::string& name) const {
    return sections_.count(name) != 0;
}

const std::map<std::string, std::string>& RunConfig::section(
    const std::string& name) const {
    const auto it = sections_.find(name);
    if (it == sections_.end()) {
        raise(errc::config_error, "missing [" + name + "] section");
    }
    return it->second;
}

SectionReader::SectionReader(const RunConfig& config, std::string section)
    : kv_(&config.section(section)), section_(std::move(section)) {}

bool SectionReader::has(const std::string& key) const {
    return kv_->count(key) != 0;
}

std::string SectionReader::raw(const std::string& key) {
    const auto it = kv_->find(key);
    if (it == kv_->end()) {
        raise(errc::config_error,
              "missing key '" + key + "' in [" + section_ + "]");
    }
    consumed_.insert(key);
    return it->second;
}

std::string SectionReader::get_string(const std::string& key) {
    return raw(key);
}

std::string SectionReader::get_string(const std::string& key,
                                      const std::string& fallback) {
    if (!has(key)) {
        return fallback;
    }
    return raw(key);
}

double SectionReader::get_double(const std::string& key) {
    const std::string text = raw(key);
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            raise(errc::config_error, "key '" + key +
                                          "' has trailing characters: '" +
                                          text + "'");
        }
        return v;
    } catch (const ModelError&) {
        throw;
    } catch (const std::exception&) {
        raise(errc::config_error,
              "key '" + key + "' is not a number: '" + text + "'");
    }
}

double SectionReader::get_double(const std::string& key, double fallback) {
    if (!has(key)) {
        return fallback;
    }
    return get_double(key);
}

std::uint64_t SectionReader::get_u64(const std::string& key,
                                     std::uint64_t fallback) {
    if (!has(key)) {
        return fallback;
    }
    const std::string text = raw(key);
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception&) {
        raise(errc::config_error,
              "key '" + key + "' is not an unsigned integer: '" + text +
                  "'");
    }
}

std::size_t SectionReader::get_size(const std::string& key,
                                    std::size_t fallback) {
    return static_cast<std::size_t>(get_u64(key, fallback));
}

bool SectionReader::get_bool(const std::string& key, bool fallback) {
    if (!has(key)) {
        return fallback;
    }
    const std::string text = raw(key);
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    raise(errc::config_error,
          "key '" + key + "' must be true/false: '" + text + "'");
}

void SectionReader::finish() const {
    for (const auto& [key, value] : *kv_) {
        if (!consumed_.count(key)) {
            raise(errc::config_error,
                  "unknown key '" + key + "' in [" + section_ + "]");
        }
    }
}

} // namespace twostrain
