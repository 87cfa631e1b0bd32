#include "core/csv.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/types.hpp"

namespace twostrain {

namespace {

bool all_digits(const std::string& s, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line,
                             const std::string& what) {
    std::ostringstream os;
    os << path << ":" << line << ": " << what;
    raise(errc::parse_error, os.str());
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double(const std::string& field, const std::string& path,
                    std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) {
            parse_fail(path, line, "trailing characters in '" + field + "'");
        }
        return v;
    } catch (const std::invalid_argument&) {
        parse_fail(path, line, "not a number: '" + field + "'");
    } catch (const std::out_of_range&) {
        parse_fail(path, line, "number out of range: '" + field + "'");
    }
}

/// Reads non-comment lines; returns false at EOF.
class LineReader {
public:
    explicit LineReader(const std::string& path) : path_(path), in_(path) {
        if (!in_) {
            raise(errc::io_error, "cannot open '" + path + "'");
        }
    }

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++lineno_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty() || line[0] == '#') {
                continue;
            }
            return true;
        }
        return false;
    }

    std::size_t lineno() const { return lineno_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ifstream in_;
    std::size_t lineno_ = 0;
};

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec);
    return buf;
}

void atomic_write(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            raise(errc::io_error, "cannot write '" + tmp + "'");
        }
        out << contents;
        if (!out.flush()) {
            raise(errc::io_error, "write failed for '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        raise(errc::io_error,
              "cannot rename '" + tmp + "' to '" + path + "'");
    }
}

} // namespace

Date parse_date(const std::string& text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        !all_digits(text, 0, 4) || !all_digits(text, 5, 7) ||
        !all_digits(text, 8, 10)) {
        raise(errc::parse_error,
              "date '" + text + "' is not in YYYY-MM-DD form");
    }
    const int y = std::stoi(text.substr(0, 4));
    const unsigned m = static_cast<unsigned>(std::stoi(text.substr(5, 2)));
    const unsigned d = static_cast<unsigned>(std::stoi(text.substr(8, 2)));
    const std::chrono::year_month_day ymd{std::chrono::year{y},
                                          std::chrono::month{m},
                                          std::chrono::day{d}};
    if (!ymd.ok()) {
        raise(errc::parse_error, "date '" + text + "' is not a valid day");
    }
    const std::chrono::sys_days days{ymd};
    return {static_cast<int>(days.time_since_epoch().count())};
}

std::string format_date(Date date) {
    const std::chrono::sys_days days{std::chrono::days{date.days}};
    const std::chrono::year_month_day ymd{days};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u",
                  static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CaseData load_case_data(const std::string& path) {
    LineReader reader(path);
    std::string line;
    if (!reader.next(line) || line != "date,new_cases") {
        parse_fail(path, reader.lineno(),
                   "expected header 'date,new_cases'");
    }
    CaseData out;
    while (reader.next(line)) {
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            parse_fail(path, reader.lineno(), "expected 2 fields");
        }
        Date date{};
        try {
            date = parse_date(fields[0]);
        } catch (const ModelError& e) {
            parse_fail(path, reader.lineno(), e.what());
        }
        const double count = parse_double(fields[1], path, reader.lineno());
        if (!out.dates.empty() && !(out.dates.back() < date)) {
            std::ostringstream os;
            os << path << ":" << reader.lineno()
               << ": dates must be strictly increasing";
            raise(errc::non_monotone_dates, os.str());
        }
        if (count < 0.0) {
            std::ostringstream os;
            os << path << ":" << reader.lineno() << ": negative case count "
               << count;
            raise(errc::negative_cases, os.str());
        }
        out.dates.push_back(date);
        out.counts.push_back(count);
    }
    return out;
}

VariantShares load_variant_shares(const std::string& path) {
    LineReader reader(path);
    std::string line;
    if (!reader.next(line) || line != "window_end_date,emerging_share") {
        parse_fail(path, reader.lineno(),
                   "expected header 'window_end_date,emerging_share'");
    }
    VariantShares out;
    while (reader.next(line)) {
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            parse_fail(path, reader.lineno(), "expected 2 fields");
        }
        Date date{};
        try {
            date = parse_date(fields[0]);
        } catch (const ModelError& e) {
            parse_fail(path, reader.lineno(), e.what());
        }
        const double share = parse_double(fields[1], path, reader.lineno());
        if (!(share >= 0.0) || !(share <= 1.0)) {
            std::ostringstream os;
            os << path << ":" << reader.lineno() << ": share " << share
               << " outside [0, 1]";
            raise(errc::share_out_of_range, os.str());
        }
        if (!out.window_end.empty() && date - out.window_end.back() != 14) {
            std::ostringstream os;
            os << path << ":" << reader.lineno()
               << ": window end dates must advance by exactly 14 days";
            raise(errc::non_monotone_dates, os.str());
        }
        out.window_end.push_back(date);
        out.share.push_back(share);
    }
    return out;
}

void write_csv(const std::string& path, const CsvFile& file,
               bool reproducible) {
    std::ostringstream out;
    if (!reproducible) {
        out << "# generated " << timestamp_now() << "\n";
    }
    for (std::size_t c = 0; c < file.columns.size(); ++c) {
        out << (c ? "," : "") << file.columns[c];
    }
    out << "\n";
    for (const CsvRow& row : file.rows) {
        bool first = true;
        if (file.labelled) {
            out << row.label;
            first = false;
        }
        for (double v : row.values) {
            out << (first ? "" : ",") << format_g17(v);
            first = false;
        }
        out << "\n";
    }
    atomic_write(path, out.str());
}

CsvFile load_csv(const std::string& path, bool labelled) {
    LineReader reader(path);
    std::string line;
    if (!reader.next(line)) {
        parse_fail(path, reader.lineno(), "missing header");
    }
    CsvFile out;
    out.labelled = labelled;
    out.columns = split_fields(line);
    while (reader.next(line)) {
        auto fields = split_fields(line);
        if (fields.size() != out.columns.size()) {
            parse_fail(path, reader.lineno(), "ragged row");
        }
        CsvRow row;
        std::size_t begin = 0;
        if (labelled) {
            row.label = fields[0];
            begin = 1;
        }
        for (std::size_t i = begin; i < fields.size(); ++i) {
            row.values.push_back(parse_double(fields[i], path,
                                              reader.lineno()));
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
    atomic_write(path, contents);
}

} // namespace twostrain
