#pragma once

#include <string>
#include <vector>

namespace twostrain {

/// Calendar day (UTC), stored as days since 1970-01-01.
struct Date {
    int days{};

    friend bool operator==(Date a, Date b) { return a.days == b.days; }
    friend bool operator<(Date a, Date b) { return a.days < b.days; }
    Date operator+(int n) const { return {days + n}; }
    int operator-(Date other) const { return days - other.days; }
};

/// Strict ISO-8601 day, "YYYY-MM-DD".
Date parse_date(const std::string& text);
std::string format_date(Date date);

/// Shortest-round-trip numeric formatting used by every emitted file
/// (17 significant digits).
std::string format_g17(double value);

/// Daily new-case counts.
struct CaseData {
    std::vector<Date> dates; // strictly increasing
    std::vector<double> counts;

    std::size_t size() const { return dates.size(); }
};

/// CSV with header `date,new_cases`. Errors: parse_error (with line
/// number), non_monotone_dates, negative_cases, io_error.
CaseData load_case_data(const std::string& path);

/// Emerging-strain share of cases per biweekly window.
struct VariantShares {
    std::vector<Date> window_end; // strictly increasing, 14 days apart
    std::vector<double> share;    // in [0, 1]

    std::size_t size() const { return window_end.size(); }
};

/// CSV with header `window_end_date,emerging_share`.
VariantShares load_variant_shares(const std::string& path);

/// One row of an emitted CSV: an optional leading label plus numeric cells.
struct CsvRow {
    std::string label;
    std::vector<double> values;
};

struct CsvFile {
    std::vector<std::string> columns;
    bool labelled{}; // first column is textual
    std::vector<CsvRow> rows;
};

/// Writes atomically (temp file + rename). Unless `reproducible`, a
/// `# generated <timestamp>` comment precedes the header.
void write_csv(const std::string& path, const CsvFile& file,
               bool reproducible);

/// Loads a CSV produced by write_csv (comment lines skipped). When
/// `labelled`, the first column is kept as text.
CsvFile load_csv(const std::string& path, bool labelled);

/// Atomic plain-text writer used for the report files.
void write_text_file(const std::string& path, const std::string& contents);

} // namespace twostrain
