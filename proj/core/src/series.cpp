#include "svarkit/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "svarkit/error.hpp"
#include "svarkit/ols.hpp"

namespace svarkit {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(trim(line.substr(pos, comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

double parse_value(std::string_view text, std::size_t line_no) {
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw DataError("line " + std::to_string(line_no) + ": non-numeric value '" +
                        std::string(text) + "'");
    }
    return v;
}

}  // namespace

QuarterIndex QuarterIndex::advanced(long n) const {
    const long linear = static_cast<long>(year) * 4 + (quarter - 1) + n;
    const long y = linear >= 0 ? linear / 4 : -((-linear + 3) / 4);
    return {static_cast<int>(y), static_cast<int>(linear - y * 4) + 1};
}

std::string QuarterIndex::label() const {
    return std::to_string(year) + "-Q" + std::to_string(quarter);
}

QuarterIndex QuarterIndex::parse(std::string_view text) {
    text = trim(text);
    const auto bad = [&] {
        return DataError("malformed quarter label '" + std::string(text) + "' (expected YYYY-QN)");
    };
    if (text.size() != 7 || text[4] != '-' || text[5] != 'Q') throw bad();
    int y = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + 4, y);
    if (ec != std::errc{} || ptr != text.data() + 4) throw bad();
    const char q = text[6];
    if (q < '1' || q > '4') throw bad();
    return {y, q - '0'};
}

long quarters_between(QuarterIndex from, QuarterIndex to) {
    return (static_cast<long>(to.year) * 4 + to.quarter) - (static_cast<long>(from.year) * 4 + from.quarter);
}

QuarterlySeries::QuarterlySeries(std::string label, QuarterIndex start, std::vector<double> values,
                                 int transform_log, int diff_order)
    : label_(std::move(label)),
      start_(start),
      values_(std::move(values)),
      transform_log_(transform_log),
      diff_order_(diff_order) {
    if (start_.quarter < 1 || start_.quarter > 4) {
        throw DataError("quarter must be in 1..4, got " + std::to_string(start_.quarter));
    }
    if (transform_log_ < 0 || transform_log_ > 1 || diff_order_ < 0) {
        throw DataError("invalid transform record for series '" + label_ + "'");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DataError("series '" + label_ + "' has a non-finite value at " +
                            start_.advanced(static_cast<long>(i)).label());
        }
    }
}

QuarterlySeries QuarterlySeries::slice(QuarterIndex from, QuarterIndex to) const {
    const long n = static_cast<long>(values_.size());
    const long lo = std::clamp(quarters_between(start_, from), 0L, n);
    const long hi = std::clamp(quarters_between(start_, to) + 1, lo, n);
    return {label_, start_.advanced(lo),
            std::vector<double>(values_.begin() + lo, values_.begin() + hi), transform_log_,
            diff_order_};
}

QuarterlySeries QuarterlySeries::relabeled(std::string label) const {
    return {std::move(label), start_, values_, transform_log_, diff_order_};
}

QuarterlySeries read_csv(std::istream& in, std::string label, const ColumnSpec& columns) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t quarter_col = 0;
    std::size_t value_col = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            have_header = true;
            break;
        }
    }
    if (!have_header) throw DataError("empty file");

    // Tolerate a UTF-8 byte order mark.
    std::string_view header = line;
    if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
    const auto names = split_fields(header);
    const auto find_col = [&](const std::string& name) {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw DataError("header lacks column '" + name + "'");
        return static_cast<std::size_t>(it - names.begin());
    };
    quarter_col = find_col(columns.quarter_column);
    value_col = find_col(columns.value_column);

    std::vector<double> values;
    QuarterIndex start{};
    QuarterIndex prev{};
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() <= std::max(quarter_col, value_col)) {
            throw DataError("line " + std::to_string(line_no) + ": too few fields");
        }
        const QuarterIndex q = QuarterIndex::parse(fields[quarter_col]);
        if (values.empty()) {
            start = q;
        } else if (q != prev.next()) {
            throw DataError("line " + std::to_string(line_no) + ": gap in quarter sequence (" +
                            prev.label() + " followed by " + q.label() + ")");
        }
        values.push_back(parse_value(fields[value_col], line_no));
        prev = q;
    }
    if (values.empty()) throw DataError("no data rows");
    return {std::move(label), start, std::move(values)};
}

QuarterlySeries load_csv(const std::filesystem::path& path, const ColumnSpec& columns) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    try {
        return read_csv(in, path.stem().string(), columns);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_csv(std::ostream& out, const QuarterlySeries& s) {
    std::ostringstream buf;
    buf << std::setprecision(std::numeric_limits<double>::max_digits10);
    buf << "quarter,value\n";
    QuarterIndex q = s.start();
    for (double v : s.values()) {
        buf << q.label() << ',' << v << '\n';
        q = q.next();
    }
    out << buf.str();
}

void save_csv(const std::filesystem::path& path, const QuarterlySeries& s) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    write_csv(out, s);
}

QuarterlySeries log_transform(const QuarterlySeries& s) {
    if (s.transform_log() != 0) {
        throw DataError("series '" + s.label() + "' is already logged");
    }
    std::vector<double> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > 0.0)) {
            throw DataError("log of non-positive value " + std::to_string(s[i]) + " at " +
                            s.start().advanced(static_cast<long>(i)).label());
        }
        out.push_back(std::log(s[i]));
    }
    return {s.label(), s.start(), std::move(out), 1, s.diff_order()};
}

QuarterlySeries difference(const QuarterlySeries& s, int d) {
    if (d < 1) throw DataError("difference order must be positive");
    if (s.size() <= static_cast<std::size_t>(d)) {
        throw DataError("series '" + s.label() + "' too short to difference " + std::to_string(d) +
                        " times");
    }
    std::vector<double> v(s.values().begin(), s.values().end());
    for (int k = 0; k < d; ++k) {
        for (std::size_t t = 0; t + 1 < v.size(); ++t) v[t] = v[t + 1] - v[t];
        v.pop_back();
    }
    return {s.label(), s.start().advanced(d), std::move(v), s.transform_log(), s.diff_order() + d};
}

QuarterlySeries dummy_deseasonalize(const QuarterlySeries& s) {
    const auto n = static_cast<Eigen::Index>(s.size());
    if (n < 8) throw DataError("deseasonalizing needs at least 8 quarters");
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, 4);
    Eigen::VectorXd y(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        const int q = s.start().advanced(t).quarter;
        x(t, 0) = 1.0;
        if (q > 1) x(t, q - 1) = 1.0;
        y(t) = s[static_cast<std::size_t>(t)];
    }
    const OlsFit fit = ols(x, y);
    const double mean = y.mean();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index t = 0; t < n; ++t) out[static_cast<std::size_t>(t)] = fit.residuals(t, 0) + mean;
    return {s.label(), s.start(), std::move(out), s.transform_log(), s.diff_order()};
}

std::vector<QuarterlySeries> align(std::span<const QuarterlySeries> series) {
    if (series.empty()) return {};
    QuarterIndex lo = series.front().start();
    QuarterIndex hi = series.front().end();
    for (const auto& s : series) {
        if (s.size() == 0) throw DataError("series '" + s.label() + "' is empty");
        lo = std::max(lo, s.start());
        hi = std::min(hi, s.end());
    }
    if (hi < lo) throw DataError("series do not overlap");
    std::vector<QuarterlySeries> out;
    out.reserve(series.size());
    for (const auto& s : series) out.push_back(s.slice(lo, hi));
    return out;
}

}  // namespace svarkit
