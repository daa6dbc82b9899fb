#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace svarkit {

/// A calendar quarter. Ordered by (year, quarter).
struct QuarterIndex {
    int year = 0;
    int quarter = 1;  // 1..4

    friend constexpr auto operator<=>(const QuarterIndex&, const QuarterIndex&) = default;

    /// Quarter `n` steps later (earlier for negative `n`).
    [[nodiscard]] QuarterIndex advanced(long n) const;
    [[nodiscard]] QuarterIndex next() const { return advanced(1); }

    /// Canonical label, e.g. "1997-Q1".
    [[nodiscard]] std::string label() const;

    /// Parses "YYYY-QN". Throws DataError on anything else.
    static QuarterIndex parse(std::string_view text);
};

/// Signed number of quarters from `from` to `to`.
long quarters_between(QuarterIndex from, QuarterIndex to);

/// Quarter-indexed real series with a record of the transforms applied to it.
/// Values are validated finite at construction; the object is immutable.
class QuarterlySeries {
public:
    QuarterlySeries(std::string label, QuarterIndex start, std::vector<double> values,
                    int transform_log = 0, int diff_order = 0);

    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] QuarterIndex start() const { return start_; }
    /// Last quarter covered. Undefined for an empty series.
    [[nodiscard]] QuarterIndex end() const { return start_.advanced(static_cast<long>(values_.size()) - 1); }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] int transform_log() const { return transform_log_; }
    [[nodiscard]] int diff_order() const { return diff_order_; }

    /// Sub-series covering [from, to], both inclusive, clipped to the data.
    [[nodiscard]] QuarterlySeries slice(QuarterIndex from, QuarterIndex to) const;
    [[nodiscard]] QuarterlySeries relabeled(std::string label) const;

private:
    std::string label_;
    QuarterIndex start_;
    std::vector<double> values_;
    int transform_log_;
    int diff_order_;
};

struct ColumnSpec {
    std::string quarter_column = "quarter";
    std::string value_column = "value";
};

QuarterlySeries read_csv(std::istream& in, std::string label, const ColumnSpec& columns = {});
QuarterlySeries load_csv(const std::filesystem::path& path, const ColumnSpec& columns = {});

/// Canonical `quarter,value` format, values printed with round-trip precision.
void write_csv(std::ostream& out, const QuarterlySeries& s);
void save_csv(const std::filesystem::path& path, const QuarterlySeries& s);

/// Natural log. Requires strictly positive values and no prior log.
QuarterlySeries log_transform(const QuarterlySeries& s);

/// `d`-fold first difference; start advances by `d` quarters.
QuarterlySeries difference(const QuarterlySeries& s, int d = 1);

/// Removes a deterministic quarterly pattern by OLS on a constant and three
/// quarter dummies; returns residuals plus the overall mean.
QuarterlySeries dummy_deseasonalize(const QuarterlySeries& s);

/// Trims every series to the common quarter range. Throws DataError if the
/// intersection is empty.
std::vector<QuarterlySeries> align(std::span<const QuarterlySeries> series);

}  // namespace svarkit
