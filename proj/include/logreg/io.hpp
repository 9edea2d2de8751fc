#pragma once

// CSV ingestion and JSON / TSV serialization of results.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "logreg/classify.hpp"
#include "logreg/fit.hpp"
#include "logreg/inference.hpp"
#include "logreg/model.hpp"

namespace logreg::io {

using json = nlohmann::ordered_json;

struct CsvSpec {
    std::filesystem::path path;
    std::string label_column = "y";
    /// Empty means every non-label column whose cells are all numeric.
    std::vector<std::string> feature_columns;
    char delimiter = ',';
    /// Without a header, columns are named by 1-based position: "1", "2", ...
    bool has_header = true;
};

/// A parsed CSV: column names plus string cells, one vector per data row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 parsing: quoted fields, doubled quotes, CRLF or LF line ends.
/// Blank lines are skipped. Throws DataError on an unterminated quote or a
/// row whose field count differs from the first row.
CsvTable parse_csv(std::string_view text, char delimiter = ',', bool has_header = true);

/// Reads spec.path into a Dataset with the intercept prepended.
/// Throws DataError (with row and column when applicable) for a missing or
/// empty file, unknown columns, unparseable cells or labels outside {0, 1}.
Dataset ingest(const CsvSpec& spec);

/// Design matrix (intercept prepended) built from the named columns of a
/// CSV, for scoring with a previously fitted model.
Matrix read_design(const CsvSpec& spec, const std::vector<std::string>& feature_columns);

/// Parses a decimal cell; nullopt if it is not a finite number.
std::optional<double> parse_number(std::string_view cell);

/// Shortest decimal that reads back to the same double.
std::string format_shortest(double v);
/// %.17g-equivalent, independent of locale.
std::string format_17(double v);

json to_json(const FitResult& fit, const std::vector<std::string>& feature_names);
FitResult fit_result_from_json(const json& j);
json to_json(const NestedTestResult& r);
NestedTestResult nested_test_from_json(const json& j);
json to_json(const PressQResult& r);
PressQResult press_q_from_json(const json& j);
json to_json(const CvReport& r);
CvReport cv_report_from_json(const json& j);
json to_json(const PowerCurve& c);
PowerCurve power_curve_from_json(const json& j);

std::string to_tsv(const FitResult& fit, const std::vector<std::string>& feature_names);
std::string to_tsv(const NestedTestResult& r);
std::string to_tsv(const PressQResult& r);
std::string to_tsv(const CvReport& r, const PressQResult& q);
/// One "power<TAB>pvalue" line per grid point, 17 significant digits.
std::string to_tsv(const PowerCurve& c);

}  // namespace logreg::io
