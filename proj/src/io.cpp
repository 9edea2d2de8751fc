#include "logreg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace logreg::io {

// ---------------------------------------------------------------- CSV

CsvTable parse_csv(std::string_view text, char delimiter, bool has_header) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = record.size() == 1 && record.front().empty();
        if (!blank) records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == delimiter) {
            end_field();
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            // handled by the '\n'
        } else if (c == '\n') {
            end_record();
            ++line;
        } else {
            field.push_back(c);
            field_started = true;
        }
    }
    if (in_quotes) {
        throw DataError("unterminated quoted field starting before line " + std::to_string(line));
    }
    if (field_started || !field.empty() || !record.empty()) end_record();

    CsvTable table;
    if (records.empty()) return table;

    const std::size_t width = records.front().size();
    for (std::size_t r = 0; r < records.size(); ++r) {
        if (records[r].size() != width) {
            const std::size_t data_row = has_header ? r : r + 1;
            throw DataError("expected " + std::to_string(width) + " fields, found " +
                            std::to_string(records[r].size()) +
                            (has_header && r == 0 ? std::string(" in header")
                                                  : " on data row " + std::to_string(data_row)));
        }
    }
    if (has_header) {
        table.header = std::move(records.front());
        table.rows.assign(std::make_move_iterator(records.begin() + 1),
                          std::make_move_iterator(records.end()));
    } else {
        for (std::size_t j = 0; j < width; ++j) table.header.push_back(std::to_string(j + 1));
        table.rows = std::move(records);
    }
    return table;
}

std::optional<double> parse_number(std::string_view cell) {
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
    if (cell.starts_with('+')) cell.remove_prefix(1);
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

namespace {

CsvTable load(const CsvSpec& spec) {
    std::ifstream in(spec.path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open \"" + spec.path.string() + "\"");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    CsvTable table = parse_csv(buffer.str(), spec.delimiter, spec.has_header);
    if (table.header.empty()) {
        throw DataError("\"" + spec.path.string() + "\" is empty");
    }
    if (table.rows.empty()) {
        throw DataError("\"" + spec.path.string() + "\" has no data rows");
    }
    return table;
}

std::size_t column_index(const CsvTable& table, const std::string& name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) {
        throw DataError("column \"" + name + "\" not found");
    }
    return static_cast<std::size_t>(it - table.header.begin());
}

std::vector<std::vector<double>> parse_columns(const CsvTable& table,
                                               const std::vector<std::size_t>& cols) {
    std::vector<std::vector<double>> out(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out[r].reserve(cols.size());
        for (std::size_t c : cols) {
            const auto v = parse_number(table.rows[r][c]);
            if (!v) {
                throw DataError("\"" + table.rows[r][c] + "\" is not a finite number", r + 1,
                                table.header[c]);
            }
            out[r].push_back(*v);
        }
    }
    return out;
}

}  // namespace

Dataset ingest(const CsvSpec& spec) {
    const CsvTable table = load(spec);
    const std::size_t label_col = column_index(table, spec.label_column);

    std::vector<std::size_t> feature_cols;
    if (spec.feature_columns.empty()) {
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            if (c == label_col) continue;
            const bool numeric = std::all_of(table.rows.begin(), table.rows.end(),
                                             [c](const auto& row) { return parse_number(row[c]); });
            if (numeric) feature_cols.push_back(c);
        }
    } else {
        for (const auto& name : spec.feature_columns) {
            if (name == spec.label_column) {
                throw DataError("label column \"" + name + "\" cannot also be a feature");
            }
            feature_cols.push_back(column_index(table, name));
        }
    }

    std::vector<double> labels;
    labels.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto v = parse_number(table.rows[r][label_col]);
        if (!v || (*v != 0.0 && *v != 1.0)) {
            throw DataError("label \"" + table.rows[r][label_col] + "\" is not 0 or 1", r + 1,
                            spec.label_column);
        }
        labels.push_back(*v);
    }

    std::vector<std::string> names;
    for (std::size_t c : feature_cols) names.push_back(table.header[c]);
    return Dataset::with_intercept(parse_columns(table, feature_cols), labels, std::move(names));
}

Matrix read_design(const CsvSpec& spec, const std::vector<std::string>& feature_columns) {
    const CsvTable table = load(spec);
    std::vector<std::size_t> cols;
    for (const auto& name : feature_columns) cols.push_back(column_index(table, name));
    const auto features = parse_columns(table, cols);
    std::vector<double> design;
    design.reserve(features.size() * (cols.size() + 1));
    for (const auto& row : features) {
        design.push_back(1.0);
        design.insert(design.end(), row.begin(), row.end());
    }
    return Matrix(features.size(), cols.size() + 1, std::move(design));
}

// ---------------------------------------------------------------- numbers

std::string format_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------- JSON

namespace {

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw DataError("matrix has no rows");
    std::vector<double> flat;
    for (const auto& r : rows) {
        if (r.size() != rows.front().size()) throw DataError("ragged matrix");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return Matrix(rows.size(), rows.front().size(), std::move(flat));
}

}  // namespace

json to_json(const FitResult& fit, const std::vector<std::string>& feature_names) {
    return json{
        {"status", std::string(to_string(fit.status))},
        {"iterations", fit.iterations},
        {"n", fit.n},
        {"feature_names", feature_names},
        {"coefficients", fit.coef.beta().values()},
        {"std_errors", fit.std_errors.values()},
        {"covariance", matrix_json(fit.covariance)},
        {"log_lik", fit.log_lik},
        {"deviance", fit.deviance},
        {"deviance_df", fit.deviance_df},
        {"grad_norm", fit.grad_norm},
        {"degenerate", fit.degenerate},
    };
}

FitResult fit_result_from_json(const json& j) {
    return FitResult{
        .coef = Coefficients(Vector(j.at("coefficients").get<std::vector<double>>())),
        .log_lik = j.at("log_lik").get<double>(),
        .deviance = j.at("deviance").get<double>(),
        .grad_norm = j.at("grad_norm").get<double>(),
        .iterations = j.at("iterations").get<std::size_t>(),
        .status = parse_fit_status(j.at("status").get<std::string>()),
        .covariance = matrix_from_json(j.at("covariance")),
        .std_errors = Vector(j.at("std_errors").get<std::vector<double>>()),
        .degenerate = j.at("degenerate").get<bool>(),
        .n = j.at("n").get<std::size_t>(),
        .deviance_df = j.at("deviance_df").get<std::size_t>(),
    };
}

json to_json(const NestedTestResult& r) {
    return json{
        {"deviance_reduced", r.deviance_reduced},
        {"deviance_full", r.deviance_full},
        {"statistic", r.statistic},
        {"df", r.df},
        {"p_value", r.p_value},
    };
}

NestedTestResult nested_test_from_json(const json& j) {
    return NestedTestResult{
        .deviance_reduced = j.at("deviance_reduced").get<double>(),
        .deviance_full = j.at("deviance_full").get<double>(),
        .statistic = j.at("statistic").get<double>(),
        .df = j.at("df").get<unsigned>(),
        .p_value = j.at("p_value").get<double>(),
    };
}

json to_json(const PressQResult& r) {
    return json{
        {"n", r.n},
        {"error_rate", r.error_rate},
        {"q_statistic", r.q_statistic},
        {"p_value", r.p_value},
    };
}

PressQResult press_q_from_json(const json& j) {
    return PressQResult{
        .n = j.at("n").get<std::size_t>(),
        .error_rate = j.at("error_rate").get<double>(),
        .q_statistic = j.at("q_statistic").get<double>(),
        .p_value = j.at("p_value").get<double>(),
    };
}

json to_json(const CvReport& r) {
    return json{
        {"n", r.n},
        {"per_subject_errors", r.per_subject_errors},
        {"error_rate", r.error_rate},
        {"discriminant_power", r.discriminant_power},
        {"non_converged_folds", r.non_converged_folds},
    };
}

CvReport cv_report_from_json(const json& j) {
    return CvReport{
        .per_subject_errors = j.at("per_subject_errors").get<std::vector<std::uint8_t>>(),
        .error_rate = j.at("error_rate").get<double>(),
        .discriminant_power = j.at("discriminant_power").get<double>(),
        .n = j.at("n").get<std::size_t>(),
        .non_converged_folds = j.at("non_converged_folds").get<std::size_t>(),
    };
}

json to_json(const PowerCurve& c) {
    json power = json::array();
    json pvalue = json::array();
    for (const auto& pt : c.points) {
        power.push_back(pt.power);
        pvalue.push_back(pt.p_value);
    }
    return json{{"n", c.n}, {"power", std::move(power)}, {"p_value", std::move(pvalue)}};
}

PowerCurve power_curve_from_json(const json& j) {
    const auto power = j.at("power").get<std::vector<double>>();
    const auto pvalue = j.at("p_value").get<std::vector<double>>();
    if (power.size() != pvalue.size()) throw DataError("power and p_value lengths differ");
    PowerCurve c{j.at("n").get<std::size_t>(), {}};
    c.points.reserve(power.size());
    for (std::size_t i = 0; i < power.size(); ++i) c.points.push_back({power[i], pvalue[i]});
    return c;
}

// ---------------------------------------------------------------- TSV

namespace {

class KeyValues {
public:
    KeyValues& add(std::string_view key, double v) { return line(key, format_shortest(v)); }
    KeyValues& add(std::string_view key, std::size_t v) { return line(key, std::to_string(v)); }
    KeyValues& add(std::string_view key, std::string_view v) { return line(key, v); }
    std::string str() const { return out_.str(); }

private:
    KeyValues& line(std::string_view key, std::string_view value) {
        out_ << key << '\t' << value << '\n';
        return *this;
    }
    std::ostringstream out_;
};

}  // namespace

std::string to_tsv(const FitResult& fit, const std::vector<std::string>& names) {
    KeyValues kv;
    kv.add("status", to_string(fit.status))
        .add("iterations", fit.iterations)
        .add("n", fit.n)
        .add("log_lik", fit.log_lik)
        .add("deviance", fit.deviance)
        .add("deviance_df", fit.deviance_df)
        .add("grad_norm", fit.grad_norm)
        .add("degenerate", fit.degenerate ? "true" : "false");
    for (std::size_t j = 0; j < fit.coef.size(); ++j) {
        kv.add("coef." + names.at(j), fit.coef[j]);
    }
    for (std::size_t j = 0; j < fit.coef.size(); ++j) {
        kv.add("se." + names.at(j), fit.std_errors[j]);
    }
    for (std::size_t a = 0; a < fit.coef.size(); ++a)
        for (std::size_t b = 0; b < fit.coef.size(); ++b)
            kv.add("cov." + names[a] + "." + names[b], fit.covariance(a, b));
    return kv.str();
}

std::string to_tsv(const NestedTestResult& r) {
    return KeyValues{}
        .add("deviance_reduced", r.deviance_reduced)
        .add("deviance_full", r.deviance_full)
        .add("statistic", r.statistic)
        .add("df", static_cast<std::size_t>(r.df))
        .add("p_value", r.p_value)
        .str();
}

std::string to_tsv(const PressQResult& r) {
    return KeyValues{}
        .add("n", r.n)
        .add("error_rate", r.error_rate)
        .add("q_statistic", r.q_statistic)
        .add("p_value", r.p_value)
        .str();
}

std::string to_tsv(const CvReport& r, const PressQResult& q) {
    KeyValues kv;
    kv.add("n", r.n)
        .add("error_rate", r.error_rate)
        .add("discriminant_power", r.discriminant_power)
        .add("non_converged_folds", r.non_converged_folds)
        .add("press_q.q_statistic", q.q_statistic)
        .add("press_q.p_value", q.p_value);
    for (std::size_t i = 0; i < r.per_subject_errors.size(); ++i) {
        kv.add("error." + std::to_string(i + 1),
               static_cast<std::size_t>(r.per_subject_errors[i]));
    }
    return kv.str();
}

std::string to_tsv(const PowerCurve& c) {
    std::string out;
    for (const auto& pt : c.points) {
        out += format_17(pt.power);
        out += '\t';
        out += format_17(pt.p_value);
        out += '\n';
    }
    return out;
}

}  // namespace logreg::io
