#include "logreg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "logreg/classify.hpp"
#include "logreg/inference.hpp"

namespace logreg::cli {

namespace {

std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

}  // namespace

RunOutput cmd_fit(const io::CsvSpec& spec, const FitConfig& config, Format format) {
    const Dataset data = io::ingest(spec);
    const FitResult fit = fit_irls(data, config);
    if (format == Format::Json) return {format, dump(io::to_json(fit, data.feature_names()))};
    return {format, io::to_tsv(fit, data.feature_names())};
}

RunOutput cmd_predict(const std::filesystem::path& model, const io::CsvSpec& spec,
                      double threshold, Format format) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw DomainError("threshold must lie strictly between 0 and 1");
    }
    std::ifstream in(model);
    if (!in) throw DataError("cannot open model \"" + model.string() + "\"");
    io::json j;
    try {
        j = io::json::parse(in);
    } catch (const io::json::exception& e) {
        throw DataError("model \"" + model.string() + "\" is not valid json: " + e.what());
    }
    std::vector<std::string> names;
    std::vector<double> beta;
    try {
        names = j.at("feature_names").get<std::vector<std::string>>();
        beta = j.at("coefficients").get<std::vector<double>>();
    } catch (const io::json::exception& e) {
        throw DataError("model \"" + model.string() + "\": " + e.what());
    }
    if (names.empty() || names.front() != "intercept" || names.size() != beta.size()) {
        throw DataError("model \"" + model.string() +
                        "\" must list an intercept first and one coefficient per feature");
    }

    const std::vector<std::string> features(names.begin() + 1, names.end());
    const Matrix design = io::read_design(spec, features);
    const Vector s = design * Vector(beta);
    const double cutoff = logit(threshold);

    std::vector<double> prob(s.size());
    std::vector<int> label(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        prob[i] = logistic(s[i]);
        label[i] = s[i] > cutoff ? 1 : 0;
    }
    if (format == Format::Json) {
        return {format, dump(io::json{{"threshold", threshold},
                                      {"probability", prob},
                                      {"label", label}})};
    }
    std::string out = "row\tprobability\tlabel\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += std::to_string(i + 1) + '\t' + io::format_shortest(prob[i]) + '\t' +
               std::to_string(label[i]) + '\n';
    }
    return {format, out};
}

RunOutput cmd_test(const io::CsvSpec& spec, const std::vector<std::string>& reduced,
                   const FitConfig& config, Format format) {
    const Dataset data = io::ingest(spec);
    const auto& names = data.feature_names();
    std::vector<std::size_t> cols{0};
    for (const auto& name : reduced) {
        if (name == "intercept") continue;
        const auto it = std::find(names.begin() + 1, names.end(), name);
        if (it == names.end()) {
            throw DataError("reduced column \"" + name + "\" is not a feature of the full model");
        }
        cols.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    const NestedTestResult r = lrt_nested(data, cols, config);
    if (format == Format::Json) return {format, dump(io::to_json(r))};
    return {format, io::to_tsv(r)};
}

RunOutput cmd_cv(const io::CsvSpec& spec, const FitConfig& config, double threshold,
                 Format format) {
    const Dataset data = io::ingest(spec);
    const CvReport report = loocv(data, config, threshold);
    const PressQResult q = evaluate_with_press_q(report);
    if (format == Format::Json) {
        io::json j = io::to_json(report);
        j["press_q"] = io::to_json(q);
        return {format, dump(j)};
    }
    return {format, io::to_tsv(report, q)};
}

RunOutput cmd_pressq(std::size_t n, double rate, Format format) {
    const PressQResult r = press_q(n, rate);
    if (format == Format::Json) return {format, dump(io::to_json(r))};
    return {format, io::to_tsv(r)};
}

RunOutput cmd_curve(std::size_t n, std::size_t grid_points, Format format) {
    const PowerCurve c = power_curve(n, grid_points);
    if (format == Format::Json) return {format, dump(io::to_json(c))};
    return {format, io::to_tsv(c)};
}

}  // namespace logreg::cli
