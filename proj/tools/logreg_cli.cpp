// logreg: logistic regression from CSV files.
//
//   logreg fit     data.csv [--label-col y] [--features a,b] [--tol 0.001] [--max-iter 100]
//   logreg predict data.csv --model fit.json [--threshold 0.5]
//   logreg test    data.csv --reduced a [--label-col y] [--features a,b,c]
//   logreg cv      data.csv [--threshold 0.5]
//   logreg pressq  --n 28 --rate 0.85
//   logreg curve   --n 28 [--grid 1000]
//
// Every subcommand takes --format json|tsv (default json). Exit status is 0
// for any computed result, 1 for usage errors and 2 for invalid data.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "logreg/cli.hpp"

namespace {

using logreg::cli::Format;

struct Options {
    logreg::io::CsvSpec csv;
    std::string delimiter = ",";
    bool no_header = false;
    logreg::FitConfig fit;
    double threshold = 0.5;
    Format format = Format::Json;
    std::filesystem::path model;
    std::vector<std::string> reduced;
    std::size_t n = 0;
    double rate = 0.0;
    std::size_t grid = 1000;
};

const std::map<std::string, Format> kFormats{{"json", Format::Json}, {"tsv", Format::Tsv}};

void add_format(CLI::App* cmd, Options& opt) {
    cmd->add_option("--format", opt.format, "Output format")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
        ->option_text("json|tsv [json]");
}

void add_csv(CLI::App* cmd, Options& opt) {
    cmd->add_option("csv", opt.csv.path, "Input CSV file")->required();
    cmd->add_option("--label-col", opt.csv.label_column, "Name of the 0/1 label column")
        ->capture_default_str();
    cmd->add_option("--features", opt.csv.feature_columns,
                    "Feature columns (default: every numeric non-label column)")
        ->delimiter(',');
    cmd->add_option("--delimiter", opt.delimiter, "Field separator (one character)")
        ->check([](const std::string& s) {
            return s.size() == 1 ? std::string() : std::string("delimiter must be one character");
        });
    cmd->add_flag("--no-header", opt.no_header, "First line is data; columns are named 1, 2, ...");
}

void add_fit_config(CLI::App* cmd, Options& opt) {
    cmd->add_option("--tol", opt.fit.grad_tol, "Stop when the gradient norm reaches this")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-iter", opt.fit.max_iter, "Newton iteration budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

const CLI::Validator kOpenUnitInterval(
    [](const std::string& s) {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0 && v < 1.0)) {
            return std::string("value must lie strictly between 0 and 1");
        }
        return std::string();
    },
    "(0,1)");

void add_threshold(CLI::App* cmd, Options& opt) {
    cmd->add_option("--threshold", opt.threshold, "Probability above which to predict 1")
        ->check(kOpenUnitInterval)
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Logistic regression: IRLS fitting, nested deviance tests, leave-one-out "
                 "classification and Press's Q"};
    app.require_subcommand(1);
    Options opt;

    auto* fit = app.add_subcommand("fit", "Fit a model by Newton/IRLS");
    add_csv(fit, opt);
    add_fit_config(fit, opt);
    add_format(fit, opt);

    auto* predict = app.add_subcommand("predict", "Score a CSV with a fitted model");
    add_csv(predict, opt);
    predict->add_option("--model", opt.model, "Model json written by `fit`")->required();
    add_threshold(predict, opt);
    add_format(predict, opt);

    auto* test = app.add_subcommand("test", "Likelihood-ratio test of a nested reduced model");
    add_csv(test, opt);
    test->add_option("--reduced", opt.reduced,
                     "Features kept in the reduced model ('intercept' for none)")
        ->delimiter(',')
        ->required();
    add_fit_config(test, opt);
    add_format(test, opt);

    auto* cv = app.add_subcommand("cv", "Leave-one-out error rate with Press's Q");
    add_csv(cv, opt);
    add_fit_config(cv, opt);
    add_threshold(cv, opt);
    add_format(cv, opt);

    auto* pressq = app.add_subcommand("pressq", "Press's Q test for a classification rate");
    pressq->add_option("--n", opt.n, "Number of subjects")->required()->check(CLI::PositiveNumber);
    pressq->add_option("--rate", opt.rate, "Error rate or discriminant power")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    add_format(pressq, opt);

    auto* curve = app.add_subcommand("curve", "Press's Q p-value against discriminant power");
    curve->add_option("--n", opt.n, "Number of subjects")->required()->check(CLI::PositiveNumber);
    curve->add_option("--grid", opt.grid, "Grid points on (0, 1]")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    add_format(curve, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? logreg::cli::kExitOk : logreg::cli::kExitUsage;
    }

    opt.csv.delimiter = opt.delimiter.front();
    opt.csv.has_header = !opt.no_header;

    try {
        logreg::cli::RunOutput out;
        if (*fit) {
            out = logreg::cli::cmd_fit(opt.csv, opt.fit, opt.format);
        } else if (*predict) {
            out = logreg::cli::cmd_predict(opt.model, opt.csv, opt.threshold, opt.format);
        } else if (*test) {
            out = logreg::cli::cmd_test(opt.csv, opt.reduced, opt.fit, opt.format);
        } else if (*cv) {
            out = logreg::cli::cmd_cv(opt.csv, opt.fit, opt.threshold, opt.format);
        } else if (*pressq) {
            out = logreg::cli::cmd_pressq(opt.n, opt.rate, opt.format);
        } else {
            out = logreg::cli::cmd_curve(opt.n, opt.grid, opt.format);
        }
        std::cout << out.payload;
        std::cout.flush();
        return logreg::cli::kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "logreg: " << e.what() << '\n';
        return logreg::cli::kExitData;
    }
}
