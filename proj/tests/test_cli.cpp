#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>
#include <cstdio>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "logreg/cli.hpp"
#include "support/oracles.hpp"

using namespace logreg;
using namespace logreg::cli;

namespace {

std::string fixture(const std::string& name) { return std::string(LOGREG_FIXTURES) + "/" + name; }

io::CsvSpec spec_for(const std::string& name) {
    io::CsvSpec s;
    s.path = fixture(name);
    return s;
}

struct Run {
    int exit_code;
    std::string out;
};

// Runs the logreg binary; stderr is discarded.
Run run(const std::string& args) {
    const std::string cmd = std::string(LOGREG_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("cmd_fit: intercept-only coefficient") {
    const auto out = cmd_fit(spec_for("intercept_only.csv"), FitConfig{}, Format::Json);
    const auto j = io::json::parse(out.payload);
    CHECK(j["status"] == "Converged");
    CHECK(j["coefficients"][0].get<double>() == doctest::Approx(std::log(3.0)).epsilon(1e-6));
    CHECK(j["feature_names"][0] == "intercept");
}

TEST_CASE("cmd_fit: separable data is a result, not an error") {
    const auto j = io::json::parse(cmd_fit(spec_for("separable.csv"), FitConfig{}, Format::Json).payload);
    const std::string status = j["status"];
    CHECK((status == "Diverged" || status == "MaxIterations"));
}

TEST_CASE("cmd_test: zero column gives a null statistic") {
    const auto j = io::json::parse(
        cmd_test(spec_for("with_zero_column.csv"), {"x"}, FitConfig{}, Format::Json).payload);
    CHECK(std::abs(j["statistic"].get<double>()) <= 1e-6);
    CHECK(j["df"] == 1);
    CHECK_THROWS_AS(cmd_test(spec_for("with_zero_column.csv"), {"w"}, FitConfig{}, Format::Json),
                    DataError);
}

TEST_CASE("cmd_cv: fixtures") {
    const auto sep = io::json::parse(
        cmd_cv(spec_for("separated_four.csv"), FitConfig{}, 0.5, Format::Json).payload);
    CHECK(sep["error_rate"] == 0.0);
    CHECK(sep["discriminant_power"] == 1.0);
    CHECK(sep["press_q"]["q_statistic"] == 4.0);

    const auto two = io::json::parse(
        cmd_cv(spec_for("two_subjects.csv"), FitConfig{}, 0.5, Format::Json).payload);
    CHECK(two["error_rate"] == 1.0);

    const auto fourteen = io::json::parse(
        cmd_cv(spec_for("fourteen.csv"), FitConfig{}, 0.5, Format::Json).payload);
    CHECK(fourteen["n"] == 14);
    const double rate = fourteen["error_rate"];
    CHECK(fourteen["press_q"]["p_value"].get<double>() ==
          doctest::Approx(oracle::chi2_sf_df1(14 * (2 * rate - 1) * (2 * rate - 1))).epsilon(1e-10));
}

TEST_CASE("cmd_pressq and cmd_curve") {
    const auto q = io::json::parse(cmd_pressq(28, 0.85, Format::Json).payload);
    CHECK(q["p_value"].get<double>() >= 1.9e-4);
    CHECK(q["p_value"].get<double>() <= 2.3e-4);
    CHECK(cmd_pressq(28, 0.85, Format::Tsv).payload.starts_with("n\t28\nerror_rate\t0.85\n"));

    const std::string tsv = cmd_curve(28, 1000, Format::Tsv).payload;
    CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 1000);
    CHECK(tsv.find("\n0.5\t1\n") != std::string::npos);
}

TEST_CASE("cmd_predict scores with a saved model") {
    const std::string model = (std::filesystem::temp_directory_path() / "logreg_test_model.json").string();
    {
        std::ofstream f(model);
        f << cmd_fit(spec_for("fourteen.csv"), FitConfig{}, Format::Json).payload;
    }
    const auto fit = io::json::parse(std::ifstream(model));
    const auto pred = io::json::parse(cmd_predict(model, spec_for("fourteen.csv"), 0.5, Format::Json).payload);
    const auto prob = pred["probability"].get<std::vector<double>>();
    const auto label = pred["label"].get<std::vector<int>>();
    REQUIRE(prob.size() == 14);
    const Dataset d = io::ingest(spec_for("fourteen.csv"));
    const Coefficients c(Vector(fit["coefficients"].get<std::vector<double>>()));
    const Vector expected = predict_proba(d, c);
    for (std::size_t i = 0; i < 14; ++i) {
        CHECK(prob[i] == doctest::Approx(expected[i]).epsilon(1e-12));
        CHECK(label[i] == (prob[i] > 0.5 ? 1 : 0));
    }
    CHECK_THROWS_AS(cmd_predict(fixture("two_rows.csv"), spec_for("fourteen.csv"), 0.5, Format::Json),
                    DataError);
    std::filesystem::remove(model);
}

TEST_CASE("binary: exit codes") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("").exit_code == 1);
    CHECK(run("fit").exit_code == 1);
    CHECK(run("fit " + fixture("two_rows.csv") + " --bogus").exit_code == 1);
    CHECK(run("pressq --n 28 --rate 1.5").exit_code == 1);
    CHECK(run("cv " + fixture("separated_four.csv") + " --threshold 1").exit_code == 1);
    CHECK(run("fit " + fixture("bad_label.csv")).exit_code == 2);
    CHECK(run("fit " + fixture("missing.csv")).exit_code == 2);
    CHECK(run("fit " + fixture("empty.csv")).exit_code == 2);
    CHECK(run("test " + fixture("separable.csv") + " --reduced intercept").exit_code == 2);

    const Run sep = run("fit " + fixture("separable.csv"));
    CHECK(sep.exit_code == 0);
    CHECK(sep.out.find("\"status\"") != std::string::npos);
}

TEST_CASE("binary: default tolerance is 0.001") {
    const Run a = run("fit " + fixture("fourteen.csv"));
    const Run b = run("fit " + fixture("fourteen.csv") + " --tol 0.001");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("binary: output is deterministic and formats agree") {
    for (const std::string& args : std::vector<std::string>{"cv " + fixture("fourteen.csv"), "fit " + fixture("fourteen.csv"),
                                   "curve --n 100", "pressq --n 14 --rate 0.286"}) {
        const Run first = run(args);
        const Run second = run(args);
        CHECK(first.exit_code == 0);
        CHECK(first.out == second.out);

        const Run tsv = run(args + " --format tsv");
        CHECK(tsv.exit_code == 0);
        CHECK_FALSE(tsv.out.empty());
    }

    // Key-value TSV and json carry the same doubles.
    const auto j = io::json::parse(run("fit " + fixture("fourteen.csv")).out);
    const std::string tsv = run("fit " + fixture("fourteen.csv") + " --format tsv").out;
    const auto names = j["feature_names"].get<std::vector<std::string>>();
    const auto coef = j["coefficients"].get<std::vector<double>>();
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string key = "coef." + names[i] + "\t";
        const auto pos = tsv.find(key);
        REQUIRE(pos != std::string::npos);
        const auto end = tsv.find('\n', pos);
        const double v = *io::parse_number(tsv.substr(pos + key.size(), end - pos - key.size()));
        CHECK(std::abs(v - coef[i]) <= 1e-15 * std::abs(coef[i]));
    }
}
