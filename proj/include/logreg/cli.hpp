#pragma once

// Subcommand bodies of the logreg tool. Each returns the serialized payload;
// argument parsing and exit-code mapping live in tools/logreg_cli.cpp.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "logreg/fit.hpp"
#include "logreg/io.hpp"

namespace logreg::cli {

enum class Format { Json, Tsv };

struct RunOutput {
    Format format = Format::Json;
    std::string payload;
};

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

RunOutput cmd_fit(const io::CsvSpec& spec, const FitConfig& config, Format format);

/// Scores a feature CSV with a model written by cmd_fit (json format).
RunOutput cmd_predict(const std::filesystem::path& model, const io::CsvSpec& spec,
                      double threshold, Format format);

/// `reduced` lists the feature names kept in the reduced model; the
/// intercept is always kept.
RunOutput cmd_test(const io::CsvSpec& spec, const std::vector<std::string>& reduced,
                   const FitConfig& config, Format format);

RunOutput cmd_cv(const io::CsvSpec& spec, const FitConfig& config, double threshold,
                 Format format);

RunOutput cmd_pressq(std::size_t n, double rate, Format format);

RunOutput cmd_curve(std::size_t n, std::size_t grid_points, Format format);

}  // namespace logreg::cli
