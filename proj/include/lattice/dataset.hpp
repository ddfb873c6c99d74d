#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lattice/correlations.hpp"

namespace lattice {

inline constexpr const char* kCodeVersion = "lattice-corr 1.0.0";

/// On-disk dataset: metadata plus rows of
/// (alpha, alphaprime, j, t, value, stderr, method).
struct Dataset {
    nlohmann::json meta;
    std::vector<CorrelationEntry> rows;
};

/// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);

void write_dataset_csv(const Dataset& ds, const std::string& path);
void write_dataset_json(const Dataset& ds, const std::string& path);
Dataset read_dataset(const std::string& path);

struct PeakFit {
    int alpha = 0, alphaprime = 0;
    std::vector<double> t;
    std::vector<double> peak_a, peak_b;
    std::vector<long long> argmax_a, argmax_b;
    double slope_a = 0.0, slope_b = 0.0;
};

struct CompareReport {
    size_t entries = 0;
    double max_abs_diff = 0.0;
    double rms_diff = 0.0;
    CorrelationIndex worst;
    bool identical = false;
    std::vector<PeakFit> peaks;
};

/// Entry-by-entry comparison of two datasets on the same grid; throws
/// GridMismatch otherwise. Includes the log-log slope fits of the per-time
/// peak magnitudes used by the acceptance suite.
CompareReport compare_datasets(const Dataset& a, const Dataset& b);

nlohmann::json report_to_json(const CompareReport& report);

/// Least-squares slope of log|y| vs log x (x, y > 0 pairs only).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lattice
