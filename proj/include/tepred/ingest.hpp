#pragma once

#include <tepred/core.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tep::ingest {

using core::Matrix;
using core::Vector;

enum class RowPolicy { RejectMissing, DropMissing };

struct PopulationFile {
    std::string path;
    std::optional<std::string> id_column;
    /// Empty means every column except the id column, in file order.
    std::vector<std::string> covariate_columns;
    RowPolicy row_policy = RowPolicy::RejectMissing;
};

struct LoadedPopulation {
    Matrix x;
    std::vector<std::string> ids; // row numbers when no id column is given
    std::vector<std::string> columns;
    int rows_read = 0;
    int rows_dropped = 0;
};

/// Splits one CSV record. Fields may be double-quoted; "" inside quotes is a
/// literal quote.
std::vector<std::string> split_record(const std::string& line, int line_no);

/// `source` names the input in error messages.
LoadedPopulation load(std::istream& in, const PopulationFile& spec, const std::string& source = "<stream>");
LoadedPopulation load(const PopulationFile& spec);

/// Writes id,weight rows.
void write_weights(std::ostream& out, const std::vector<std::string>& ids, const Vector& w);

struct CovariateDiagnostic {
    std::string name;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    /// |mean_a - mean_b| / sd_b; unset when var_b is zero.
    std::optional<double> smd;
    /// var_a / var_b; unset when var_b is zero.
    std::optional<double> variance_ratio;
    bool smd_flag = false;   // smd > 0.25
    bool ratio_flag = false; // ratio outside [0.5, 2]
    bool degenerate = false; // zero variance in the target population
};

struct DiagnosticsReport {
    std::vector<CovariateDiagnostic> covariates;
    /// Distances of B measured in A's metric after standardizing to A.
    std::optional<double> mahalanobis_m;
    std::optional<double> burg_d;
    std::optional<double> combined;
    std::string distance_error;
    std::optional<double> coverage;
    std::optional<double> vif;
    std::optional<double> n_effective;
    std::optional<double> max_normalized_weight;
    std::optional<int> heavy_units;
    std::string weights_error;
    int n_a = 0;
    int n_b = 0;
};

/// SMDs use B's standard deviations; M and D use A's covariance. Weight
/// quantities come from a selection model of A against B.
DiagnosticsReport diagnose(const LoadedPopulation& pop_a, const LoadedPopulation& pop_b);

} // namespace tep::ingest
