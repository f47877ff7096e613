// report.hpp -- serialization of analysis results: versioned report
// envelopes with round-trip-exact JSON, RFC-4180 CSV for sweeps, and
// aligned plain-text tables at reading precision.
#pragma once

#include <ebsim/broadcast.hpp>
#include <ebsim/separability.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace ebsim::report {

inline constexpr const char* TOOL_VERSION = "0.1.0";

// Shortest decimal form that parses back to exactly the same double;
// NaN becomes "nan".
std::string round_trip(double x);

// Seven significant digits for human-facing tables.
std::string table_number(double x);

// Columns padded to equal width, two-space gutters, one row per line.
std::string aligned_table(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows);

// Current wall-clock UTC time, e.g. "2024-05-01T12:00:00Z".
std::string iso8601_utc_now();

// Machine-readable wrapper around one command's results.
struct ReportEnvelope {
    std::string command;
    nlohmann::ordered_json parameters;
    nlohmann::ordered_json rows;
    std::string tool_version;
    std::string timestamp;
};

nlohmann::ordered_json to_json(const ReportEnvelope& envelope);
std::string serialize(const ReportEnvelope& envelope);
// Inverse of serialize; throws std::invalid_argument on schema violations.
ReportEnvelope parse_envelope(const std::string& text);

// One record per sweep row, every field present.
nlohmann::ordered_json sweep_rows_json(const broadcast::SweepResult& result);

// Fixed-schema CSV of a sweep (CRLF line endings, no disagreement column):
// eta,alpha_sq,nonlocal_verdict,local_verdict,min_pt_eigenvalue,
// analytic_nonlocal_inseparable,analytic_local_separable
std::string sweep_csv(const broadcast::SweepResult& result);

// Record for one alpha^2 window; lo/hi are null when the window is empty.
nlohmann::ordered_json range_row_json(const separability::AlphaRange& range);

// Records for the copy-scaling table.
nlohmann::ordered_json scaling_rows_json(const std::vector<separability::NonlocalScaling>& rows);

} // namespace ebsim::report
