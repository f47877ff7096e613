// report.cpp
#include <ebsim/report.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace ebsim::report {

std::string round_trip(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, result.ptr);
}

std::string table_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.7g", x);
    return buf;
}

std::string aligned_table(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> widths(header.size());
    for (size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("aligned_table: row width does not match header");
        for (size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    }

    std::string out;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (size_t c = 0; c < cells.size(); ++c) {
            out += cells[c];
            if (c + 1 < cells.size()) out.append(widths[c] - cells[c].size() + 2, ' ');
        }
        out += '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return out;
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

nlohmann::ordered_json to_json(const ReportEnvelope& envelope) {
    nlohmann::ordered_json j;
    j["command"] = envelope.command;
    j["parameters"] = envelope.parameters;
    j["rows"] = envelope.rows;
    j["tool_version"] = envelope.tool_version;
    j["timestamp"] = envelope.timestamp;
    return j;
}

std::string serialize(const ReportEnvelope& envelope) {
    return to_json(envelope).dump(2) + "\n";
}

ReportEnvelope parse_envelope(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("parse_envelope: ") + e.what());
    }
    if (!j.is_object() || !j.contains("command") || !j.contains("parameters") ||
        !j.contains("rows") || !j.contains("tool_version") || !j.contains("timestamp"))
        throw std::invalid_argument("parse_envelope: missing envelope field");
    if (!j["command"].is_string() || !j["tool_version"].is_string() ||
        !j["timestamp"].is_string() || !j["rows"].is_array() || !j["parameters"].is_object())
        throw std::invalid_argument("parse_envelope: mistyped envelope field");
    return ReportEnvelope{j["command"].get<std::string>(), j["parameters"], j["rows"],
                          j["tool_version"].get<std::string>(),
                          j["timestamp"].get<std::string>()};
}

nlohmann::ordered_json sweep_rows_json(const broadcast::SweepResult& result) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : result.rows) {
        nlohmann::ordered_json r;
        r["eta"] = row.eta;
        r["alpha_sq"] = row.alpha_sq;
        r["nonlocal_verdict"] = separability::to_string(row.nonlocal_verdict);
        r["local_verdict"] = separability::to_string(row.local_verdict);
        r["min_pt_eigenvalue"] = row.min_pt_eigenvalue;
        r["analytic_nonlocal_inseparable"] = row.analytic_nonlocal_inseparable;
        r["analytic_local_separable"] = row.analytic_local_separable;
        r["disagreement"] = row.disagreement;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string sweep_csv(const broadcast::SweepResult& result) {
    std::string out =
        "eta,alpha_sq,nonlocal_verdict,local_verdict,min_pt_eigenvalue,"
        "analytic_nonlocal_inseparable,analytic_local_separable\r\n";
    for (const auto& row : result.rows) {
        out += round_trip(row.eta);
        out += ',';
        out += round_trip(row.alpha_sq);
        out += ',';
        out += separability::to_string(row.nonlocal_verdict);
        out += ',';
        out += separability::to_string(row.local_verdict);
        out += ',';
        out += round_trip(row.min_pt_eigenvalue);
        out += ',';
        out += row.analytic_nonlocal_inseparable ? "true" : "false";
        out += ',';
        out += row.analytic_local_separable ? "true" : "false";
        out += "\r\n";
    }
    return out;
}

nlohmann::ordered_json range_row_json(const separability::AlphaRange& range) {
    nlohmann::ordered_json r;
    r["kind"] = separability::to_string(range.kind);
    r["empty"] = range.empty;
    if (range.empty) {
        r["lo"] = nullptr;
        r["hi"] = nullptr;
    } else {
        r["lo"] = range.lo;
        r["hi"] = range.hi;
    }
    return r;
}

nlohmann::ordered_json scaling_rows_json(const std::vector<separability::NonlocalScaling>& rows) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json r;
        r["m"] = row.m;
        r["s_nl"] = row.s_nl;
        r["verdict"] = separability::to_string(row.verdict);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace ebsim::report
