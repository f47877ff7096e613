// ebsim.cpp -- command-line front end: alpha windows, parameter sweeps, the
// three-copy pipeline, copy scaling, and the invariant suite, as aligned
// tables or machine-readable JSON/CSV.
#include <CLI11.hpp>

#include <ebsim/broadcast.hpp>
#include <ebsim/cloners.hpp>
#include <ebsim/report.hpp>
#include <ebsim/separability.hpp>
#include <ebsim/states.hpp>
#include <ebsim/verify.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace ebsim;

namespace {

constexpr int EXIT_INVARIANT = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_IO = 3;

// Output and envelope settings shared by every subcommand.
struct OutputOptions {
    std::string format = "table";
    std::string out;
    std::string timestamp;
};

void add_output_flags(CLI::App& cmd, OutputOptions& opts, bool with_csv) {
    const std::vector<std::string> formats =
        with_csv ? std::vector<std::string>{"table", "json", "csv"}
                 : std::vector<std::string>{"table", "json"};
    cmd.add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    cmd.add_option("--out", opts.out, "Write the report to this path instead of stdout");
    cmd.add_option("--timestamp", opts.timestamp,
                   "Fix the envelope timestamp (ISO-8601) for reproducible output");
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::FILE* file = std::fopen(out_path.c_str(), "wb");
    if (!file) {
        std::fprintf(stderr, "ebsim: cannot open '%s' for writing\n", out_path.c_str());
        return EXIT_IO;
    }
    const bool wrote = std::fwrite(text.data(), 1, text.size(), file) == text.size();
    const bool closed = std::fclose(file) == 0;
    if (!wrote || !closed) {
        std::fprintf(stderr, "ebsim: failed writing '%s'\n", out_path.c_str());
        return EXIT_IO;
    }
    return 0;
}

std::string envelope_text(const std::string& command, nlohmann::ordered_json parameters,
                          nlohmann::ordered_json rows, const OutputOptions& opts) {
    report::ReportEnvelope envelope{command, std::move(parameters), std::move(rows),
                                    report::TOOL_VERSION,
                                    opts.timestamp.empty() ? report::iso8601_utc_now()
                                                           : opts.timestamp};
    return report::serialize(envelope);
}

std::vector<std::string> range_table_row(const separability::AlphaRange& range) {
    if (range.empty)
        return {separability::to_string(range.kind), "empty", "-", "-"};
    return {separability::to_string(range.kind), "ok", report::table_number(range.lo),
            report::table_number(range.hi)};
}

int cmd_range(double eta, const OutputOptions& opts) {
    const auto nonlocal = separability::inseparable_alpha_range(eta);
    const auto local = separability::local_separable_alpha_range(eta);

    if (opts.format == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        rows.push_back(report::range_row_json(nonlocal));
        rows.push_back(report::range_row_json(local));
        return emit(envelope_text("range", {{"eta", eta}}, std::move(rows), opts), opts.out);
    }

    std::string text = "eta  " + report::table_number(eta) + "\n";
    text += report::aligned_table({"window", "status", "lo", "hi"},
                                  {range_table_row(nonlocal), range_table_row(local)});
    return emit(text, opts.out);
}

std::string sweep_table(const broadcast::SweepResult& result) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(result.rows.size());
    for (const auto& row : result.rows)
        rows.push_back({report::table_number(row.eta), report::table_number(row.alpha_sq),
                        separability::to_string(row.nonlocal_verdict),
                        separability::to_string(row.local_verdict),
                        report::table_number(row.min_pt_eigenvalue),
                        row.analytic_nonlocal_inseparable ? "true" : "false",
                        row.analytic_local_separable ? "true" : "false",
                        row.disagreement ? "true" : "false"});
    std::string text = report::aligned_table(
        {"eta", "alpha_sq", "nonlocal", "local", "min_pt_eigenvalue", "analytic_nonlocal",
         "analytic_local", "disagreement"},
        rows);
    text += "disagreements: " + std::to_string(result.disagreements) + "\n";
    return text;
}

int cmd_sweep(const std::vector<double>& eta_grid, const std::vector<double>& alpha_grid,
              const OutputOptions& opts) {
    const auto result = broadcast::sweep(eta_grid, alpha_grid);

    std::string text;
    if (opts.format == "json")
        text = envelope_text("sweep", {{"eta_grid", eta_grid}, {"alpha_grid", alpha_grid}},
                             report::sweep_rows_json(result), opts);
    else if (opts.format == "csv")
        text = report::sweep_csv(result);
    else
        text = sweep_table(result);

    const int io = emit(text, opts.out);
    if (io != 0) return io;
    return result.disagreements == 0 ? 0 : EXIT_INVARIANT;
}

std::string complex_cell(const Complex& z) {
    if (std::abs(z.imag()) < 1e-15) return report::table_number(z.real());
    return report::table_number(z.real()) + (z.imag() >= 0.0 ? "+" : "") +
           report::table_number(z.imag()) + "i";
}

int cmd_clone3(double alpha_sq, const OutputOptions& opts) {
    const auto input = states::EntangledInput::from_alpha_sq(alpha_sq);
    const auto gm = cloners::build_gisin_massar_3();
    const auto run = broadcast::run_broadcast(input, gm.isometry, gm.spec);
    const auto& pair = run.nonlocal_pairs.front();
    const auto ppt = separability::ppt_verdict(pair);
    const auto fit = states::fit_scaled_form(pair, states::entangled_input_state(alpha_sq));

    if (opts.format == "json") {
        nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
        for (Index r = 0; r < 4; ++r) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (Index c = 0; c < 4; ++c)
                row.push_back({pair.matrix(r, c).real(), pair.matrix(r, c).imag()});
            matrix.push_back(std::move(row));
        }
        nlohmann::ordered_json record;
        record["alpha_sq"] = alpha_sq;
        record["nonlocal_pair"] = std::move(matrix);
        record["verdict"] = separability::to_string(ppt.verdict);
        record["min_pt_eigenvalue"] = ppt.min_eigenvalue;
        record["scaled_form_s"] = fit.s;
        record["scaled_form_residual"] = fit.residual;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        rows.push_back(std::move(record));
        return emit(envelope_text("clone3", {{"alpha_sq", alpha_sq}}, std::move(rows), opts),
                    opts.out);
    }

    std::string text = "three-copy nonlocal pair at alpha_sq = " + report::table_number(alpha_sq) +
                       "\n";
    for (Index r = 0; r < 4; ++r) {
        std::string line = " ";
        for (Index c = 0; c < 4; ++c) {
            std::string cell = complex_cell(pair.matrix(r, c));
            line += "  " + cell + std::string(cell.size() < 12 ? 12 - cell.size() : 0, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        text += line + "\n";
    }
    text += "verdict            " + std::string(separability::to_string(ppt.verdict)) + "\n";
    text += "min pt eigenvalue  " + report::table_number(ppt.min_eigenvalue) + "\n";
    text += "fitted s           " + report::table_number(fit.s) + "\n";
    text += "fit residual       " + report::table_number(fit.residual) + "\n";
    return emit(text, opts.out);
}

int cmd_nonlocal(int max_m, const OutputOptions& opts) {
    std::vector<separability::NonlocalScaling> rows;
    rows.reserve(static_cast<size_t>(max_m));
    for (int m = 1; m <= max_m; ++m) rows.push_back(separability::nonlocal_scaling(m));
    const int max_copies = separability::max_entangled_copies();

    if (opts.format == "json")
        return emit(envelope_text("nonlocal", {{"max_m", max_m}},
                                  report::scaling_rows_json(rows), opts),
                    opts.out);

    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& row : rows)
        cells.push_back({std::to_string(row.m), report::table_number(row.s_nl),
                         separability::to_string(row.verdict)});
    std::string text = report::aligned_table({"M", "s_nl", "verdict"}, cells);
    text += "max entangled copies: " + std::to_string(max_copies) + "\n";
    return emit(text, opts.out);
}

int cmd_verify(std::uint64_t seed, bool flip_coherence, const OutputOptions& opts) {
    verify::VerifyOptions options;
    options.seed = seed;
    options.flip_nonlocal_coherence = flip_coherence;
    const auto results = verify::run_all_checks(options);

    std::string text;
    if (opts.format == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            nlohmann::ordered_json record;
            record["name"] = r.name;
            record["status"] = verify::to_string(r.status);
            record["detail"] = r.detail;
            rows.push_back(std::move(record));
        }
        text = envelope_text("verify",
                             {{"seed", seed}, {"flip_nonlocal_coherence", flip_coherence}},
                             std::move(rows), opts);
    } else {
        std::vector<std::vector<std::string>> cells;
        cells.reserve(results.size());
        for (const auto& r : results)
            cells.push_back(
                {r.name, verify::to_string(r.status), report::table_number(r.millis), r.detail});
        text = report::aligned_table({"check", "status", "millis", "detail"}, cells);
        std::string failed;
        std::string inconclusive;
        for (const auto& r : results) {
            if (r.status == verify::CheckStatus::Fail)
                failed += (failed.empty() ? "" : ", ") + r.name;
            if (r.status == verify::CheckStatus::Inconclusive)
                inconclusive += (inconclusive.empty() ? "" : ", ") + r.name;
        }
        if (!failed.empty())
            text += "result: FAILED (" + failed + ")\n";
        else if (!inconclusive.empty())
            text += "result: passed with inconclusive checks (" + inconclusive + ")\n";
        else
            text += "result: all checks passed\n";
    }

    const int io = emit(text, opts.out);
    if (io != 0) return io;
    return verify::all_passed(results) ? 0 : EXIT_INVARIANT;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement broadcasting analysis toolkit"};
    app.set_version_flag("--version", report::TOOL_VERSION);
    app.require_subcommand(1);

    double eta = 0.0;
    OutputOptions range_opts;
    auto* range = app.add_subcommand(
        "range", "Inseparable nonlocal and separable local alpha^2 windows for one eta");
    range->add_option("--eta", eta, "Reduction factor in (0, 2/3]")->required();
    add_output_flags(*range, range_opts, false);

    std::vector<double> eta_grid = broadcast::default_eta_grid();
    std::vector<double> alpha_grid = broadcast::default_alpha_grid();
    OutputOptions sweep_opts;
    auto* sweep = app.add_subcommand(
        "sweep", "Numeric verdicts vs analytic windows over an (eta, alpha^2) grid");
    sweep->add_option("--eta-grid", eta_grid, "Reduction factors (default: 9 points on [0.58, 2/3])")
        ->delimiter(',')
        ->expected(-1);
    sweep->add_option("--alpha-grid", alpha_grid,
                      "Input weights alpha^2 (default: 101 points on [0, 1])")
        ->delimiter(',')
        ->expected(-1);
    add_output_flags(*sweep, sweep_opts, true);

    double alpha_sq = 0.5;
    OutputOptions clone3_opts;
    auto* clone3 = app.add_subcommand(
        "clone3", "Three-copy broadcast: nonlocal pair, verdict, fitted scaled form");
    clone3->add_option("--alpha-sq", alpha_sq, "Input weight alpha^2 in [0, 1]")->required();
    add_output_flags(*clone3, clone3_opts, false);

    int max_m = 8;
    OutputOptions nonlocal_opts;
    auto* nonlocal = app.add_subcommand(
        "nonlocal", "Scaling of whole-pair cloning with the number of copies");
    nonlocal->add_option("--max-m", max_m, "Largest copy count M to tabulate")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    add_output_flags(*nonlocal, nonlocal_opts, false);

    std::uint64_t seed = verify::VerifyOptions{}.seed;
    bool flip_coherence = false;
    OutputOptions verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "Run the full invariant suite");
    verify_cmd->add_option("--seed", seed, "Seed for the general-cloner feasibility search")
        ->capture_default_str();
    verify_cmd->add_flag("--flip-coherence-sign", flip_coherence,
                         "Fault injection: corrupt the reference coherence term to force a "
                         "failure (testing the failure path)");
    add_output_flags(*verify_cmd, verify_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return EXIT_USAGE;
    }

    try {
        if (range->parsed()) return cmd_range(eta, range_opts);
        if (sweep->parsed()) return cmd_sweep(eta_grid, alpha_grid, sweep_opts);
        if (clone3->parsed()) return cmd_clone3(alpha_sq, clone3_opts);
        if (nonlocal->parsed()) return cmd_nonlocal(max_m, nonlocal_opts);
        if (verify_cmd->parsed()) return cmd_verify(seed, flip_coherence, verify_opts);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "ebsim: %s\n", e.what());
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "ebsim: %s\n", e.what());
        return EXIT_INVARIANT;
    }
    return EXIT_USAGE;
}
