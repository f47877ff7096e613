// Invariant suite: complete run, stable ordering, fault injection.
#include <doctest.h>

#include <ebsim/verify.hpp>

#include <string>
#include <vector>

using namespace ebsim;

namespace {

const std::vector<std::string> EXPECTED_ORDER = {
    "cloner-properties", "closed-form-equivalence", "complementarity",
    "optimal-window",    "threshold-scan",          "three-copy-pipeline",
    "copy-scaling",      "general-cloner-form",     "transpose-spectrum"};

} // namespace

TEST_CASE("run_all_checks: nine named checks, stable order, all pass") {
    const auto results = verify::run_all_checks();
    REQUIRE(results.size() == EXPECTED_ORDER.size());
    double total_millis = 0.0;
    for (size_t i = 0; i < results.size(); ++i) {
        CAPTURE(results[i].name);
        CHECK(results[i].name == EXPECTED_ORDER[i]);
        CHECK(results[i].status == verify::CheckStatus::Pass);
        CHECK(!results[i].detail.empty());
        CHECK(results[i].millis >= 0.0);
        total_millis += results[i].millis;
    }
    CHECK(verify::all_passed(results));
    CHECK(total_millis < 60000.0);
}

TEST_CASE("run_all_checks: injected coherence flip fails exactly the equivalence check") {
    verify::VerifyOptions options;
    options.flip_nonlocal_coherence = true;
    const auto results = verify::run_all_checks(options);
    REQUIRE(results.size() == EXPECTED_ORDER.size());
    for (const auto& result : results) {
        CAPTURE(result.name);
        if (result.name == "closed-form-equivalence")
            CHECK(result.status == verify::CheckStatus::Fail);
        else
            CHECK(result.status == verify::CheckStatus::Pass);
    }
    CHECK(!verify::all_passed(results));
}

TEST_CASE("check status names") {
    CHECK(std::string(verify::to_string(verify::CheckStatus::Pass)) == "pass");
    CHECK(std::string(verify::to_string(verify::CheckStatus::Fail)) == "fail");
    CHECK(std::string(verify::to_string(verify::CheckStatus::Inconclusive)) == "inconclusive");
}
