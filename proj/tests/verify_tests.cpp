#include "doctest.h"
#include "msox/error.hpp"
#include "msox/verify.hpp"

using namespace msox;

TEST_CASE("the check registry is stable") {
    std::vector<std::string> names = check_names();
    std::vector<std::string> want = {
        "type_engine_oracle", "compositionality", "union_algebra",    "pumping_models",
        "stable_pumping",     "saturation",       "circuit_fidelity", "sat_reduction",
        "cvp_reduction",      "minorder_reduction", "xi_decider",     "cycle_parity",
    };
    CHECK(names == want);
    CHECK_THROWS_AS(run_check("no_such_check"), Error);
}

TEST_CASE("report lines") {
    CheckResult r{"x", true, "d"};
    CHECK(format_report_line(r) == "check=x status=pass detail=d");
    r.pass = false;
    CHECK(format_report_line(r) == "check=x status=fail detail=d");
}

TEST_CASE("spot checks pass") {
    VerifyOptions quick;
    quick.quick = true;
    quick.seed = 7;

    CheckResult r = run_check("cycle_parity", quick);
    CHECK(r.pass);
    CHECK(r.name == "cycle_parity");

    CHECK(run_check("type_engine_oracle", quick).pass);
    CHECK(run_check("compositionality", quick).pass);
}
