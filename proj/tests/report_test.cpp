#include "support.hpp"

#include "ratsym/report.hpp"

#include <doctest.h>

using namespace rt;

TEST_CASE("element and moebius serialization round-trips") {
    Tower t = tower_adjoin_sqrt(tower_adjoin_imaginary(Tower(), 6), 2, 6);
    Rng rng(31);
    for (int it = 0; it < 50; ++it) {
        TowerElement x = random_element(rng, t);
        Json j = element_to_json(x, false);
        CHECK(element_from_json(j, t) == x);
    }
    for (int it = 0; it < 20; ++it) {
        MoebiusMap m = random_moebius(rng, t);
        Json j = moebius_to_json(m, false);
        CHECK(moebius_from_json(j, t) == m);
    }
    Json tj = tower_to_json(t);
    CHECK(tower_from_json(tj) == t);
}

TEST_CASE("analyze reports re-verify") {
    Tower t;
    std::string input = "(z^4+8*z^3+8*z-8)/(8*(z-1))";
    RatFunc a = parse_expression(input, t);
    GroupReport rep = group_of(a);
    ReportInputs in;
    in.command = "analyze";
    in.input = input;
    // report the tower the analysis actually used (adjunctions included)
    in.tower = rep.g.elements.empty() ? t : rep.g.elements.back().tower();
    Json j = make_analyze_report(in, a, rep, {});
    CHECK(j["groups"]["G"]["order"] == 2);
    CHECK(j["checks"]["burnside"] == true);
    CHECK(j["checks"]["thm42_inclusion"] == true);
    CHECK(verify_report(j) == 0);

    // a corrupted certificate fails verification
    Json bad = j;
    bad["groups"]["G"]["certificates"][0]["nu"]["a"]["terms"][0]["coeff"] = "7";
    CHECK(verify_report(bad) != 0);
}

TEST_CASE("limit reports re-verify") {
    Tower t;
    std::string input = "(z^2-1)/(z^2+1)";
    RatFunc a = parse_expression(input, t);
    LimitGroupResult res = sigma_infinity(a, 3);
    ReportInputs in;
    in.command = "sigma-infinity";
    in.input = input;
    Tower report_tower = t;
    for (const auto& c : res.certificates)
        report_tower = merge_towers(report_tower, c.sigma.tower());
    in.tower = report_tower;
    Json j = make_limit_report(in, "sigma_infinity", res);
    CHECK(verify_report(j) == 0);
}
