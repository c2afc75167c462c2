#include <catch2/catch_amalgamated.hpp>

#include "facsunit/serialize.hpp"

using namespace facsunit;
using nlohmann::json;

TEST_CASE("spec JSON round trip and presets") {
    auto spec = RecurrenceSpec::cullen();
    json j = to_json(spec);
    CHECK(j == json::parse(R"({"r":[5,-8,4],"u":[1,3,9]})"));
    auto back = spec_from_json(j);
    CHECK(back.r1 == 5);
    CHECK(back.u2 == 9);

    CHECK(to_json(resolve_spec("cullen")) == j);
    CHECK(to_json(resolve_spec("woodall")) == json::parse(R"({"r":[5,-8,4],"u":[-1,1,7]})"));
    CHECK(to_json(resolve_spec(R"({"r":[5,-8,4],"u":[1,3,9]})")) == j);
    CHECK_THROWS_AS(spec_from_json(json::parse(R"({"r":[1,2],"u":[1,2,3]})")), error);
}

TEST_CASE("lift result carries its digit chain") {
    auto res = lift({3, Int(0), 1, 4});
    json j = to_json(res);
    CHECK(j.at("p") == 3);
    CHECK(j.at("depth") == 4);
    CHECK(j.at("digits").size() == 3);
    CHECK(j.at("n_final").get<std::string>() == res.n_final.get_str());

    // The chain in the JSON reconstructs the representative.
    Int n(j.at("n0").get<unsigned long>());
    Int pj = 3;
    for (unsigned d : j.at("digits").get<std::vector<unsigned>>()) {
        n += 2 * pj * d;
        pj *= 3;
    }
    CHECK(n.get_str() == j.at("n_final").get<std::string>());
}

TEST_CASE("solution records serialize with big values as strings") {
    SUnitBox box{{3, 5, 7}, {130, 100, 80}};
    auto res = solve_factorial_sunit({Family::woodall}, 4, {7, 7}, box);
    REQUIRE(res.records.size() == 1);  // W_4 + 7! = 5103
    json j = to_json(res);
    CHECK(j.at("records")[0].at("value") == "5103");
    CHECK(j.at("records")[0].at("family") == "woodall");
    CHECK(j.at("intersection")[0] == "5103");

    auto csv = solve_result_csv(res);
    CHECK(csv.find("value,family,n,m,eps,sign_s,e3,e5,e7,degenerate") == 0);
    CHECK(csv.find("5103,woodall,4,7,+1,+1,6,0,1,no") != std::string::npos);
}

TEST_CASE("bound report JSON is self-describing") {
    auto rep = make_bound_report(RecurrenceSpec::cullen(), 7, 1);
    json j = to_json(rep);
    CHECK(j.at("X") == 11);
    CHECK(j.at("nu_bounds").size() == 4);
    CHECK(j.at("audit").is_array());
}
