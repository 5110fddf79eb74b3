#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "domains.hpp"
#include "lazlab/errors.hpp"
#include "lazlab/io.hpp"

using namespace lazlab;

namespace {

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "lazlab_io_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("spec JSON round trip") {
    const FourierCurvatureSpec spec = testdomains::lopsided();
    const auto path = temp_dir() / "lopsided.json";
    save_spec(spec, path);
    const FourierCurvatureSpec back = load_spec(path);
    CHECK(back.name == spec.name);
    CHECK(back.c0 == spec.c0);
    REQUIRE(back.harmonics.size() == spec.harmonics.size());
    for (std::size_t i = 0; i < spec.harmonics.size(); ++i) {
        CHECK(back.harmonics[i].n == spec.harmonics[i].n);
        CHECK(back.harmonics[i].a == spec.harmonics[i].a);
        CHECK(back.harmonics[i].b == spec.harmonics[i].b);
    }
}

TEST_CASE("malformed spec JSON is rejected") {
    CHECK_THROWS_AS(spec_from_json(Json::array()), InvalidSpec);
    CHECK_THROWS_AS(spec_from_json(Json{{"name", "x"}}), InvalidSpec);
    CHECK_THROWS_AS(spec_from_json(Json{{"c0", "one"}}), InvalidSpec);
    CHECK_THROWS_AS(spec_from_json(Json{{"c0", 1.0}, {"harmonics", 3}}), InvalidSpec);
    CHECK_THROWS_AS(
        spec_from_json(Json{{"c0", 1.0}, {"harmonics", {{{"n", 2.5}, {"cos", 0.1}}}}}),
        InvalidSpec);
    const FourierCurvatureSpec s = spec_from_json(Json{{"c0", 1.0}, {"harmonics", {{{"n", 3}, {"sin", 0.1}}}}});
    CHECK(s.harmonics.at(0).a == 0.0);
    CHECK(s.harmonics.at(0).b == 0.1);

    const auto path = temp_dir() / "broken.json";
    std::ofstream(path) << "{ \"c0\": ";
    CHECK_THROWS_AS(load_spec(path), InvalidSpec);
    CHECK_THROWS_AS(load_spec(temp_dir() / "missing.json"), InvalidSpec);
}

TEST_CASE("numbers are written with 17 significant digits") {
    CHECK(format_number(std::numbers::pi) == "3.1415926535897931");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("orbit CSV") {
    const BoundaryCurve c(testdomains::oval(0.3));
    const PhasePoint seed{0.0, 0.5};
    const auto pts = orbit(c, seed, 2);
    std::ostringstream with, without;
    write_orbit_csv(with, c, seed, pts, true);
    write_orbit_csv(without, c, seed, pts, false);
    std::istringstream is(with.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "step,s,phi,x,y");
    std::getline(is, line);
    CHECK(line.rfind("0,0,0.5,", 0) == 0);
    CHECK(without.str().find("\n0,0,0.5,,\n") != std::string::npos);
}

TEST_CASE("profile CSV round trip is exact and deterministic") {
    const BoundaryCurve c(testdomains::lopsided());
    const CoeffProfile p = coefficient_profile(c, 16, {}, CoeffSource::fitted);
    std::ostringstream a, b;
    write_profile_csv(a, p);
    write_profile_csv(b, coefficient_profile(c, 16, {}, CoeffSource::fitted));
    CHECK(a.str() == b.str());

    const auto path = temp_dir() / "profile.csv";
    std::ofstream(path) << a.str();
    const CoeffProfile back = read_profile_csv(path);
    CHECK(back.source == CoeffSource::fitted);
    CHECK_FALSE(back.alpha3_prime.has_value());
    CHECK(back.x == p.x);
    CHECK(back.alpha3 == p.alpha3);
    CHECK(back.alpha4 == p.alpha4);
    CHECK(back.beta4 == p.beta4);
}

TEST_CASE("curvature CSV round trip") {
    const CurvatureProfile p = true_curvature_profile(BoundaryCurve(testdomains::wobble()), 16);
    std::ostringstream os;
    write_curvature_csv(os, p);
    CHECK(os.str().rfind("x,K,g,log_rho\n0,,,", 0) == 0);
    const auto path = temp_dir() / "curvature.csv";
    std::ofstream(path) << os.str();
    const CurvatureProfile back = read_curvature_csv(path);
    CHECK(back.x == p.x);
    CHECK(back.log_rho == p.log_rho);

    std::ofstream(path) << "x,log_rho\n0,abc\n";
    CHECK_THROWS_AS(read_curvature_csv(path), InvalidSpec);
    std::ofstream(path) << "x,log_rho\n0\n";
    CHECK_THROWS_AS(read_curvature_csv(path), InvalidSpec);
    std::ofstream(path) << "x,K\n0,1\n";
    CHECK_THROWS_AS(read_curvature_csv(path), InvalidSpec);
}

TEST_CASE("jet CSV and verdict JSON") {
    const BoundaryCurve c(testdomains::oval(0.3));
    const ConjugacyJet j = transition_jet(c, c, 8);
    std::ostringstream os;
    write_jet_csv(os, j);
    const std::string csv = os.str();
    CHECK(csv.rfind("s,a0,a0prime,b1\n0,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);

    const Json m = to_json(MatchResult{0.25, false, 1e-9, true});
    CHECK(m["match"] == true);
    CHECK(m["shift"] == 0.25);
    const Json t = to_json(verify_tangency(j, j, 1e-8));
    CHECK(t["tangent"] == true);
}
