#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lazlab/cli.hpp"
#include "lazlab/io.hpp"

#ifndef LAZLAB_DATA_DIR
#error "LAZLAB_DATA_DIR must point at the sample specs"
#endif

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "lazlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = lazlab::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(LAZLAB_DATA_DIR) + "/" + name; }

std::filesystem::path fresh_dir(const char* name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("domain check on the unit circle") {
    const Run r = invoke({"domain", "check", data("circle.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("L = 6.283185") != std::string::npos);
    CHECK(r.out.find("C = 0.159154") != std::string::npos);

    const Run j = invoke({"domain", "check", data("circle.json"), "--format", "json"});
    const auto parsed = lazlab::Json::parse(j.out);
    CHECK(parsed["perimeter"].get<double>() == doctest::Approx(6.283185307179586));
}

TEST_CASE("invalid spec yields error JSON and exit code 2") {
    const Run r = invoke({"domain", "check", data("invalid.json")});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    const auto e = lazlab::Json::parse(r.err);
    CHECK(e["error"] == "invalid_spec");
    CHECK(e["message"].get<std::string>().find("rho(1.5708)") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"coeffs"}).code == 2);
    CHECK(invoke({"coeffs", data("circle.json"), "--grid", "4"}).code == 2);
    CHECK(invoke({"coeffs", data("circle.json"), "--format", "xml"}).code == 2);
    CHECK(invoke({"coeffs", data("nope.json")}).code == 2);
    CHECK(invoke({"coeffs", data("circle.json"), "--samples", "3"}).code == 2);
    CHECK(invoke({"orbit", data("circle.json"), "--phi", "0"}).code == 2);
    CHECK(invoke({"coeffs", data("circle.json"), "--out", "/nonexistent/dir"}).code == 2);
}

TEST_CASE("coeffs on the circle") {
    const Run r = invoke({"coeffs", data("circle.json"), "--grid", "16"});
    CHECK(r.code == 0);
    CHECK(r.err.find("alpha3 mean 0.41123, max gap closed/fitted") != std::string::npos);
    CHECK(r.err.find("< 0.001") != std::string::npos);
    // Header plus 16 closed and 16 fitted rows.
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 33);
}

TEST_CASE("compare recovers the constructed shift") {
    const Run r = invoke({"compare", data("d1.json"), data("d1_shifted.json")});
    CHECK(r.code == 0);
    const auto v = lazlab::Json::parse(r.out);
    CHECK(v["match"] == true);
    CHECK(v["reflected"] == false);
    CHECK(v["shift"].get<double>() == doctest::Approx(0.25).epsilon(1e-6));

    const Run no = invoke({"compare", data("oval.json"), data("oval_02.json")});
    CHECK(no.code == 1);
    CHECK(lazlab::Json::parse(no.out)["match"] == false);
}

TEST_CASE("artifacts under --out are byte-identical across runs") {
    const auto a = fresh_dir("lazlab_cli_a");
    const auto b = fresh_dir("lazlab_cli_b");
    for (const auto& dir : {a, b}) {
        CHECK(invoke({"coeffs", data("wobble.json"), "--grid", "16", "--out", dir.string()}).code == 0);
    }
    const auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    for (const char* f : {"coeffs_closed.csv", "coeffs_fitted.csv"}) {
        CHECK(std::filesystem::exists(a / f));
        CHECK(slurp(a / f) == slurp(b / f));
    }
    CHECK(std::filesystem::exists(a / "summary.json"));

    // A profile written by coeffs feeds reconstruct.
    const Run r = invoke({"reconstruct", (a / "coeffs_closed.csv").string(), "--format", "json"});
    CHECK(r.code == 0);
    CHECK(lazlab::Json::parse(r.out)["consistent"] == true);
}

TEST_CASE("reconstruct, invariant, conjugacy and orbit") {
    const Run rec = invoke({"reconstruct", data("d1.json"), "--format", "json"});
    CHECK(rec.code == 0);
    CHECK(lazlab::Json::parse(rec.out)["round_trip"]["match"] == true);

    // The identity does not hold for the validated coefficients; the command
    // reports it as a failed verdict.
    const Run inv = invoke({"invariant", data("d1.json"), "--source", "closed", "--format", "json"});
    CHECK(inv.code == 1);
    CHECK(lazlab::Json::parse(inv.out)["search"]["rank"] == 1);

    const Run conj = invoke({"conjugacy", data("d1.json"), data("lopsided.json"), "--grid", "128",
                             "--format", "json"});
    CHECK(conj.code == 0);
    CHECK(lazlab::Json::parse(conj.out)["tangent"] == true);

    const Run orb = invoke({"orbit", data("circle.json"), "--phi", "1.0471975511965976", "--steps", "3"});
    CHECK(orb.code == 0);
    CHECK(orb.out.rfind("step,s,phi,x,y\n", 0) == 0);
    CHECK(std::count(orb.out.begin(), orb.out.end(), '\n') == 5);
}
