#include "lazlab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "lazlab/acceptance.hpp"
#include "lazlab/conjugacy.hpp"
#include "lazlab/errors.hpp"
#include "lazlab/io.hpp"
#include "lazlab/lazutkin.hpp"
#include "lazlab/rigidity.hpp"

namespace lazlab::cli {

namespace {

constexpr const char* kCommands[] = {"domain-check", "orbit",   "coeffs",    "invariant",
                                     "reconstruct",  "compare", "conjugacy", "selftest"};

constexpr int kProfileGrid = 64;

std::size_t expected_inputs(const std::string& command) {
    if (command == "selftest") return 0;
    if (command == "compare" || command == "conjugacy") return 2;
    return 1;
}

bool is_csv(const std::filesystem::path& p) { return p.extension() == ".csv"; }

// Destination for one CSV artifact: a file under --out, or `out`.
class Sink {
public:
    Sink(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

    template <class Writer>
    void csv(const std::string& file, Writer&& write) {
        if (cfg_.out_dir) {
            std::ofstream f(*cfg_.out_dir / file);
            if (!f) throw PreconditionError("cannot write " + (*cfg_.out_dir / file).string());
            write(f);
            files_.push_back(file);
        } else if (cfg_.format == Format::csv) {
            write(out_);
        }
    }

    // Summary JSON: stdout when files went to --out or JSON was requested.
    void summary(Json j, std::ostream& err, const std::string& text) {
        if (!files_.empty()) j["files"] = files_;
        if (cfg_.out_dir) {
            std::ofstream f(*cfg_.out_dir / "summary.json");
            f << j.dump(2) << '\n';
        }
        if (cfg_.out_dir || cfg_.format == Format::json) {
            out_ << j.dump(2) << '\n';
        }
        if (!text.empty()) err << text << '\n';
    }

private:
    const RunConfig& cfg_;
    std::ostream& out_;
    std::vector<std::string> files_;
};

double tolerance_or(const RunConfig& cfg, double fallback) {
    return cfg.tolerance.value_or(fallback);
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::string profile_failures(const CoeffProfile& p) {
    std::ostringstream os;
    os << p.failures.size() << " grid points failed";
    if (!p.failures.empty()) {
        os << " (first at x = " << p.failures.front().x << ": " << p.failures.front().message
           << ")";
    }
    return os.str();
}

CoeffProfile profile_for(const BoundaryCurve& curve, const RunConfig& cfg) {
    CoeffProfile p = coefficient_profile(curve, cfg.grid_or(kProfileGrid), cfg.fit, cfg.source);
    if (!p.complete()) throw NumericalError("coefficient profile: " + profile_failures(p));
    if (!p.alpha3_prime) p = differentiate_profile(p);
    return p;
}

int domain_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const FourierCurvatureSpec spec = load_spec(cfg.inputs[0]);
    const BoundaryCurve curve(spec);
    const double closure = curve.closure_error();
    const bool pass = closure < 1e-12 * curve.perimeter();
    const Json j{{"name", spec.name},
                 {"valid", true},
                 {"perimeter", curve.perimeter()},
                 {"lazutkin_constant", curve.lazutkin_constant()},
                 {"closure_error", closure},
                 {"pass", pass}};
    if (cfg.format == Format::json) {
        out << j.dump(2) << '\n';
    } else {
        out << "name = " << spec.name << "\nL = " << format_number(curve.perimeter())
            << "\nC = " << format_number(curve.lazutkin_constant())
            << "\nclosure error = " << format_number(closure) << '\n';
    }
    (void)err;
    return pass ? kPass : kVerdictFail;
}

int orbit_cmd(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const FourierCurvatureSpec spec = load_spec(cfg.inputs[0]);
    const BoundaryCurve curve(spec);
    const PhasePoint seed{cfg.seed_s, cfg.seed_phi};
    check_phase_point(seed);
    const std::vector<PhasePoint> pts = orbit(curve, seed, static_cast<std::size_t>(cfg.steps));
    Sink sink(cfg, out);
    sink.csv("orbit.csv", [&](std::ostream& os) { write_orbit_csv(os, curve, seed, pts, true); });
    sink.summary({{"name", spec.name}, {"steps", cfg.steps}, {"pass", true}}, err, "");
    return kPass;
}

int coeffs_cmd(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const FourierCurvatureSpec spec = load_spec(cfg.inputs[0]);
    const BoundaryCurve curve(spec);
    const CoeffProfile closed = coefficient_profile(curve, cfg.grid_or(kProfileGrid), cfg.fit, CoeffSource::closed);
    const CoeffProfile fitted =
        differentiate_profile(coefficient_profile(curve, cfg.grid_or(kProfileGrid), cfg.fit, CoeffSource::fitted));

    const auto gap = [](const std::vector<double>& a, const std::vector<double>& b) {
        double g = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
        return g;
    };
    const double g3 = gap(fitted.alpha3, closed.alpha3);
    const double g4 = gap(fitted.alpha4, closed.alpha4);
    const double gb = gap(fitted.beta4, closed.beta4);
    const double max_gap = std::max({g3, g4, gb});
    const double tol = tolerance_or(cfg, 1e-3);
    const bool pass = fitted.complete() && max_gap < tol;

    Sink sink(cfg, out);
    if (cfg.out_dir) {
        sink.csv("coeffs_closed.csv", [&](std::ostream& os) { write_profile_csv(os, closed); });
        sink.csv("coeffs_fitted.csv", [&](std::ostream& os) { write_profile_csv(os, fitted); });
    } else {
        sink.csv("", [&](std::ostream& os) {
            std::ostringstream rest;
            write_profile_csv(os, closed);
            write_profile_csv(rest, fitted);
            const std::string s = rest.str();
            os << s.substr(s.find('\n') + 1);
        });
    }
    Json fits = Json::array();
    for (const FittedCoeffs& f : fitted.fits) fits.push_back(to_json(f));
    std::ostringstream text;
    text << "alpha3 mean " << std::setprecision(5) << mean(closed.alpha3)
         << ", max gap closed/fitted " << std::setprecision(3) << max_gap
         << (pass ? " < " : " >= ") << tol;
    if (!fitted.complete()) text << "; " << profile_failures(fitted);
    sink.summary({{"name", spec.name},
                  {"grid", cfg.grid_or(kProfileGrid)},
                  {"alpha3_mean", mean(closed.alpha3)},
                  {"max_gap", {{"alpha3", g3}, {"alpha4", g4}, {"beta4", gb}}},
                  {"tolerance", tol},
                  {"failures", fitted.failures.size()},
                  {"fits", fits},
                  {"pass", pass}},
                 err, text.str());
    return pass ? kPass : kVerdictFail;
}

int invariant_cmd(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const FourierCurvatureSpec spec = load_spec(cfg.inputs[0]);
    const BoundaryCurve curve(spec);
    const CombinationSearch search = find_annihilating_combination(CoefficientModel::validated());
    const Combination comb = search.combination.value_or(kLiteratureCombination);
    const CoeffProfile p = profile_for(curve, cfg);
    const std::vector<double> k = k_invariant(p, comb);

    const CurvatureProfile truth = true_curvature_profile(curve, cfg.grid_or(kProfileGrid));
    std::vector<double> g(p.size());
    double residual = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Jet3 r = x_derivatives(curve, p.x[i]);
        g[i] = r.d1 / r.value;
        residual = std::max(residual, std::abs(k[i] - comb.mu * g[i] * g[i] * g[i]));
    }
    const double tol =
        tolerance_or(cfg, cfg.source == CoeffSource::closed ? 1e-10 : 5e-2);
    const bool pass = residual < tol;

    Sink sink(cfg, out);
    sink.csv("invariant.csv", [&](std::ostream& os) { write_curvature_csv(os, truth, k, g); });
    Json comb_json{{"alpha3_prime", comb.c_a3p}, {"alpha4", comb.c_a4}, {"beta4", comb.c_b4},
                   {"mu", comb.mu}, {"origin", search.combination ? "found" : "literature"}};
    std::ostringstream text;
    text << "identity residual max |K - mu rho^-3 rho'^3| = " << residual << " ("
         << (pass ? "pass" : "fail") << ", tolerance " << tol << "); " << search.diagnosis;
    sink.summary({{"name", spec.name},
                  {"source", to_string(cfg.source)},
                  {"combination", comb_json},
                  {"search", to_json(search)},
                  {"identity_residual", residual},
                  {"tolerance", tol},
                  {"pass", pass}},
                 err, text.str());
    return pass ? kPass : kVerdictFail;
}

int reconstruct_cmd(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::filesystem::path& in = cfg.inputs[0];
    std::optional<BoundaryCurve> curve;
    CoeffProfile p;
    std::string name;
    if (is_csv(in)) {
        p = read_profile_csv(in);
        name = in.stem().string();
    } else {
        const FourierCurvatureSpec spec = load_spec(in);
        name = spec.name;
        curve.emplace(spec);
        p = profile_for(*curve, cfg);
    }
    const Reconstruction rec = reconstruct_curvature(p);

    Json j{{"name", name},
           {"source", to_string(p.source)},
           {"grid", p.size()},
           {"newton_iterations", rec.iterations},
           {"newton_residual", rec.residual},
           {"turning_defect", rec.turning_defect},
           {"consistent", rec.consistent}};
    bool pass = rec.consistent;
    std::ostringstream text;
    text << "turning defect " << rec.turning_defect;
    if (curve) {
        const double tol = tolerance_or(
            cfg, p.source == CoeffSource::closed ? kMatchToleranceClosed : kMatchToleranceFitted);
        const MatchResult m =
            match_profiles(rec.profile, true_curvature_profile(*curve, static_cast<int>(p.size())), tol);
        j["round_trip"] = to_json(m);
        pass = pass && m.match;
        text << ", round-trip distance " << m.distance << " (shift " << m.shift << ")";
    }
    j["pass"] = pass;

    Sink sink(cfg, out);
    sink.csv("curvature.csv",
             [&](std::ostream& os) { write_curvature_csv(os, rec.profile, {}, rec.slope); });
    sink.summary(j, err, text.str());
    return pass ? kPass : kVerdictFail;
}

CurvatureProfile profile_from_input(const std::filesystem::path& in, const RunConfig& cfg) {
    if (is_csv(in)) return read_curvature_csv(in);
    const BoundaryCurve curve(load_spec(in));
    return reconstruct_curvature(profile_for(curve, cfg)).profile;
}

int compare_cmd(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const CurvatureProfile a = profile_from_input(cfg.inputs[0], cfg);
    const CurvatureProfile b = profile_from_input(cfg.inputs[1], cfg);
    const bool from_fits = cfg.source == CoeffSource::fitted &&
                           !(is_csv(cfg.inputs[0]) && is_csv(cfg.inputs[1]));
    const double tol =
        tolerance_or(cfg, from_fits ? kMatchToleranceFitted : kMatchToleranceClosed);
    const MatchResult m = match_profiles(a, b, tol);
    Json j = to_json(m);
    j["tolerance"] = tol;
    // The verdict is the primary output of compare.
    out << j.dump(2) << '\n';
    if (cfg.out_dir) {
        std::ofstream f(*cfg.out_dir / "compare.json");
        f << j.dump(2) << '\n';
    }
    (void)err;
    return m.match ? kPass : kVerdictFail;
}

int conjugacy_cmd(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const BoundaryCurve c1(load_spec(cfg.inputs[0]));
    const BoundaryCurve c2(load_spec(cfg.inputs[1]));
    JetSolveOptions opts;
    opts.n = cfg.grid_or(kJetGridSize);
    const ConjugacyJet solved = solve_jet_system(c1, c2, opts);
    const ConjugacyJet transition = transition_jet(c1, c2, opts.n);
    const double tol = tolerance_or(cfg, 1e-8);
    const TangencyReport r = verify_tangency(solved, transition, tol);
    const JetResiduals res = jet_system_residuals(c1, c2, transition);

    Sink sink(cfg, out);
    if (cfg.out_dir) {
        sink.csv("jet_solved.csv", [&](std::ostream& os) { write_jet_csv(os, solved); });
        sink.csv("jet_transition.csv", [&](std::ostream& os) { write_jet_csv(os, transition); });
    } else {
        sink.csv("", [&](std::ostream& os) { write_jet_csv(os, solved); });
    }
    Json j = to_json(r);
    j["system_residuals"] = {{"first", res.first}, {"second", res.second}};
    j["pass"] = r.tangent;
    std::ostringstream text;
    text << "tangency: a0 " << r.a0_deviation << ", b1 " << r.b1_deviation << " ("
         << (r.tangent ? "tangent" : "not tangent") << ")";
    sink.summary(j, err, text.str());
    return r.tangent ? kPass : kVerdictFail;
}

int selftest_cmd(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    Json results = Json::array();
    bool all = true;
    run_acceptance([&](const CriterionResult& r) {
        all = all && r.pass;
        if (cfg.format == Format::csv) out << format_result(r) << std::endl;
        results.push_back({{"id", r.id},
                           {"title", r.title},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"seconds", r.seconds}});
    });
    const Json j{{"pass", all}, {"criteria", results}};
    if (cfg.format == Format::json) out << j.dump(2) << '\n';
    if (cfg.out_dir) {
        std::ofstream f(*cfg.out_dir / "selftest.json");
        f << j.dump(2) << '\n';
    }
    return all ? kPass : kVerdictFail;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
    err << Json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

}  // namespace

void RunConfig::validate() const {
    bool known = false;
    for (const char* c : kCommands) known = known || command == c;
    if (!known) throw PreconditionError("unknown command \"" + command + "\"");
    if (inputs.size() != expected_inputs(command)) {
        throw PreconditionError(command + ": expected " + std::to_string(expected_inputs(command)) +
                                " input file(s), got " + std::to_string(inputs.size()));
    }
    for (const auto& p : inputs) {
        if (!std::filesystem::exists(p)) throw PreconditionError("input not found: " + p.string());
    }
    if (grid && *grid < 8) throw PreconditionError("grid size " + std::to_string(*grid) + " below 8");
    if (steps < 0) throw PreconditionError("steps must be non-negative");
    if (tolerance && !(*tolerance > 0.0)) throw PreconditionError("tolerance must be positive");
    if (out_dir && !std::filesystem::is_directory(*out_dir)) {
        throw PreconditionError("output directory does not exist: " + out_dir->string());
    }
    fit.validate();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        if (cfg.command == "domain-check") return domain_check(cfg, out, err);
        if (cfg.command == "orbit") return orbit_cmd(cfg, out, err);
        if (cfg.command == "coeffs") return coeffs_cmd(cfg, out, err);
        if (cfg.command == "invariant") return invariant_cmd(cfg, out, err);
        if (cfg.command == "reconstruct") return reconstruct_cmd(cfg, out, err);
        if (cfg.command == "compare") return compare_cmd(cfg, out, err);
        if (cfg.command == "conjugacy") return conjugacy_cmd(cfg, out, err);
        return selftest_cmd(cfg, out, err);
    } catch (const NumericalError& e) {
        emit_error(err, e.kind(), e.what(), kNumerical);
        return kNumerical;
    } catch (const Error& e) {
        emit_error(err, e.kind(), e.what(), kUsage);
        return kUsage;
    } catch (const std::exception& e) {
        emit_error(err, "internal", e.what(), kNumerical);
        return kNumerical;
    }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Billiard dynamics near the boundary: Lazutkin coefficients, curvature "
                 "reconstruction and conjugacy jets"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "csv";
    std::string source = "fitted";
    std::string out_dir;

    const auto common = [&](CLI::App* sub, bool fit_options) {
        sub->add_option("--grid", cfg.grid, "Grid size N on x in [0, 1) (>= 8)");
        sub->add_option("--tol", cfg.tolerance, "Verdict tolerance override");
        sub->add_option("--out", out_dir, "Directory for CSV/JSON artifacts");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        if (fit_options) {
            sub->add_option("--ymax", cfg.fit.y_max, "Largest y of the fitting ladder");
            sub->add_option("--samples", cfg.fit.n_samples, "Number of ladder samples");
            sub->add_option("--ratio", cfg.fit.ratio, "Ladder ratio in (0, 1)");
            sub->add_option("--degree", cfg.fit.fit_degree, "Highest fitted power of y");
            sub->add_option("--source", source, "Coefficient source")
                ->check(CLI::IsMember({"closed", "fitted"}));
        }
    };

    CLI::App* domain = app.add_subcommand("domain", "Domain utilities");
    domain->require_subcommand(1);
    CLI::App* check = domain->add_subcommand("check", "Validate a spec; print L, C, closure error");
    check->add_option("spec", cfg.inputs, "Domain spec JSON")->required()->expected(1);
    common(check, false);
    check->callback([&] { cfg.command = "domain-check"; });

    CLI::App* orb = app.add_subcommand("orbit", "Dump an orbit in (s, phi) and (x, y)");
    orb->add_option("spec", cfg.inputs, "Domain spec JSON")->required()->expected(1);
    orb->add_option("--s", cfg.seed_s, "Initial arc length");
    orb->add_option("--phi", cfg.seed_phi, "Initial angle in (0, pi)");
    orb->add_option("--steps", cfg.steps, "Number of iterates");
    common(orb, false);
    orb->callback([&] { cfg.command = "orbit"; });

    CLI::App* coeffs = app.add_subcommand("coeffs", "Closed-form and fitted coefficient profiles");
    coeffs->add_option("spec", cfg.inputs, "Domain spec JSON")->required()->expected(1);
    common(coeffs, true);
    coeffs->callback([&] { cfg.command = "coeffs"; });

    CLI::App* inv = app.add_subcommand("invariant", "K profile and identity residual");
    inv->add_option("spec", cfg.inputs, "Domain spec JSON")->required()->expected(1);
    common(inv, true);
    inv->callback([&] { cfg.command = "invariant"; });

    CLI::App* rec = app.add_subcommand("reconstruct", "Curvature profile from alpha3");
    rec->add_option("input", cfg.inputs, "Domain spec JSON or coefficient profile CSV")
        ->required()
        ->expected(1);
    common(rec, true);
    rec->callback([&] { cfg.command = "reconstruct"; });

    CLI::App* cmp = app.add_subcommand("compare", "Match two domains or two curvature profiles");
    cmp->add_option("inputs", cfg.inputs, "Two spec JSON or curvature CSV files")
        ->required()
        ->expected(2);
    common(cmp, true);
    cmp->callback([&] { cfg.command = "compare"; });

    CLI::App* conj = app.add_subcommand("conjugacy", "Order-1 conjugacy jet and tangency verdict");
    conj->add_option("specs", cfg.inputs, "Two domain spec JSON files")->required()->expected(2);
    common(conj, false);
    conj->callback([&] { cfg.command = "conjugacy"; });

    CLI::App* self = app.add_subcommand("selftest", "Run the acceptance suite");
    self->add_option("--out", out_dir, "Directory for selftest.json");
    self->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    self->callback([&] { cfg.command = "selftest"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage", e.what(), kUsage);
        return kUsage;
    }
    cfg.format = format == "json" ? Format::json : Format::csv;
    cfg.source = source == "closed" ? CoeffSource::closed : CoeffSource::fitted;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    return run(cfg, out, err);
}

}  // namespace lazlab::cli
