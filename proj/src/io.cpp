#include "lazlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "lazlab/errors.hpp"
#include "lazlab/lazutkin.hpp"

namespace lazlab {

namespace {

double number_field(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw InvalidSpec(where + ": missing field \"" + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_number()) throw InvalidSpec(where + ": field \"" + key + "\" is not a number");
    return v.get<double>();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

struct CsvTable {
    std::map<std::string, std::size_t> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name, const std::string& path) const {
        const auto it = columns.find(name);
        if (it == columns.end()) throw InvalidSpec(path + ": missing column \"" + name + "\"");
        return it->second;
    }
};

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSpec("cannot open " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw InvalidSpec(path.string() + ": empty file");
    const auto header = split_csv_line(line);
    for (std::size_t i = 0; i < header.size(); ++i) t.columns[header[i]] = i;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw InvalidSpec(path.string() + ": row " + std::to_string(t.rows.size() + 1) +
                              " has " + std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(header.size()));
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

double parse_cell(const std::string& cell, const std::string& path) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != cell.size()) throw InvalidSpec(path + ": bad number \"" + cell + "\"");
    return v;
}

}  // namespace

FourierCurvatureSpec spec_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidSpec("domain spec: expected a JSON object");
    FourierCurvatureSpec spec;
    spec.name = j.value("name", std::string{});
    spec.c0 = number_field(j, "c0", "domain spec");
    if (j.contains("harmonics")) {
        const Json& hs = j.at("harmonics");
        if (!hs.is_array()) throw InvalidSpec("domain spec: \"harmonics\" is not an array");
        for (std::size_t i = 0; i < hs.size(); ++i) {
            const std::string where = "domain spec: harmonics[" + std::to_string(i) + "]";
            const Json& h = hs[i];
            if (!h.is_object()) throw InvalidSpec(where + ": expected an object");
            const double n = number_field(h, "n", where);
            if (n != std::floor(n)) throw InvalidSpec(where + ": order n is not an integer");
            spec.harmonics.push_back({static_cast<int>(n), h.contains("cos") ? number_field(h, "cos", where) : 0.0,
                                      h.contains("sin") ? number_field(h, "sin", where) : 0.0});
        }
    }
    return spec;
}

Json spec_to_json(const FourierCurvatureSpec& spec) {
    Json hs = Json::array();
    for (const Harmonic& h : spec.harmonics) hs.push_back({{"n", h.n}, {"cos", h.a}, {"sin", h.b}});
    return {{"name", spec.name}, {"c0", spec.c0}, {"harmonics", hs}};
}

FourierCurvatureSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSpec("cannot open " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidSpec(path.string() + ": " + e.what());
    }
    FourierCurvatureSpec spec = spec_from_json(j);
    if (spec.name.empty()) spec.name = path.stem().string();
    return spec;
}

void save_spec(const FourierCurvatureSpec& spec, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InvalidSpec("cannot write " + path.string());
    out << spec_to_json(spec).dump(2) << '\n';
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_orbit_csv(std::ostream& os, const BoundaryCurve& curve, const PhasePoint& seed,
                     std::span<const PhasePoint> iterates, bool lazutkin) {
    os << "step,s,phi,x,y\n";
    const auto row = [&](std::size_t k, const PhasePoint& p) {
        os << k << ',' << format_number(p.s) << ',' << format_number(p.phi) << ',';
        if (lazutkin) {
            const LazutkinPoint q = to_lazutkin(curve, p);
            os << format_number(q.x) << ',' << format_number(q.y);
        } else {
            os << ',';
        }
        os << '\n';
    };
    row(0, seed);
    for (std::size_t k = 0; k < iterates.size(); ++k) row(k + 1, iterates[k]);
}

void write_profile_csv(std::ostream& os, const CoeffProfile& p) {
    os << "x,alpha3,alpha4,beta4,alpha3prime,source\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        os << format_number(p.x[i]) << ',' << format_number(p.alpha3[i]) << ','
           << format_number(p.alpha4[i]) << ',' << format_number(p.beta4[i]) << ',';
        if (p.alpha3_prime) os << format_number((*p.alpha3_prime)[i]);
        os << ',' << to_string(p.source) << '\n';
    }
}

void write_curvature_csv(std::ostream& os, const CurvatureProfile& p, std::span<const double> k,
                         std::span<const double> g) {
    os << "x,K,g,log_rho\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        os << format_number(p.x[i]) << ',';
        if (i < k.size()) os << format_number(k[i]);
        os << ',';
        if (i < g.size()) os << format_number(g[i]);
        os << ',' << format_number(p.log_rho[i]) << '\n';
    }
}

void write_jet_csv(std::ostream& os, const ConjugacyJet& jet) {
    os << "s,a0,a0prime,b1\n";
    for (std::size_t i = 0; i < jet.size(); ++i) {
        os << format_number(jet.s[i]) << ',' << format_number(jet.a0[i]) << ','
           << format_number(jet.a0_prime[i]) << ',' << format_number(jet.b1[i]) << '\n';
    }
}

CurvatureProfile read_curvature_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const std::string name = path.string();
    const std::size_t cx = t.column("x", name);
    const std::size_t cl = t.column("log_rho", name);
    CurvatureProfile p;
    for (const auto& r : t.rows) {
        p.x.push_back(parse_cell(r[cx], name));
        p.log_rho.push_back(parse_cell(r[cl], name));
    }
    return p;
}

CoeffProfile read_profile_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const std::string name = path.string();
    const std::size_t cx = t.column("x", name);
    const std::size_t c3 = t.column("alpha3", name);
    const std::size_t c4 = t.column("alpha4", name);
    const std::size_t cb = t.column("beta4", name);
    const auto cp = t.columns.find("alpha3prime");
    const auto cs = t.columns.find("source");
    CoeffProfile p;
    bool has_prime = cp != t.columns.end();
    std::vector<double> prime;
    for (const auto& r : t.rows) {
        p.x.push_back(parse_cell(r[cx], name));
        p.alpha3.push_back(parse_cell(r[c3], name));
        p.alpha4.push_back(parse_cell(r[c4], name));
        p.beta4.push_back(parse_cell(r[cb], name));
        if (has_prime) {
            if (r[cp->second].empty()) {
                has_prime = false;
            } else {
                prime.push_back(parse_cell(r[cp->second], name));
            }
        }
        if (cs != t.columns.end() && r[cs->second] == "fitted") p.source = CoeffSource::fitted;
    }
    if (has_prime) p.alpha3_prime = std::move(prime);
    return p;
}

Json to_json(const MatchResult& m) {
    return {{"match", m.match},
            {"shift", m.shift},
            {"reflected", m.reflected},
            {"distance", m.distance}};
}

Json to_json(const TangencyReport& r) {
    return {{"tangent", r.tangent},
            {"order", 1},
            {"a0_deviation", r.a0_deviation},
            {"b1_deviation", r.b1_deviation},
            {"tolerance", r.tolerance}};
}

Json to_json(const FittedCoeffs& f) {
    return {{"alpha3", f.alpha3},         {"alpha4", f.alpha4},
            {"beta4", f.beta4},           {"beta3_drift", f.beta3_drift},
            {"residual_x", f.residual_x}, {"residual_y", f.residual_y},
            {"condition", f.condition},   {"reliable", f.reliable}};
}

Json to_json(const CombinationSearch& c) {
    Json j{{"found", c.combination.has_value()},
           {"rank", c.rank},
           {"residual", c.residual},
           {"diagnosis", c.diagnosis}};
    if (c.combination) {
        j["combination"] = {{"alpha3_prime", c.combination->c_a3p},
                            {"alpha4", c.combination->c_a4},
                            {"beta4", c.combination->c_b4},
                            {"mu", c.combination->mu}};
    }
    return j;
}

}  // namespace lazlab
