#include "bcfrac/config.hpp"

#include "bcfrac/errors.hpp"
#include "bcfrac/expr.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace bcfrac {

namespace {

using json = nlohmann::json;

// Line and column of byte offset `pos` (1-based).
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t pos) {
    pos = std::min(pos, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

class FieldReader {
public:
    FieldReader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& field, const std::string& what) const {
        std::string where = source_;
        if (auto at = text_.find("\"" + field + "\""); at != std::string::npos) {
            const auto [line, col] = line_col(text_, at);
            where += ":" + std::to_string(line) + ":" + std::to_string(col);
        }
        throw ConfigError(where + ": field '" + field + "': " + what);
    }

    double number(const json& j, const std::string& field) const {
        if (!j.is_number()) fail(field, "expected a number");
        return j.get<double>();
    }

    std::string string(const json& j, const std::string& field) const {
        if (!j.is_string()) fail(field, "expected a string");
        return j.get<std::string>();
    }

    template <std::size_t N>
    std::array<double, N> numbers(const json& j, const std::string& field) const {
        if (!j.is_array() || j.size() != N) fail(field, "expected an array of " + std::to_string(N) + " numbers");
        std::array<double, N> out{};
        for (std::size_t i = 0; i < N; ++i) out[i] = number(j[i], field);
        return out;
    }

    std::size_t count(const json& j, const std::string& field, std::size_t min) const {
        if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(min))
            fail(field, "expected an integer >= " + std::to_string(min));
        return j.get<std::size_t>();
    }

private:
    const std::string& text_;
    std::string source_;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

PhiComponent phi_from_expression(const std::string& text, int l) {
    const std::string n = std::to_string(l);
    auto e = std::make_shared<Expression>(text, std::vector<std::string>{"x" + n},
                                          std::vector<std::string>{"y" + n});
    PhiComponent c;
    c.eval = [e](double x, double y) { return e->eval(x, y).v.real(); };
    c.dx = [e](double x, double y) { return e->eval(x, y).dx.real(); };
    c.dy = [e](double x, double y) { return e->eval(x, y).dy.real(); };
    return c;
}

Bicomplex point_at(const RectDomain& d, double fx, double fy) {
    return {{d.a1 + fx * (d.b1 - d.a1), d.c1 + fy * (d.d1 - d.c1)},
            {d.a2 + fx * (d.b2 - d.a2), d.c2 + fy * (d.d2 - d.c2)}};
}

} // namespace

double ExperimentConfig::tolerance_for(const std::string& identity) const {
    if (auto it = tolerances.find(identity); it != tolerances.end()) return it->second;
    return tolerance;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
    const FieldReader rd(text, source);
    if (!doc.is_object()) throw ConfigError(source + ": the configuration must be a JSON object");

    static const std::set<std::string> known{"name",   "identities", "domain",       "weights",   "phi",
                                             "alpha",  "sigma",      "function",     "w",         "z",
                                             "resolution", "levels", "scheme",       "patch_margin",
                                             "tolerance", "output",  "description"};
    for (const auto& [key, _] : doc.items())
        if (!known.contains(key)) rd.fail(key, "unknown key");

    ExperimentConfig c;
    if (doc.contains("name")) c.name = rd.string(doc["name"], "name");

    if (!doc.contains("identities") || !doc["identities"].is_array())
        throw ConfigError(source + ": field 'identities': expected an array of identity names");
    for (const auto& id : doc["identities"]) {
        const std::string s = rd.string(id, "identities");
        const auto& names = identity_names();
        if (std::find(names.begin(), names.end(), s) == names.end()) rd.fail("identities", "unknown identity '" + s + "'");
        if (std::find(c.identities.begin(), c.identities.end(), s) != c.identities.end())
            rd.fail("identities", "identity '" + s + "' listed twice");
        c.identities.push_back(s);
    }
    if (c.identities.empty()) rd.fail("identities", "the identity list is empty");

    if (doc.contains("domain")) {
        const auto& d = doc["domain"];
        if (!d.is_object()) rd.fail("domain", "expected an object with a1, b1, c1, d1, a2, b2, c2, d2");
        double* slots[] = {&c.domain.a1, &c.domain.b1, &c.domain.c1, &c.domain.d1,
                           &c.domain.a2, &c.domain.b2, &c.domain.c2, &c.domain.d2};
        const char* keys[] = {"a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2"};
        for (int i = 0; i < 8; ++i) {
            if (!d.contains(keys[i])) rd.fail("domain", std::string("missing '") + keys[i] + "'");
            *slots[i] = rd.number(d[keys[i]], "domain");
        }
        try {
            c.domain.validate();
        } catch (const DomainError& e) {
            rd.fail("domain", e.what());
        }
    }
    if (doc.contains("weights")) c.weights = rd.string(doc["weights"], "weights");
    if (doc.contains("phi")) c.phi = rd.string(doc["phi"], "phi");
    if (doc.contains("alpha")) c.alpha = rd.numbers<4>(doc["alpha"], "alpha");
    if (doc.contains("sigma")) c.sigma = rd.numbers<4>(doc["sigma"], "sigma");
    if (doc.contains("function")) {
        const auto& f = doc["function"];
        if (!f.is_object() || !f.contains("f1") || !f.contains("f2"))
            rd.fail("function", "expected an object with f1 and f2");
        c.f1 = rd.string(f["f1"], "function");
        c.f2 = rd.string(f["f2"], "function");
    }
    c.w = point_at(c.domain, 0.4, 0.3);
    c.z = point_at(c.domain, 0.6, 0.7);
    for (const char* key : {"w", "z"}) {
        if (!doc.contains(key)) continue;
        const auto v = rd.numbers<4>(doc[key], key);
        const Bicomplex p{{v[0], v[1]}, {v[2], v[3]}};
        if (!c.domain.contains(p)) rd.fail(key, "point outside the domain");
        (std::string(key) == "w" ? c.w : c.z) = p;
    }
    if (doc.contains("resolution")) {
        const auto& r = doc["resolution"];
        if (!r.is_object()) rd.fail("resolution", "expected an object with m, k, n");
        for (const auto& [key, _] : r.items())
            if (key != "m" && key != "k" && key != "n" && key != "fd_step") rd.fail("resolution", "unknown key '" + key + "'");
        if (r.contains("m")) c.resolution.m = rd.count(r["m"], "resolution", 4);
        if (r.contains("k")) c.resolution.k = rd.count(r["k"], "resolution", 4);
        if (r.contains("n")) c.resolution.n = rd.count(r["n"], "resolution", 4);
        if (r.contains("fd_step")) {
            c.resolution.fd_step = rd.number(r["fd_step"], "resolution");
            if (!(c.resolution.fd_step > 0.0 && c.resolution.fd_step < 0.25)) rd.fail("resolution", "fd_step must lie in (0, 0.25)");
        }
    }
    if (doc.contains("levels")) c.levels = static_cast<int>(rd.count(doc["levels"], "levels", 1));
    if (doc.contains("scheme")) {
        c.scheme = rd.string(doc["scheme"], "scheme");
        if (c.scheme != "graded" && c.scheme != "gauss-jacobi") rd.fail("scheme", "expected 'graded' or 'gauss-jacobi'");
    }
    if (doc.contains("patch_margin")) {
        c.patch_margin = rd.number(doc["patch_margin"], "patch_margin");
        if (!(c.patch_margin >= 0.0 && c.patch_margin < 0.5)) rd.fail("patch_margin", "must lie in [0, 0.5)");
    }
    if (doc.contains("tolerance")) {
        const auto& t = doc["tolerance"];
        auto positive = [&](const json& v) {
            const double x = rd.number(v, "tolerance");
            if (!(x > 0.0)) rd.fail("tolerance", "tolerances must be positive");
            return x;
        };
        if (t.is_object()) {
            for (const auto& [key, v] : t.items()) {
                if (key == "default") {
                    c.tolerance = positive(v);
                    continue;
                }
                const auto& names = identity_names();
                if (std::find(names.begin(), names.end(), key) == names.end())
                    rd.fail("tolerance", "unknown identity '" + key + "'");
                c.tolerances[key] = positive(v);
            }
        } else {
            c.tolerance = positive(t);
        }
    }
    if (doc.contains("output")) c.output = rd.string(doc["output"], "output");

    // Surface errors in the remaining strings now rather than mid-run.
    try {
        (void)build_experiment(c);
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    } catch (const Error& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

WeightPair parse_weights(const std::string& spec) {
    if (spec == "classical") return WeightPair::classical();
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "constant") {
        const auto parts = split(arg, ',');
        if (parts.size() != 2) throw ConfigError("weights '" + spec + "': expected constant:theta,phi");
        try {
            return WeightPair::constant(parse_complex(parts[0]), parse_complex(parts[1]));
        } catch (const Error& e) {
            throw ConfigError("weights '" + spec + "': " + e.what());
        }
    }
    if (kind == "scaled-classical") {
        if (arg.empty()) throw ConfigError("weights '" + spec + "': missing g(x,y)");
        return WeightPair::scaled_classical(Expression(arg).plane_function());
    }
    throw ConfigError("unknown weight preset '" + spec + "'");
}

Phi4 parse_phi(const std::string& spec) {
    if (spec == "linear") return Phi4::linear();
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "fractal") {
        const auto parts = split(arg, ',');
        if (parts.size() != 4) throw ConfigError("phi '" + spec + "': expected fractal:d0,d1,d2,d3");
        std::array<double, 4> d{};
        for (int i = 0; i < 4; ++i) {
            try {
                d[i] = std::stod(parts[i]);
            } catch (const std::exception&) {
                throw ConfigError("phi '" + spec + "': malformed exponent '" + parts[i] + "'");
            }
        }
        try {
            return Phi4::fractal(d);
        } catch (const DomainError& e) {
            throw ConfigError("phi '" + spec + "': " + e.what());
        }
    }
    if (kind == "custom") {
        const auto parts = split(arg, ';');
        if (parts.size() != 2) throw ConfigError("phi '" + spec + "': expected custom:phi1;phi2");
        return {phi_from_expression(parts[0], 1), phi_from_expression(parts[1], 2)};
    }
    throw ConfigError("unknown phi preset '" + spec + "'");
}

namespace {

// Presets share a domain and a base point at its lower corner.
std::string expand(std::string text) {
    const std::pair<std::string, std::string> subs[] = {
        {"@DOMAIN@", R"json("domain": {"a1": 0, "b1": 1, "c1": 0, "d1": 1, "a2": 0.5, "b2": 1.5, "c2": -0.5, "d2": 0.5})json"},
        {"@CORNER@", R"json("w": [0, 0, 0.5, -0.5])json"},
    };
    for (const auto& [key, value] : subs)
        for (auto at = text.find(key); at != std::string::npos; at = text.find(key, at + value.size()))
            text.replace(at, key.size(), value);
    return text;
}

} // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all{
        {"classical", "classical weights: Gauss theorem and bicomplex Borel-Pompeiu",
         expand(R"json({"name": "classical", "identities": ["gauss", "borel_pompeiu"], @DOMAIN@,
 "function": {"f1": "x1^2*y1 + i*(x1 - y1^3)", "f2": "exp(0.7*z)"},
 "resolution": {"m": 32, "k": 32, "n": 64}, "levels": 3, "patch_margin": 0,
 "tolerance": {"gauss": 1e-8, "borel_pompeiu": 1e-3}})json")},
        {"weighted", "constant weights (1, 2i): Gauss, Borel-Pompeiu, inversion and lambda factorisation",
         expand(R"json({"name": "weighted", "identities": ["gauss", "borel_pompeiu_weighted", "inversion", "factorization"], @DOMAIN@,
 "weights": "constant:1,2i", "sigma": [0.7, 0, 0.7, 0],
 "function": {"f1": "exp((0.7+0.3i)*z)", "f2": "x2^2 + y2 + i*x2*y2^2"},
 "resolution": {"m": 16, "k": 16, "n": 256}, "levels": 3, "patch_margin": 0,
 "tolerance": {"gauss": 1e-8, "borel_pompeiu_weighted": 1e-4, "inversion": 1e-3, "factorization": 1e-3}})json")},
        {"bg-reduction", "sigma = 1, linear phi: fractional Gauss against the direct form, fractional Borel-Pompeiu",
         expand(R"json({"name": "bg-reduction", "identities": ["frac_gauss", "frac_gauss_bg", "frac_borel_pompeiu"], @DOMAIN@, @CORNER@,
 "sigma": [1, 0, 1, 0], "phi": "linear",
 "function": {"f1": "z*(1 + 0.3*conj(z)*z)", "f2": "(z - (0.5-0.5i))*(1 + 0.3*conj(z)*z)"},
 "resolution": {"m": 8, "k": 8, "n": 128}, "levels": 3,
 "tolerance": {"frac_gauss": 1e-3, "frac_gauss_bg": 1e-6, "frac_borel_pompeiu": 1e-2}})json")},
        {"fractal", "fractal phi x^d + y^d with alpha -> 1 and sigma = 1",
         expand(R"json({"name": "fractal", "identities": ["inversion", "frac_gauss", "frac_gauss_bg", "frac_borel_pompeiu"],
 "domain": {"a1": 0.5, "b1": 1.5, "c1": 0.5, "d1": 1.5, "a2": 0.5, "b2": 1.5, "c2": 0.5, "d2": 1.5},
 "w": [0.5, 0.5, 0.5, 0.5], "z": [1.1, 1.2, 0.9, 1.3],
 "phi": "fractal:0.5,0.6,0.7,0.8", "alpha": [0.99999999, 0.99999999, 0.99999999, 0.99999999], "sigma": [1, 0, 1, 0],
 "function": {"f1": "(z - (0.5+0.5i))*(1 + 0.3*conj(z)*z)", "f2": "(z - (0.5+0.5i))*exp(0.4*z)"},
 "resolution": {"m": 8, "k": 8, "n": 128}, "levels": 3,
 "tolerance": {"inversion": 1e-4, "frac_gauss": 1e-3, "frac_gauss_bg": 1e-6, "frac_borel_pompeiu": 1e-2}})json")},
        {"degenerate", "sigma = 1, alpha -> 1, classical weights: fractional Borel-Pompeiu at (32, 32, 256)",
         expand(R"json({"name": "degenerate", "identities": ["frac_borel_pompeiu"], @DOMAIN@, @CORNER@,
 "z": [0.6, 0.7, 1.2, -0.2],
 "alpha": [0.99999999, 0.99999999, 0.99999999, 0.99999999], "sigma": [1, 0, 1, 0],
 "function": {"f1": "z*(1 + 0.3*conj(z)*z)", "f2": "(z - (0.5-0.5i))*(1 + 0.3*conj(z)*z)"},
 "resolution": {"m": 32, "k": 32, "n": 256}, "levels": 1, "patch_margin": 0,
 "tolerance": 1e-2})json")},
        {"cauchy", "Cauchy corollary: traces annihilated by the fractional operator, so the area term drops",
         expand(R"json({"name": "cauchy", "identities": ["frac_cr_zero", "frac_borel_pompeiu"], @DOMAIN@, @CORNER@,
 "z": [0.6, 0.7, 1.2, -0.2],
 "alpha": [0.99999999, 0.99999999, 0.99999999, 0.99999999], "sigma": [1, 0, 1, 0],
 "function": {"f1": "(1+2i)*z", "f2": "(1+2i)*(z - (0.5-0.5i))"},
 "resolution": {"m": 32, "k": 32, "n": 256}, "levels": 1, "patch_margin": 0,
 "tolerance": {"frac_cr_zero": 1e-6, "frac_borel_pompeiu": 1e-2}})json")},
        {"general", "alpha = 0.5, sigma = (0.7, 0, 0.7, 0) with the constructed lambda",
         expand(R"json({"name": "general", "identities": ["inversion", "factorization", "frac_gauss", "frac_borel_pompeiu"], @DOMAIN@,
 @CORNER@, "z": [0.6, 0.7, 1.2, -0.2],
 "alpha": [0.5, 0.5, 0.5, 0.5], "sigma": [0.7, 0, 0.7, 0],
 "function": {"f1": "z*exp((0.7+0.3i)*z)", "f2": "(z - (0.5-0.5i))*(1 + x2^2 + i*x2*y2^2)"},
 "resolution": {"m": 8, "k": 8, "n": 128}, "levels": 3,
 "tolerance": {"inversion": 1e-3, "factorization": 1e-3, "frac_gauss": 1e-3, "frac_borel_pompeiu": 1e-2}})json")},
    };
    return all;
}

const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw ConfigError("unknown preset '" + name + "'");
}

FracParams Experiment::params_at(const Resolution& r) const {
    FracParams p = params;
    p.quad.n = r.n;
    p.fd_step = r.fd_step;
    return p;
}

SurfacePatch Experiment::patch_at(const Resolution& r) const {
    const auto& c = config;
    return c.patch_margin > 0.0 ? SurfacePatch::interior(c.domain, c.patch_margin, r.m, r.k)
                                : SurfacePatch::from_domain(c.domain, r.m, r.k);
}

LambdaWeights Experiment::lambda() const {
    const auto& s = params.sigma;
    if (s[0] == 1.0 && s[1] == 0.0 && s[2] == 1.0 && s[3] == 0.0) return LambdaWeights::zero();
    try {
        return LambdaWeights::for_constant_weights(weights, params);
    } catch (const Error& e) {
        throw ConfigError(std::string("sigma != 1 needs a lambda: ") + e.what());
    }
}

Experiment build_experiment(const ExperimentConfig& config) {
    Experiment e;
    e.config = config;
    e.f = {Expression(config.f1, {"x1"}, {"y1"}).plane_function(),
           Expression(config.f2, {"x2"}, {"y2"}).plane_function()};
    e.weights = parse_weights(config.weights);
    e.params.alpha = config.alpha;
    e.params.sigma = config.sigma;
    e.params.phi = parse_phi(config.phi);
    e.params.quad.n = config.resolution.n;
    e.params.quad.scheme =
        config.scheme == "gauss-jacobi" ? QuadScheme::GaussJacobiTransformed : QuadScheme::GradedMesh;
    e.params.fd_step = config.resolution.fd_step;
    const bool unit_sigma = config.sigma == std::array<double, 4>{1.0, 0.0, 1.0, 0.0};
    if (!unit_sigma && std::find(config.identities.begin(), config.identities.end(), "frac_gauss_bg") !=
                           config.identities.end())
        throw ConfigError("identity 'frac_gauss_bg' needs sigma = [1, 0, 1, 0]");
    try {
        e.params.validate();
        e.params.phi.validate(config.domain);
    } catch (const DomainError& err) {
        throw ConfigError(err.what());
    }
    return e;
}

} // namespace bcfrac
