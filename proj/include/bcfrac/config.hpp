#pragma once

// Experiment configuration for the verification runner: a JSON document whose
// keys map one-to-one onto ExperimentConfig.

#include "bcfrac/frac_cr.hpp"
#include "bcfrac/quadrature_verify.hpp"

#include <map>
#include <string>
#include <vector>

namespace bcfrac {

// Identities the runner can evaluate.
inline const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names{
        "gauss",            // weighted Gauss theorem
        "borel_pompeiu",    // classical bicomplex Borel-Pompeiu
        "borel_pompeiu_weighted",
        "inversion",        // D o I = trace sum + R
        "factorization",    // lambda factorisation of the fractional operator
        "frac_gauss",       // fractional Gauss theorem
        "frac_gauss_bg",    // sigma = 1 area term against the direct evaluation
        "frac_cr_zero",     // max |fractional CR operator| over the patch nodes
        "frac_borel_pompeiu",
    };
    return names;
}

struct ExperimentConfig {
    std::string name = "experiment";
    std::vector<std::string> identities;
    RectDomain domain{};
    std::string weights = "classical";  // classical | constant:a,b | scaled-classical:g(x,y)
    std::string phi = "linear";         // linear | fractal:d0,d1,d2,d3 | custom:phi1;phi2
    std::array<double, 4> alpha{0.5, 0.5, 0.5, 0.5};
    std::array<double, 4> sigma{1.0, 0.0, 1.0, 0.0};
    std::string f1 = "z";
    std::string f2 = "z";
    Bicomplex w;
    Bicomplex z;
    Resolution resolution{};
    int levels = 3;
    std::string scheme = "graded";  // graded | gauss-jacobi
    double patch_margin = 0.1;      // interior patch margin; 0 uses the whole rectangle
    double tolerance = 1e-3;
    std::map<std::string, double> tolerances;  // per identity, overrides `tolerance`
    std::string output = "out";

    [[nodiscard]] double tolerance_for(const std::string& identity) const;
};

// Throws ConfigError with the line and column of a syntax error or the name of
// the offending field.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

// Built-in presets, each a complete JSON config.
struct Preset {
    std::string name;
    std::string description;
    std::string json;
};
const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);

// Objects built from the strings in a config.
struct Experiment {
    ExperimentConfig config;
    ProductFunction f;
    WeightPair weights;
    FracParams params;  // at the base resolution

    [[nodiscard]] FracParams params_at(const Resolution& r) const;
    [[nodiscard]] SurfacePatch patch_at(const Resolution& r) const;
    // zero when sigma = 1, otherwise the constant-weight construction
    [[nodiscard]] LambdaWeights lambda() const;
};

Experiment build_experiment(const ExperimentConfig& config);

WeightPair parse_weights(const std::string& spec);
Phi4 parse_phi(const std::string& spec);

} // namespace bcfrac
