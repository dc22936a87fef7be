#include "bcfrac/runner.hpp"

#include "bcfrac/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

namespace bcfrac {

namespace {

ResidualReport with_resolution(ResidualReport rep, const std::string& identity, const Resolution& r) {
    rep.identity = identity;
    rep.m = r.m;
    rep.k = r.k;
    rep.n = r.n;
    return rep;
}

ResidualReport from_residual(Hyperbolic res) {
    ResidualReport rep;
    rep.residual = res;
    return rep;
}

Hyperbolic kmax(const Bicomplex& a, const Bicomplex& b) {
    const Hyperbolic x = mod_k(a), y = mod_k(b);
    return {std::max(x.l1, y.l1), std::max(x.l2, y.l2)};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

bool SuiteSummary::pass() const {
    return std::all_of(outcomes.begin(), outcomes.end(), [](const IdentityOutcome& o) { return o.pass; });
}

ResidualReport run_identity(const Experiment& e, const std::string& id, const Resolution& r) {
    const auto& c = e.config;
    const auto& dom = c.domain;
    const FracParams p = e.params_at(r);
    const SurfacePatch patch = e.patch_at(r);
    ResidualReport rep;
    if (id == "gauss") {
        rep = gauss_residual(e.f, e.weights, patch);
    } else if (id == "borel_pompeiu") {
        rep = borel_pompeiu_classical(e.f, c.w, patch).report;
    } else if (id == "borel_pompeiu_weighted") {
        rep = borel_pompeiu_weighted(e.f, c.w, e.weights, patch).report;
    } else if (id == "inversion") {
        rep = from_residual(inversion_check(e.f, c.w, p, dom, c.z).residual);
    } else if (id == "factorization") {
        rep = from_residual(factorization_check(e.f, c.w, p, e.weights, e.lambda(), dom, Side::Left, c.z));
    } else if (id == "frac_gauss") {
        rep = frac_gauss_residual(e.f, c.w, p, e.weights, e.lambda(), dom, patch).report;
    } else if (id == "frac_gauss_bg") {
        const auto a = frac_gauss_residual(e.f, c.w, p, e.weights, LambdaWeights::zero(), dom, patch);
        const auto b = frac_gauss_residual_direct(e.f, c.w, p, e.weights, dom, patch);
        rep = from_residual(kmax(a.area_term - b.area_term, a.boundary_term - b.boundary_term));
    } else if (id == "frac_cr_zero") {
        const TraceIntegral tf(e.f, c.w, p, dom, Side::Left);
        const auto n1 = area_nodes(patch.lambda1, patch.m), n2 = area_nodes(patch.lambda2, patch.m);
        Hyperbolic worst;
        for (std::size_t i = 0; i < n1.size(); ++i) {
            const Hyperbolic v = mod_k(frac_cr_apply(tf, p, e.weights, Bicomplex{n1[i].z, n2[i].z}));
            worst = {std::max(worst.l1, v.l1), std::max(worst.l2, v.l2)};
        }
        rep = from_residual(worst);
    } else if (id == "frac_borel_pompeiu") {
        rep = frac_bp_reconstruct(e.f, c.w, c.z, p, e.weights, e.lambda(), dom,
                                  SurfacePatch::from_domain(dom, r.m, r.k))
                  .report;
    } else {
        throw ConfigError("unknown identity '" + id + "'");
    }
    return with_resolution(std::move(rep), id, r);
}

SuiteSummary run_suite(const ExperimentConfig& config, int levels, unsigned jobs) {
    if (levels <= 0) levels = config.levels;
    const Experiment e = build_experiment(config);
    SuiteSummary s;
    s.name = config.name;
    s.outcomes.resize(config.identities.size());

    auto run_one = [&](std::size_t i) {
        const std::string& id = config.identities[i];
        IdentityOutcome& o = s.outcomes[i];
        o.identity = id;
        o.tolerance = config.tolerance_for(id);
        auto run = [&](const Resolution& r) { return run_identity(e, id, r); };
        if (levels >= 2) {
            o.study = convergence_study(run, config.resolution, levels);
        } else {
            const auto t0 = std::chrono::steady_clock::now();
            ResidualReport rep = run(config.resolution);
            rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            o.study.saturated = rep.residual.max() <= kResidualFloor;
            o.study.reports.push_back(std::move(rep));
        }
        o.pass = o.study.reports.back().residual.max() <= o.tolerance;
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(s.outcomes.size())));
    if (jobs == 1) {
        for (std::size_t i = 0; i < s.outcomes.size(); ++i) run_one(i);
        return s;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < s.outcomes.size(); i = next++) {
                try {
                    run_one(i);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return s;
}

std::string report_csv(const IdentityOutcome& o, const ReportOptions& opt) {
    std::string out = "identity,m,k,n,res_l1,res_l2,order,seconds\n";
    for (const auto& r : o.study.reports) {
        out += r.identity + "," + std::to_string(r.m) + "," + std::to_string(r.k) + "," + std::to_string(r.n) + "," +
               fmt(r.residual.l1) + "," + fmt(r.residual.l2) + "," + (r.order ? fmt(*r.order) : "") + "," +
               fmt(opt.timing ? r.seconds : 0.0) + "\n";
    }
    return out;
}

std::string summary_json(const SuiteSummary& s) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["pass"] = s.pass();
    auto& ids = j["identities"] = nlohmann::ordered_json::array();
    for (const auto& o : s.outcomes) {
        nlohmann::ordered_json e;
        e["identity"] = o.identity;
        e["pass"] = o.pass;
        e["tolerance"] = o.tolerance;
        double worst = 0.0;
        for (const auto& r : o.study.reports) worst = std::max(worst, r.residual.max());
        e["max_residual"] = worst;
        e["final_residual"] = o.study.reports.empty() ? 0.0 : o.study.reports.back().residual.max();
        e["order"] = o.study.order ? nlohmann::ordered_json(*o.study.order) : nullptr;
        e["saturated"] = o.study.saturated;
        e["levels"] = o.study.reports.size();
        ids.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::vector<std::string> emit_report(const SuiteSummary& s, const std::string& dir, const ReportOptions& opt) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IOError("cannot create output directory '" + dir + "': " + ec.message());
    std::vector<std::string> written;
    auto write = [&](const fs::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        out << text;
        out.close();
        if (!out) throw IOError("cannot write '" + path.string() + "'");
        written.push_back(path.string());
    };
    for (const auto& o : s.outcomes) write(fs::path(dir) / (o.identity + ".csv"), report_csv(o, opt));
    write(fs::path(dir) / "summary.json", summary_json(s));
    return written;
}

} // namespace bcfrac
