#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "bos/cli.hpp"
#include "bos/kernels.hpp"

namespace bos::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string config, out, preset;
    std::vector<std::string> sets;
    long seed = -1;
};

Config build_config(const Options& o) {
    Config c;
    if (!o.preset.empty()) c.apply_preset(o.preset);
    if (!o.config.empty()) c.load_file(o.config);
    for (const auto& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        c.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed >= 0) c.set("seed", std::to_string(o.seed));
    if (!o.out.empty()) c.set("output.dir", o.out);
    validate(c);
    return c;
}

json config_json(const Config& c) {
    json j = json::object();
    for (const auto& [k, v] : c.values()) j[k] = v;
    return j;
}

void ensure_dir(const std::string& d) {
    std::error_code ec;
    fs::create_directories(d, ec);
    if (ec) throw ConfigError("cannot create output directory '" + d + "': " + ec.message());
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    if (!f) throw Error("cannot write '" + p.string() + "'");
    f << text;
}

// ---------------------------------------------------------------- coeffs

int cmd_coeffs(const Config& c) {
    const PhysicalParams p = physical_params(c);
    const double eps = c.num("scaling.epsilon"), delta = c.num("scaling.delta");
    const ModelCoefficients m = derive_coefficients(p, eps, delta);
    const auto entries = coefficient_entries(m);

    const bool with_asym = m.gamma < 0.1;
    std::vector<CoefficientEntry> asym;
    if (with_asym) asym = coefficient_entries(asymptotic_coefficients(p, eps, delta, nullptr));
    auto find_asym = [&](const std::string& name) -> const CoefficientEntry* {
        for (const auto& e : asym)
            if (e.name == name) return &e;
        return nullptr;
    };

    std::printf("%-14s %-26s", "name", "value");
    if (with_asym) std::printf(" %-26s %-12s", "asymptotic", "rel.dev");
    std::printf(" %s\n", "relation");
    json doc;
    doc["params"] = {{"g", p.g}, {"h1", p.h1}, {"rho", p.rho}, {"rho1", p.rho1}};
    json& coeffs = doc["coefficients"];
    for (const auto& e : entries) {
        std::printf("%-14s %-26s", e.name.c_str(), fmt17(e.value).c_str());
        json row = {{"value", e.value}, {"tag", e.tag}};
        // closed forms exist for the kt ladder only
        const CoefficientEntry* a = with_asym ? find_asym(e.name) : nullptr;
        if (with_asym) {
            if (a && a->value != 0.0 && e.value != 0.0 && e.name.rfind("kt", 0) == 0) {
                const double dev = std::abs(a->value - e.value) / std::abs(e.value);
                std::printf(" %-26s %-12.3e", fmt17(a->value).c_str(), dev);
                row["asymptotic"] = a->value;
                row["asymptotic_rel_dev"] = dev;
            } else {
                std::printf(" %-26s %-12s", "-", "-");
            }
        }
        std::printf(" %s\n", e.tag.c_str());
        coeffs[e.name] = row;
    }
    const double res = std::abs(0.5 * std::sqrt(p.g / m.k0) - m.c0) / m.c0;
    std::printf("\nresonance residual |w1'(k0) - c0|/c0 = %s\n", fmt17(res).c_str());
    std::printf("k0 * 4 h1 gamma = %s\n", fmt17(m.k0 * 4.0 * p.h1 * m.gamma).c_str());
    std::printf("reduced mapping: a = -eps^2 Omega2/(2 c0), b = -eps Omega1/(2 c0), c = 6 eps kt, "
                "d = -eps^2 kt2, alpha = -eps w1''(k0)/2, beta = -kt1; q_reduced = q_scale * q\n");
    std::printf("q_scale = %s, time_scale = %s\n", fmt17(m.q_scale).c_str(), fmt17(m.time_scale).c_str());
    doc["resonance_residual"] = res;
    doc["reduced"] = {{"a", m.reduced.a},         {"b", m.reduced.b},         {"c", m.reduced.c},
                      {"d", m.reduced.d},         {"alpha", m.reduced.alpha}, {"beta", m.reduced.beta},
                      {"q_scale", m.q_scale},     {"time_scale", m.time_scale}};
    doc["reduced_mapping_note"] =
        "convention mapping chosen by this library; see README";

    const std::string& out = c.str("output.dir");
    if (!out.empty()) {
        ensure_dir(out);
        write_file(fs::path(out) / "coeffs.json", doc.dump(2) + "\n");
    } else {
        std::printf("\n%s\n", doc.dump(2).c_str());
    }
    return ok;
}

// ---------------------------------------------------------------- dispersion

int cmd_dispersion(const Config& c) {
    const PhysicalParams p = physical_params(c);
    const double a = c.num("dispersion.k_min"), b = c.num("dispersion.k_max");
    const long n = c.integer("dispersion.count");
    const double depth = c.num("dispersion.depth");
    std::string text = depth > 0.0 ? "k,omega,omega1,omega_finite_depth\n" : "k,omega,omega1\n";
    for (long i = 0; i < n; ++i) {
        const double k = a * std::pow(b / a, double(i) / double(n - 1));
        text += fmt17(k) + "," + fmt17(std::sqrt(dispersion_internal(p, k))) + "," +
                fmt17(std::sqrt(dispersion_surface(p, k)));
        if (depth > 0.0) text += "," + fmt17(std::sqrt(dispersion_internal_finite_depth(p, depth, k)));
        text += "\n";
    }
    const std::string& out = c.str("output.dir");
    if (out.empty()) {
        std::cout << text;
    } else {
        ensure_dir(out);
        write_file(fs::path(out) / "dispersion.csv", text);
    }
    return ok;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Config& c, const std::vector<std::string>& suites) {
    if (suites.empty()) {
        std::cerr << "error: no verification suites selected\n";
        return config_error;
    }
    for (const auto& s : suites)
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
            throw ConfigError("unknown verification suite '" + s + "'");
    const auto rows = run_suites(c, suites);
    std::string csv = "suite,check,residual,tolerance,status\n";
    std::printf("%-14s %-40s %-12s %-10s %s\n", "suite", "check", "residual", "tolerance", "status");
    int failed = 0;
    for (const auto& r : rows) {
        std::printf("%-14s %-40s %-12.3e %-10.1e %s\n", r.suite.c_str(), r.name.c_str(), r.residual, r.tolerance,
                    r.pass() ? "PASS" : "FAIL");
        csv += r.suite + "," + r.name + "," + fmt17(r.residual) + "," + fmt17(r.tolerance) + "," +
               (r.pass() ? "PASS" : "FAIL") + "\n";
        failed += !r.pass();
    }
    const std::string& out = c.str("output.dir");
    if (!out.empty()) {
        ensure_dir(out);
        write_file(fs::path(out) / "verify.csv", csv);
    }
    if (failed) {
        std::printf("\n%d check(s) failed:\n", failed);
        for (const auto& r : rows)
            if (!r.pass()) std::printf("  %s: %s\n", r.suite.c_str(), r.name.c_str());
        return verification_failed;
    }
    std::printf("\nall %zu checks passed\n", rows.size());
    return ok;
}

// ---------------------------------------------------------------- simulate

std::string snapshot_csv(const Grid& g, const SystemState& s) {
    std::string t = "# t = " + fmt17(s.t) + "\nx,r,re_q,im_q\n";
    for (std::size_t i = 0; i < g.n(); ++i)
        t += fmt17(g.x()[i]) + "," + fmt17(s.r[i]) + "," + fmt17(s.q[i].real()) + "," + fmt17(s.q[i].imag()) + "\n";
    return t;
}

struct SimOutcome {
    int code = ok;
    double t_final = 0.0;
    double e1_drift = 0.0, e2_drift = 0.0, e3_drift = 0.0;
    std::string message;
};

SimOutcome simulate(const Config& c, bool verbose) {
    const std::string out = c.str("output.dir").empty() ? "out" : c.str("output.dir");
    ensure_dir(out);
    const Grid g = make_grid(c);
    const StepperConfig sc = stepper_config(c);
    const PhysicalParams p = physical_params(c);

    ModelCoefficients m;
    ReducedCoeffs rc{c.num("reduced.a"), c.num("reduced.b"),     c.num("reduced.c"),
                     c.num("reduced.d"), c.num("reduced.alpha"), c.num("reduced.beta")};
    const bool derived = c.str("reduced.source") == "derived";
    if (derived) {
        m = derive_coefficients(p, c.num("scaling.epsilon"), c.num("scaling.delta"));
        rc = m.reduced;
    }
    const SystemState s0 = initial_state(c, g);
    if (std::abs(mean(s0.r)) > 1e-10 * std::max(1.0, norm_inf(s0.r)))
        throw NonZeroMean("initial r must have zero mean");

    RunOptions ro;
    ro.t_end = c.num("solver.t_end");
    ro.diagnostics_every = static_cast<int>(c.integer("output.diagnostics_every"));
    ro.snapshot_every = static_cast<int>(c.integer("output.snapshot_every"));
    ro.gauge_diagnostics = c.str("output.gauge_diagnostics") == "true";

    std::size_t nsnap = 0;
    auto on_snap = [&](const SystemState& s) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%06zu.csv", nsnap++);
        write_file(fs::path(out) / name, snapshot_csv(g, s));
    };

    json meta;
    meta["config"] = config_json(c);
    meta["grid"] = {{"n", g.n()}, {"L", g.length()}, {"dx", g.dx()}, {"dealias_cutoff", g.dealias_cutoff()}};
    meta["reduced_coefficients"] = {{"a", rc.a}, {"b", rc.b}, {"c", rc.c}, {"d", rc.d}, {"alpha", rc.alpha},
                                    {"beta", rc.beta}};
    if (derived) {
        const double eps = m.epsilon;
        const double scale = c.str("solver.time_variable") == "tau1" ? 1.0 / (eps * eps) : m.time_scale;
        meta["physical_time_per_unit"] = scale;
        meta["q_scale"] = m.q_scale;
    }
    meta["simd"] = kernels::isa_name(kernels::active_isa());

    SimOutcome res;
    const auto t0 = std::chrono::steady_clock::now();
    RunResult rr;
    bool blew = false;
    try {
        rr = run(g, s0, sc, rc, ro, derived ? &m : nullptr, ro.snapshot_every > 0 ? on_snap : std::function<void(const SystemState&)>{});
    } catch (const BlowUp& b) {
        blew = true;
        res.code = blow_up;
        res.t_final = b.t;
        res.message = b.what();
        meta["status"] = "blow-up";
        meta["blowup_time"] = b.t;
        meta["blowup_max_abs_r"] = b.max_abs_r;
        if (ro.snapshot_every == 0) {
            // the run did not stream snapshots: record the last good state from a replay
            RunOptions r2 = ro;
            r2.t_end = b.t - sc.dt;
            r2.diagnostics_every = 0;
            r2.gauge_diagnostics = false;
            const RunResult last = run(g, s0, sc, rc, r2, derived ? &m : nullptr);
            write_file(fs::path(out) / "last_good_snapshot.csv", snapshot_csv(g, last.final_state));
        }
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!blew) {
        std::string d = "t,E1,E2,E3,mean_r,max_r,gauge_residual\n";
        for (const auto& row : rr.log)
            d += fmt17(row.t) + "," + fmt17(row.E1) + "," + fmt17(row.E2) + "," + fmt17(row.E3) + "," +
                 fmt17(row.mean_r) + "," + fmt17(row.max_r) + "," + fmt17(row.gauge_residual) + "\n";
        write_file(fs::path(out) / "diagnostics.csv", d);
        if (ro.snapshot_every == 0) write_file(fs::path(out) / "final_state.csv", snapshot_csv(g, rr.final_state));

        const auto& a = rr.log.front();
        auto drift = [](double x, double x0) { return x0 != 0.0 ? std::abs(x - x0) / std::abs(x0) : std::abs(x - x0); };
        for (const auto& row : rr.log) {
            res.e1_drift = std::max(res.e1_drift, drift(row.E1, a.E1));
            res.e2_drift = std::max(res.e2_drift, drift(row.E2, a.E2));
            res.e3_drift = std::max(res.e3_drift, drift(row.E3, a.E3));
        }
        res.t_final = rr.final_state.t;
        // r carries a constant offset after mean removal, so its slope is monitored instead
        const double bm = std::max(boundary_mass_fraction(g, deriv(g, rr.final_state.r)),
                                   boundary_mass_fraction(g, rr.final_state.q));
        meta["status"] = "ok";
        meta["steps"] = rr.steps;
        meta["t_final"] = rr.final_state.t;
        meta["relative_drift"] = {{"E1", res.e1_drift}, {"E2", res.e2_drift}, {"E3", res.e3_drift}};
        meta["mean_r_drift"] = std::abs(rr.log.back().mean_r - a.mean_r);
        meta["boundary_mass_fraction"] = bm;
        if (bm > 1e-8) {
            meta["warning"] = "solution mass reaches the window edge; periodic wrap-around may contaminate results";
            std::cerr << "warning: boundary mass fraction " << bm << " exceeds 1e-8\n";
        }
    }
    write_file(fs::path(out) / "metadata.json", meta.dump(2) + "\n");
    if (verbose) {
        if (blew)
            std::cerr << "blow-up: " << res.message << "\n";
        else
            std::printf("done: t = %s, steps = %zu, drift E1 %.3e E2 %.3e E3 %.3e, %.2f s -> %s\n",
                        fmt17(res.t_final).c_str(), rr.steps, res.e1_drift, res.e2_drift, res.e3_drift, wall,
                        out.c_str());
    }
    return res;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const Config& c) {
    const std::string key = c.str("sweep.key");
    const auto values = c.list("sweep.values");
    if (values.empty()) throw ConfigError("'sweep.values' is empty");
    const std::string out = c.str("output.dir").empty() ? "out" : c.str("output.dir");
    // validate every variant before any work starts
    std::vector<Config> runs;
    for (std::size_t i = 0; i < values.size(); ++i) {
        Config ci = c;
        ci.set(key, values[i]);
        ci.set("output.dir", (fs::path(out) / ("run_" + std::to_string(i))).string());
        validate(ci);
        runs.push_back(ci);
    }
    std::vector<SimOutcome> results(runs.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::vector<std::string> errors(runs.size());
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < runs.size();) {
            try {
                results[i] = simulate(runs[i], false);
            } catch (const std::exception& e) {
                std::lock_guard lk(err_mu);
                errors[i] = e.what();
                results[i].code = config_error;
            }
        }
    };
    long nt = c.integer("sweep.threads");
    if (nt == 0) nt = std::max(1u, std::thread::hardware_concurrency());
    nt = std::min<long>(nt, static_cast<long>(runs.size()));
    std::vector<std::thread> pool;
    for (long t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::string csv = "index,value,status,t_final,E1_drift,E2_drift,E3_drift\n";
    int worst = ok;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = results[i];
        const char* st = r.code == ok ? "ok" : r.code == blow_up ? "blow-up" : "error";
        csv += std::to_string(i) + "," + values[i] + "," + st + "," + fmt17(r.t_final) + "," + fmt17(r.e1_drift) +
               "," + fmt17(r.e2_drift) + "," + fmt17(r.e3_drift) + "\n";
        if (!errors[i].empty()) std::cerr << "run " << i << ": " << errors[i] << "\n";
        worst = std::max(worst, r.code);
    }
    ensure_dir(out);
    write_file(fs::path(out) / "sweep.csv", csv);
    std::cout << csv;
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-layer deep-water wave model: coefficients, identity checks and simulation"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--config", o.config, "flat key = value configuration file");
    app.add_option("--out", o.out, "output directory");
    app.add_option("--preset", o.preset, "density preset")->check(CLI::IsMember({"andaman", "oregon"}));
    app.add_option("--seed", o.seed, "random seed")->check(CLI::NonNegativeNumber);
    app.add_option("--set", o.sets, "override one key (key=value), repeatable");
    app.fallthrough();

    std::vector<std::string> suites_override;
    auto* s_coeffs = app.add_subcommand("coeffs", "coefficient table and key-value report");
    auto* s_disp = app.add_subcommand("dispersion", "(k, omega, omega1) as CSV");
    auto* s_verify = app.add_subcommand("verify", "run identity suites");
    s_verify->add_option("--suites", suites_override, "comma-separated suite names")->delimiter(',');
    auto* s_vh = app.add_subcommand("verify-hamiltonian", "Hamiltonian equivalence and decomposition suites");
    auto* s_vg = app.add_subcommand("verify-gauge", "gauge transformation suite");
    auto* s_sim = app.add_subcommand("simulate", "integrate the coupled system");
    auto* s_sweep = app.add_subcommand("sweep", "parameter sweep over worker threads");
    app.add_subcommand("keys", "list configuration keys and defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }

    try {
        if (app.got_subcommand("keys")) {
            const Config d;
            for (const auto& k : Config::known_keys()) std::printf("%s = %s\n", k.c_str(), d.str(k).c_str());
            return ok;
        }
        const Config c = build_config(o);
        if (s_coeffs->parsed()) return cmd_coeffs(c);
        if (s_disp->parsed()) return cmd_dispersion(c);
        if (s_verify->parsed())
            return cmd_verify(c, s_verify->count("--suites") ? suites_override : c.list("verify.suites"));
        if (s_vh->parsed()) return cmd_verify(c, {"hamiltonian", "decomposition"});
        if (s_vg->parsed()) return cmd_verify(c, {"gauge"});
        if (s_sim->parsed()) return simulate(c, true).code;
        if (s_sweep->parsed()) return cmd_sweep(c);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const NonZeroMean& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return verification_failed;
    }
    return ok;
}

}  // namespace bos::cli
