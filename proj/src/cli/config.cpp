#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bos/cli.hpp"

namespace bos::cli {

namespace {

struct KeyDef {
    const char* key;
    const char* def;
};

// clang-format off
const KeyDef kKeys[] = {
    {"physics.g", "9.81"},
    {"physics.h1", "500"},
    {"physics.rho", "1000"},
    {"physics.rho1", "997"},
    {"scaling.epsilon", "0.1"},
    {"scaling.delta", "0.25"},
    {"grid.n", "512"},
    {"grid.L", "125.66370614359172"},
    // derived: from the physical parameters; custom: the reduced.* values below
    {"reduced.source", "custom"},
    {"reduced.a", "0.5"},
    {"reduced.b", "1"},
    {"reduced.c", "1"},
    {"reduced.d", "0.5"},
    {"reduced.alpha", "1"},
    {"reduced.beta", "1"},
    {"solver.model", "reduced"},
    {"solver.scheme", "strang"},
    {"solver.dt", "0.001"},
    {"solver.t_end", "10"},
    {"solver.dealias", "two_thirds"},
    {"solver.blowup_guard", "1000"},
    // tau = eps t (default) or tau1 = eps^2 t; only affects the reported physical time
    {"solver.time_variable", "tau"},
    {"initial.r", "gaussian"},
    {"initial.r_amplitude", "0.1"},
    {"initial.r_width", "2"},
    {"initial.r_center", "0"},
    {"initial.r_nu", "1"},
    {"initial.r_modes", "16"},
    {"initial.q", "gaussian"},
    {"initial.q_amplitude", "0.1"},
    {"initial.q_width", "3"},
    {"initial.q_mode", "0"},
    {"initial.q_center", "0"},
    {"output.dir", ""},
    {"output.diagnostics_every", "100"},
    {"output.snapshot_every", "0"},
    {"output.gauge_diagnostics", "true"},
    {"dispersion.k_min", "1e-4"},
    {"dispersion.k_max", "1"},
    {"dispersion.count", "100"},
    {"dispersion.depth", "0"},
    {"verify.suites", "quartic,eigen,resonance,hamiltonian,decomposition,gauge,projections"},
    {"verify.samples", "5"},
    {"verify.perturb", "0"},
    {"sweep.key", "solver.dt"},
    {"sweep.values", ""},
    {"sweep.threads", "0"},
    {"seed", "1"},
};
// clang-format on

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_pow2(long n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Config::Config() {
    for (const auto& k : kKeys) values_[k.key] = k.def;
}

std::vector<std::string> Config::known_keys() {
    std::vector<std::string> out;
    for (const auto& k : kKeys) out.emplace_back(k.key);
    return out;
}

void Config::set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second = value;
}

void Config::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::map<std::string, int> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (seen.count(key))
            throw ConfigError(path + ":" + std::to_string(lineno) + ": key '" + key + "' repeated (first on line " +
                              std::to_string(seen[key]) + ")");
        seen[key] = lineno;
        try {
            set(key, trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void Config::apply_preset(const std::string& name) {
    PhysicalParams p;
    if (name == "andaman")
        p = PhysicalParams::andaman();
    else if (name == "oregon")
        p = PhysicalParams::oregon();
    else
        throw ConfigError("unknown preset '" + name + "' (expected andaman or oregon)");
    set("physics.g", fmt17(p.g));
    set("physics.h1", fmt17(p.h1));
    set("physics.rho", fmt17(p.rho));
    set("physics.rho1", fmt17(p.rho1));
}

const std::string& Config::str(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
    return it->second;
}

double Config::num(const std::string& key) const {
    const std::string& s = str(key);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw ConfigError("'" + key + "' is not a finite number: '" + s + "'");
    return v;
}

long Config::integer(const std::string& key) const {
    const std::string& s = str(key);
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || errno == ERANGE)
        throw ConfigError("'" + key + "' is not an integer: '" + s + "'");
    return v;
}

std::vector<std::string> Config::list(const std::string& key) const {
    std::vector<std::string> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

PhysicalParams physical_params(const Config& c) {
    PhysicalParams p;
    p.g = c.num("physics.g");
    p.h1 = c.num("physics.h1");
    p.rho = c.num("physics.rho");
    p.rho1 = c.num("physics.rho1");
    return p;
}

namespace {

void one_of(const Config& c, const std::string& key, std::initializer_list<const char*> options) {
    const std::string& v = c.str(key);
    std::string all;
    for (const char* o : options) {
        if (v == o) return;
        all += all.empty() ? o : std::string(", ") + o;
    }
    throw ConfigError("'" + key + "' must be one of {" + all + "}, got '" + v + "'");
}

void positive(const Config& c, const std::string& key) {
    if (!(c.num(key) > 0.0)) throw ConfigError("'" + key + "' must be positive");
}

}  // namespace

void validate(const Config& c) {
    try {
        physical_params(c).validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("physical parameters: ") + e.what());
    }
    const double delta = c.num("scaling.delta"), eps = c.num("scaling.epsilon");
    if (!(delta > 0.0 && delta < 0.5)) throw ConfigError("'scaling.delta' must lie in (0, 1/2)");
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("'scaling.epsilon' must lie in (0, 1)");

    const long n = c.integer("grid.n");
    if (!is_pow2(n) || n < 8) throw ConfigError("'grid.n' must be a power of two >= 8");
    positive(c, "grid.L");

    one_of(c, "reduced.source", {"derived", "custom"});
    for (const char* k : {"reduced.a", "reduced.b", "reduced.c", "reduced.d", "reduced.alpha", "reduced.beta"})
        c.num(k);
    one_of(c, "solver.model", {"reduced", "full"});
    if (c.str("solver.model") == "full" && c.str("reduced.source") != "derived")
        throw ConfigError("'solver.model = full' requires 'reduced.source = derived'");
    one_of(c, "solver.scheme", {"strang", "etdrk4"});
    one_of(c, "solver.dealias", {"off", "two_thirds", "strict"});
    one_of(c, "solver.time_variable", {"tau", "tau1"});
    positive(c, "solver.dt");
    positive(c, "solver.blowup_guard");
    if (!(c.num("solver.t_end") >= 0.0)) throw ConfigError("'solver.t_end' must be non-negative");

    one_of(c, "initial.r", {"gaussian", "soliton", "random", "zero"});
    one_of(c, "initial.q", {"gaussian", "monochromatic", "zero"});
    c.num("initial.r_amplitude");
    c.num("initial.q_amplitude");
    c.num("initial.r_center");
    c.num("initial.q_center");
    positive(c, "initial.r_width");
    positive(c, "initial.q_width");
    positive(c, "initial.r_nu");
    if (c.integer("initial.r_modes") < 1) throw ConfigError("'initial.r_modes' must be >= 1");
    if (std::abs(c.integer("initial.q_mode")) >= n / 2) throw ConfigError("'initial.q_mode' must satisfy |j| < n/2");

    if (c.integer("output.diagnostics_every") < 0 || c.integer("output.snapshot_every") < 0)
        throw ConfigError("output cadences must be non-negative");
    one_of(c, "output.gauge_diagnostics", {"true", "false"});

    positive(c, "dispersion.k_min");
    if (!(c.num("dispersion.k_max") > c.num("dispersion.k_min")))
        throw ConfigError("'dispersion.k_max' must exceed 'dispersion.k_min'");
    if (c.integer("dispersion.count") < 2) throw ConfigError("'dispersion.count' must be >= 2");
    if (!(c.num("dispersion.depth") >= 0.0)) throw ConfigError("'dispersion.depth' must be >= 0 (0 = deep)");

    if (c.integer("verify.samples") < 1) throw ConfigError("'verify.samples' must be >= 1");
    c.num("verify.perturb");
    if (c.integer("sweep.threads") < 0) throw ConfigError("'sweep.threads' must be >= 0");
    if (c.integer("seed") < 0) throw ConfigError("'seed' must be non-negative");
}

Grid make_grid(const Config& c) {
    return Grid(static_cast<std::size_t>(c.integer("grid.n")), c.num("grid.L"));
}

StepperConfig stepper_config(const Config& c) {
    StepperConfig s;
    s.dt = c.num("solver.dt");
    s.scheme = c.str("solver.scheme") == "etdrk4" ? Scheme::etdrk4 : Scheme::strang;
    const std::string& d = c.str("solver.dealias");
    s.dealias = d == "off" ? Dealias::off : d == "strict" ? Dealias::strict : Dealias::two_thirds;
    s.blowup_guard = c.num("solver.blowup_guard");
    s.model = c.str("solver.model") == "full" ? Model::full : Model::reduced;
    return s;
}

SystemState initial_state(const Config& c, const Grid& g) {
    SystemState s;
    const std::string& rk = c.str("initial.r");
    const double ra = c.num("initial.r_amplitude");
    if (rk == "gaussian")
        s.r = gaussian_r(g, ra, c.num("initial.r_width"), c.num("initial.r_center"));
    else if (rk == "soliton")
        s.r = bo_soliton_r(g, c.num("initial.r_nu"), c.num("initial.r_center"), ra);
    else if (rk == "random")
        s.r = random_r(g, static_cast<std::uint64_t>(c.integer("seed")), ra, c.integer("initial.r_modes"));
    else
        s.r.assign(g.n(), 0.0);

    const std::string& qk = c.str("initial.q");
    const double qa = c.num("initial.q_amplitude");
    if (qk == "gaussian")
        s.q = gaussian_q(g, qa, c.num("initial.q_width"), c.integer("initial.q_mode"), c.num("initial.q_center"));
    else if (qk == "monochromatic")
        s.q = monochromatic_q(g, qa, c.integer("initial.q_mode"));
    else
        s.q.assign(g.n(), 0.0);
    s.t = 0.0;
    return s;
}

}  // namespace bos::cli
