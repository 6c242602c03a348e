#pragma once

#include <map>
#include <string>
#include <vector>

#include "bos/coeffs.hpp"
#include "bos/solver.hpp"

namespace bos::cli {

enum Exit { ok = 0, verification_failed = 1, config_error = 2, blow_up = 3 };

// Flat dotted key = value configuration. Every key must be one of the known
// keys; anything else is a ConfigError.
class Config {
public:
    Config();  // all defaults

    void set(const std::string& key, const std::string& value);
    // Lines "key = value"; '#' starts a comment. Repeated keys are an error.
    void load_file(const std::string& path);
    void apply_preset(const std::string& name);

    const std::string& str(const std::string& key) const;
    double num(const std::string& key) const;
    long integer(const std::string& key) const;
    std::vector<std::string> list(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }
    static std::vector<std::string> known_keys();

private:
    std::map<std::string, std::string> values_;
};

// Checks every precondition that later stages rely on.
void validate(const Config& c);

PhysicalParams physical_params(const Config& c);
Grid make_grid(const Config& c);
StepperConfig stepper_config(const Config& c);
SystemState initial_state(const Config& c, const Grid& g);

struct CheckRow {
    std::string suite, name;
    double residual, tolerance;
    bool pass() const { return residual <= tolerance; }
};

std::vector<std::string> all_suites();
// Runs the named suites; throws ConfigError on an unknown suite name.
std::vector<CheckRow> run_suites(const Config& c, const std::vector<std::string>& suites);

// Round-trip decimal formatting (17 significant digits).
std::string fmt17(double v);

int main(int argc, char** argv);

}  // namespace bos::cli
