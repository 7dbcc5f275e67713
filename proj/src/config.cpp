#include "dynwave/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "dynwave/quotients.hpp"

namespace dynwave {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"grid", {"L", "T", "K", "N"}},
        {"problem", {"kind", "nonlinearity", "flux", "bc", "preset", "initial_csv"}},
        {"solver", {"tol", "max_iter", "check_radius", "damping"}},
        {"output", {"outdir", "snapshot_stride"}},
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
        throw ConfigError(fmt::format("{}: '{}' is not a finite number", key, value));
    }
    return v;
}

int to_int(const std::string& key, const std::string& value) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not an integer", key, value));
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, value));
}

void apply(ExperimentConfig& c, const std::string& section, const std::string& key,
           const std::string& raw) {
    const auto sec = schema().find(section);
    if (sec == schema().end()) {
        throw ConfigError(fmt::format("unknown section [{}]", section));
    }
    const std::string name = section + "." + key;
    if (!sec->second.contains(key)) {
        throw ConfigError(fmt::format("unknown key '{}'", name));
    }
    const std::string value = trim(raw);

    if (name == "grid.L") c.L = to_double(name, value);
    else if (name == "grid.T") c.T = to_double(name, value);
    else if (name == "grid.K") c.K = to_int(name, value);
    else if (name == "grid.N") c.N = to_int(name, value);
    else if (name == "problem.kind") {
        if (value == "semilinear") c.kind = ProblemKind::Semilinear;
        else if (value == "general") c.kind = ProblemKind::General;
        else throw ConfigError(fmt::format("{}: expected semilinear|general, got '{}'", name, value));
    } else if (name == "problem.nonlinearity") {
        try {
            nonlinearity_by_name(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(fmt::format("{}: {}", name, e.what()));
        }
        c.nonlinearity = value;
    } else if (name == "problem.flux") {
        try {
            flux_by_name(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(fmt::format("{}: {}", name, e.what()));
        }
        c.flux = value;
    } else if (name == "problem.bc") {
        if (value == "dynamic") c.bc = Boundary::Dynamic;
        else if (value == "neumann") c.bc = Boundary::Neumann;
        else throw ConfigError(fmt::format("{}: expected dynamic|neumann, got '{}'", name, value));
    } else if (name == "problem.preset") c.preset = value;
    else if (name == "problem.initial_csv") c.initial_csv = value;
    else if (name == "solver.tol") c.solver.tol = to_double(name, value);
    else if (name == "solver.max_iter") c.solver.max_iter = to_int(name, value);
    else if (name == "solver.check_radius") c.solver.check_radius = to_bool(name, value);
    else if (name == "solver.damping") c.solver.damping = to_double(name, value);
    else if (name == "output.outdir") c.outdir = value;
    else if (name == "output.snapshot_stride") c.snapshot_stride = to_int(name, value);
}

void validate(const ExperimentConfig& c, bool preset_given) {
    try {
        (void)c.grid();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (preset_given && !c.initial_csv.empty()) {
        throw ConfigError("problem.preset and problem.initial_csv are mutually exclusive");
    }
    if (c.initial_csv.empty()) {
        bool known = false;
        for (const auto& p : preset_catalog()) known = known || p.name == c.preset;
        if (!known) throw ConfigError(fmt::format("problem.preset: unknown preset '{}'", c.preset));
    }
    if (!(c.solver.tol > 0.0)) throw ConfigError("solver.tol must be positive");
    if (c.solver.max_iter < 1) throw ConfigError("solver.max_iter must be at least 1");
    if (!(c.solver.damping > 0.0 && c.solver.damping <= 1.0)) {
        throw ConfigError("solver.damping must lie in (0, 1]");
    }
    if (c.snapshot_stride < 1) throw ConfigError("output.snapshot_stride must be at least 1");
    if (c.kind == ProblemKind::General && c.bc != Boundary::Dynamic) {
        throw ConfigError("problem.bc: the general scheme supports the dynamic closure only");
    }
}

}  // namespace

ConfigOverride parse_override(const std::string& text) {
    const auto eq = text.find('=');
    const auto dot = text.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw ConfigError(fmt::format("override '{}' is not of the form section.key=value", text));
    }
    return {trim(text.substr(0, dot)), trim(text.substr(dot + 1, eq - dot - 1)),
            text.substr(eq + 1)};
}

ExperimentConfig parse_config(const std::string& text,
                              const std::vector<ConfigOverride>& overrides) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(fmt::format("config: {}", e.message()));
    }

    ExperimentConfig c;
    c.outdir.clear();
    bool preset_given = false;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            throw ConfigError(fmt::format("key '{}' outside of a section", section));
        }
        for (const auto& [key, value] : body) {
            apply(c, section, key, value.data());
            preset_given = preset_given || (section == "problem" && key == "preset");
        }
    }
    for (const auto& o : overrides) {
        apply(c, o.section, o.key, o.value);
        if (o.section == "problem" && o.key == "preset") {
            preset_given = true;
            c.initial_csv.clear();
        }
        if (o.section == "problem" && o.key == "initial_csv") preset_given = false;
    }
    if (c.outdir.empty()) {
        const char* env = std::getenv("DYNWAVE_OUTDIR");
        c.outdir = env != nullptr && *env != '\0' ? env : ".";
    }
    validate(c, preset_given);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::vector<ConfigOverride>& overrides) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot read config '{}'", path.string()));
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides);
}

}  // namespace dynwave
