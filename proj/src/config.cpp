#include "fracgs/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fracgs {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("config: unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <typename T>
void read_into(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config: bad value for '" + std::string(key) + "' in " + where +
                          ": " + e.what());
    }
}

NonlinearitySpec parse_nl(const json& obj, const std::string& where) {
    reject_unknown_keys(obj, {"q", "mu", "theta", "alpha0", "mode"}, where);
    NonlinearitySpec nl;
    read_into(obj, "q", nl.q, where);
    read_into(obj, "mu", nl.mu, where);
    read_into(obj, "theta", nl.theta, where);
    read_into(obj, "alpha0", nl.alpha0, where);
    if (obj.contains("mode")) {
        const std::string mode = obj.at("mode").get<std::string>();
        if (mode == "critical") {
            nl.mode = NonlinearityMode::critical;
        } else if (mode == "pure_power") {
            nl.mode = NonlinearityMode::pure_power;
        } else {
            throw ConfigError("config: mode must be 'critical' or 'pure_power' in " + where);
        }
    }
    return nl;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(root,
                        {"grid", "potentials", "nonlinearity", "solver", "checks", "omega",
                         "output_dir"},
                        "top level");

    RunConfig cfg;
    if (root.contains("grid")) {
        const json& g = root.at("grid");
        reject_unknown_keys(g, {"L", "N"}, "grid");
        read_into(g, "L", cfg.L, "grid");
        read_into(g, "N", cfg.N, "grid");
    }
    if (root.contains("potentials")) {
        const json& p = root.at("potentials");
        reject_unknown_keys(p, {"flavor", "delta", "family", "bump"}, "potentials");
        if (p.contains("flavor")) {
            const std::string fl = p.at("flavor").get<std::string>();
            if (fl == "periodic") {
                cfg.flavor = PotentialFlavor::periodic;
            } else if (fl == "asymptotically_periodic") {
                cfg.flavor = PotentialFlavor::asymptotically_periodic;
            } else {
                throw ConfigError("config: flavor must be 'periodic' or "
                                  "'asymptotically_periodic'");
            }
        }
        read_into(p, "delta", cfg.family.delta, "potentials");
        if (p.contains("family")) {
            const json& f = p.at("family");
            reject_unknown_keys(
                f, {"v1_base", "v1_amp", "v2_base", "v2_amp", "lambda_factor"}, "family");
            read_into(f, "v1_base", cfg.family.v1_base, "family");
            read_into(f, "v1_amp", cfg.family.v1_amp, "family");
            read_into(f, "v2_base", cfg.family.v2_base, "family");
            read_into(f, "v2_amp", cfg.family.v2_amp, "family");
            read_into(f, "lambda_factor", cfg.family.lambda_factor, "family");
        }
        if (p.contains("bump")) {
            const json& b = p.at("bump");
            reject_unknown_keys(b, {"a1", "a2", "b"}, "bump");
            read_into(b, "a1", cfg.bump.a1, "bump");
            read_into(b, "a2", cfg.bump.a2, "bump");
            read_into(b, "b", cfg.bump.b, "bump");
        }
    }
    if (root.contains("nonlinearity")) {
        const json& n = root.at("nonlinearity");
        reject_unknown_keys(n, {"f1", "f2"}, "nonlinearity");
        if (n.contains("f1")) cfg.nl[0] = parse_nl(n.at("f1"), "nonlinearity.f1");
        if (n.contains("f2")) cfg.nl[1] = parse_nl(n.at("f2"), "nonlinearity.f2");
    }
    for (const auto& spec : cfg.nl) {
        if (!(spec.q > 2.0) || !(spec.theta > 0.0) || !(spec.alpha0 > 0.0)) {
            throw ConfigError("config: nonlinearity needs q > 2, theta > 0, alpha0 > 0");
        }
    }
    if (cfg.nl[0].q != cfg.nl[1].q) {
        throw ConfigError("config: both components must share the exponent q");
    }
    if (root.contains("solver")) {
        const json& s = root.at("solver");
        reject_unknown_keys(s,
                            {"max_iters", "grad_tol", "step_init", "shrink", "armijo_c",
                             "recenter_every", "n_starts", "rng_seed", "t_tol", "polish_iters",
                             "tail_threshold"},
                            "solver");
        read_into(s, "max_iters", cfg.solver.max_iters, "solver");
        read_into(s, "grad_tol", cfg.solver.grad_tol, "solver");
        read_into(s, "step_init", cfg.solver.step_init, "solver");
        read_into(s, "shrink", cfg.solver.shrink, "solver");
        read_into(s, "armijo_c", cfg.solver.armijo_c, "solver");
        read_into(s, "recenter_every", cfg.solver.recenter_every, "solver");
        read_into(s, "n_starts", cfg.solver.n_starts, "solver");
        read_into(s, "rng_seed", cfg.solver.rng_seed, "solver");
        read_into(s, "t_tol", cfg.solver.t_tol, "solver");
        read_into(s, "polish_iters", cfg.solver.polish_iters, "solver");
        read_into(s, "tail_threshold", cfg.solver.tail_threshold, "solver");
    }
    if (root.contains("checks")) {
        try {
            cfg.checks = root.at("checks").get<std::vector<std::string>>();
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config: checks must be a string list: ") + e.what());
        }
    }
    read_into(root, "omega", cfg.omega, "top level");
    read_into(root, "output_dir", cfg.output_dir, "top level");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string RunConfig::echo_json() const {
    json root;
    root["grid"] = {{"L", L}, {"N", N}};
    json pot;
    pot["flavor"] =
        flavor == PotentialFlavor::periodic ? "periodic" : "asymptotically_periodic";
    pot["delta"] = family.delta;
    pot["family"] = {{"v1_base", family.v1_base},
                     {"v1_amp", family.v1_amp},
                     {"v2_base", family.v2_base},
                     {"v2_amp", family.v2_amp},
                     {"lambda_factor", family.lambda_factor}};
    if (flavor == PotentialFlavor::asymptotically_periodic) {
        pot["bump"] = {{"a1", bump.a1}, {"a2", bump.a2}, {"b", bump.b}};
    }
    root["potentials"] = pot;
    auto nl_json = [](const NonlinearitySpec& s) {
        return json{{"q", s.q},
                    {"mu", s.mu},
                    {"theta", s.theta},
                    {"alpha0", s.alpha0},
                    {"mode", s.mode == NonlinearityMode::critical ? "critical" : "pure_power"}};
    };
    root["nonlinearity"] = {{"f1", nl_json(nl[0])}, {"f2", nl_json(nl[1])}};
    root["solver"] = {{"max_iters", solver.max_iters},
                      {"grad_tol", solver.grad_tol},
                      {"step_init", solver.step_init},
                      {"shrink", solver.shrink},
                      {"armijo_c", solver.armijo_c},
                      {"recenter_every", solver.recenter_every},
                      {"n_starts", solver.n_starts},
                      {"rng_seed", solver.rng_seed},
                      {"t_tol", solver.t_tol},
                      {"polish_iters", solver.polish_iters},
                      {"tail_threshold", solver.tail_threshold}};
    root["checks"] = checks;
    root["omega"] = omega;
    root["output_dir"] = output_dir;
    return root.dump();
}

GridPtr build_grid(const RunConfig& cfg) { return make_grid(cfg.L, cfg.N); }

PotentialSet build_potentials(const RunConfig& cfg, const GridPtr& grid) {
    PotentialSet periodic = build_periodic_potentials(grid, cfg.family);
    if (cfg.flavor == PotentialFlavor::periodic) return periodic;
    return build_asymptotic_potentials(periodic, cfg.bump);
}

}  // namespace fracgs
