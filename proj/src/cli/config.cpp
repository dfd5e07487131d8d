#include "jjfrac/cli/config.hpp"

#include "jjfrac/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace jjfrac::cli {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view raw, const std::string& key) {
    const std::string s = trim(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError(key, fmt::format("expected a finite number, got '{}'", s));
    }
    return v;
}

std::size_t to_size(std::string_view raw, const std::string& key) {
    const std::string s = trim(raw);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError(key, fmt::format("expected a non-negative integer, got '{}'", s));
    }
    return v;
}

int to_int(std::string_view raw, const std::string& key) {
    const std::string s = trim(raw);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError(key, fmt::format("expected an integer, got '{}'", s));
    }
    return v;
}

bool to_bool(std::string_view raw, const std::string& key) {
    std::string s = trim(raw);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw ConfigError(key, fmt::format("expected true or false, got '{}'", s));
}

Units to_units(std::string_view raw, const std::string& key) {
    const std::string s = trim(raw);
    if (s == "dimensionless") return Units::dimensionless;
    if (s == "physical") return Units::physical;
    throw ConfigError(key, fmt::format("expected dimensionless or physical, got '{}'", s));
}

GammaConvention to_convention(std::string_view raw, const std::string& key) {
    const std::string s = trim(raw);
    if (s == "printed") return GammaConvention::printed;
    if (s == "rescaled") return GammaConvention::rescaled;
    throw ConfigError(key, fmt::format("expected printed or rescaled, got '{}'", s));
}

std::string_view convention_name(GammaConvention c) { return c == GammaConvention::printed ? "printed" : "rescaled"; }

void set_axis(SweepGrid& grid, const std::string& name, std::vector<double> values) {
    for (auto& [axis, vals] : grid.axes) {
        if (axis == name) {
            vals = std::move(values);
            return;
        }
    }
    grid.axes.emplace_back(name, std::move(values));
    const auto& order = sweep_parameters();
    std::stable_sort(grid.axes.begin(), grid.axes.end(), [&](const auto& a, const auto& b) {
        return std::find(order.begin(), order.end(), a.first) < std::find(order.begin(), order.end(), b.first);
    });
}

using Setter = void (*)(RunConfig&, std::string_view, const std::string&);

// [physical] entries are collected first so that explicit [params] keys win over
// the derived values.
struct Pending {
    std::map<std::string, std::string> physical;
    std::map<std::string, std::string> params;
};

const std::map<std::string, Setter>& param_setters() {
    static const std::map<std::string, Setter> table{
        {"alpha", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.params.alpha = to_double(v, k); }},
        {"gamma1", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.params.gamma1 = to_double(v, k); }},
        {"gamma2", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.params.gamma2 = to_double(v, k); }},
        {"lambda", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.params.lambda = to_double(v, k); }},
        {"Abc", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.params.Abc = to_double(v, k); }},
        {"Bbc", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.params.Bbc = to_double(v, k); }},
        {"c", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.params.c = to_double(v, k); }},
        {"T", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.params.T = to_double(v, k); }},
    };
    return table;
}

const std::map<std::string, std::map<std::string, Setter>>& section_setters() {
    static const std::map<std::string, std::map<std::string, Setter>> table{
        {"solver",
         {
             {"n", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.n = to_size(v, k); }},
             {"m", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.m = to_size(v, k); }},
             {"newton_tol", [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.newtonTol = to_double(v, k); }},
             {"newton_max_iter",
              [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.newtonMaxIter = to_int(v, k); }},
             {"newton_damping",
              [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.newtonDamping = to_bool(v, k); }},
             {"jacobian_points",
              [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.jacobianPoints = to_size(v, k); }},
             {"forcing_points",
              [](RunConfig& c, std::string_view v, const std::string& k) { c.solver.forcingPoints = to_size(v, k); }},
             {"snapshots", [](RunConfig& c, std::string_view v, const std::string& k) { c.snapshots = to_size(v, k); }},
         }},
        {"output",
         {
             {"units", [](RunConfig& c, std::string_view v, const std::string& k) { c.units = to_units(v, k); }},
             {"scale_phase", [](RunConfig& c, std::string_view v, const std::string& k) { c.scalePhase = to_bool(v, k); }},
             {"field_nodal", [](RunConfig& c, std::string_view v, const std::string& k) { c.nodalField = to_bool(v, k); }},
         }},
        {"mms",
         {
             {"meshes", [](RunConfig& c, std::string_view v, const std::string& k) { c.meshes = parse_size_list(v, k); }},
         }},
        {"sweep",
         {
             {"alpha", [](RunConfig& c, std::string_view v, const std::string& k) { set_axis(c.sweep, "alpha", parse_double_list(v, k)); }},
             {"gamma1", [](RunConfig& c, std::string_view v, const std::string& k) { set_axis(c.sweep, "gamma1", parse_double_list(v, k)); }},
             {"gamma2", [](RunConfig& c, std::string_view v, const std::string& k) { set_axis(c.sweep, "gamma2", parse_double_list(v, k)); }},
             {"lambda", [](RunConfig& c, std::string_view v, const std::string& k) { set_axis(c.sweep, "lambda", parse_double_list(v, k)); }},
             {"workers", [](RunConfig& c, std::string_view v, const std::string& k) { c.workers = to_size(v, k); }},
         }},
    };
    return table;
}

const std::set<std::string>& physical_keys() {
    static const std::set<std::string> keys{"d",  "tB", "W",   "halfLength", "eps", "sigma0", "area",
                                            "Jc", "Jbias", "I", "Bex", "eta", "alpha", "convention"};
    return keys;
}

PhysicalJunctionParams build_physical(const std::map<std::string, std::string>& raw, GammaConvention& convention) {
    PhysicalJunctionParams p;
    auto num = [&](const char* name, double& out) {
        if (auto it = raw.find(name); it != raw.end()) out = to_double(it->second, std::string("physical.") + name);
    };
    auto opt = [&](const char* name, std::optional<double>& out) {
        if (auto it = raw.find(name); it != raw.end()) out = to_double(it->second, std::string("physical.") + name);
    };
    num("d", p.d);
    num("tB", p.tB);
    num("W", p.W);
    num("halfLength", p.halfLength);
    num("eps", p.eps);
    num("sigma0", p.sigma0);
    num("area", p.area);
    num("Jc", p.Jc);
    num("Jbias", p.Jbias);
    num("alpha", p.alpha);
    opt("I", p.I);
    opt("Bex", p.Bex);
    opt("eta", p.eta);
    if (auto it = raw.find("convention"); it != raw.end()) convention = to_convention(it->second, "physical.convention");
    return p;
}

void resolve_physical(RunConfig& cfg) {
    if (!cfg.physical) return;
    try {
        const DimensionlessParams derived = nondimensionalize(*cfg.physical, cfg.convention);
        auto& p = cfg.solver.params;
        p.alpha = derived.alpha;
        p.gamma1 = derived.gamma1;
        p.gamma2 = derived.gamma2;
        p.lambda = derived.lambda;
        p.Abc = derived.Abc;
        p.Bbc = derived.Bbc;
    } catch (const UnsupportedOrderError& e) {
        throw ConfigError("physical.alpha", e.what());
    } catch (const DomainError& e) {
        throw ConfigError("physical", e.what());
    }
}

}  // namespace

std::string_view to_string(Units u) noexcept { return u == Units::physical ? "physical" : "dimensionless"; }

bool SweepGrid::empty() const noexcept {
    return std::all_of(axes.begin(), axes.end(), [](const auto& a) { return a.second.empty(); });
}

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", key, message)), key_(std::move(key)) {}

std::vector<double> parse_double_list(std::string_view text, const std::string& key) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(to_double(piece, key));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<std::size_t> parse_size_list(std::string_view text, const std::string& key) {
    std::vector<std::size_t> out;
    for (double v : parse_double_list(text, key)) {
        if (v < 0.0 || v != std::floor(v)) throw ConfigError(key, fmt::format("expected non-negative integers, got {}", v));
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

RunConfig parse_config_text(std::string_view text, const ConfigOverrides& overrides) {
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("file", fmt::format("malformed config at line {}: {}", e.line(), e.message()));
    }

    RunConfig cfg;
    Pending pending;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) throw ConfigError(section, "key outside any section");
        for (const auto& [key, node] : body) {
            const std::string full = section + "." + key;
            const std::string value = node.get_value<std::string>();
            if (section == "params") {
                if (!param_setters().count(key)) throw ConfigError(full, "unknown key");
                pending.params[key] = value;
            } else if (section == "physical") {
                if (!physical_keys().count(key)) throw ConfigError(full, "unknown key");
                pending.physical[key] = value;
            } else {
                const auto sec = section_setters().find(section);
                if (sec == section_setters().end()) throw ConfigError(section, "unknown section");
                const auto setter = sec->second.find(key);
                if (setter == sec->second.end()) throw ConfigError(full, "unknown key");
                setter->second(cfg, value, full);
            }
        }
    }
    if (!pending.physical.empty()) {
        cfg.physical = build_physical(pending.physical, cfg.convention);
        resolve_physical(cfg);
    }
    for (const auto& [key, value] : pending.params) param_setters().at(key)(cfg, value, "params." + key);
    return apply_overrides(std::move(cfg), overrides);
}

RunConfig parse_config_file(const std::filesystem::path& path, const ConfigOverrides& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("file", fmt::format("cannot read config '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), overrides);
}

RunConfig apply_overrides(RunConfig cfg, const ConfigOverrides& o) {
    auto& p = cfg.solver.params;
    if (o.n) cfg.solver.n = *o.n;
    if (o.m) cfg.solver.m = *o.m;
    if (o.alpha) p.alpha = *o.alpha;
    if (o.gamma1) p.gamma1 = *o.gamma1;
    if (o.gamma2) p.gamma2 = *o.gamma2;
    if (o.lambda) p.lambda = *o.lambda;
    if (o.T) p.T = *o.T;
    if (o.snapshots) cfg.snapshots = *o.snapshots;
    if (o.workers) cfg.workers = *o.workers;
    if (o.units) cfg.units = *o.units;
    if (o.scalePhase) cfg.scalePhase = *o.scalePhase;
    if (o.meshes) cfg.meshes = *o.meshes;
    for (const auto& [name, values] : o.grid) {
        if (std::find(sweep_parameters().begin(), sweep_parameters().end(), name) == sweep_parameters().end()) {
            throw ConfigError("sweep." + name, "unknown sweep parameter");
        }
        set_axis(cfg.sweep, name, values);
    }
    check(cfg);
    return cfg;
}

void check(const RunConfig& cfg) {
    const auto& p = cfg.solver.params;
    if (!is_supported_order(p.alpha)) throw ConfigError("params.alpha", UnsupportedOrderError(p.alpha).what());
    if (!(p.gamma1 >= 0.0)) throw ConfigError("params.gamma1", "gamma1 must be non-negative");
    if (!(p.gamma2 > 0.0)) throw ConfigError("params.gamma2", "gamma2 must be strictly positive");
    if (!(p.c >= 0.0 && p.c < 1.0)) throw ConfigError("params.c", "kink speed must satisfy 0 <= c < 1");
    if (!(p.T > 0.0)) throw ConfigError("params.T", "final time T must be strictly positive");
    if (cfg.solver.n < 2) throw ConfigError("solver.n", "n must be >= 2");
    if (cfg.solver.m < 2) throw ConfigError("solver.m", "m must be >= 2");
    if (!(cfg.solver.newtonTol > 0.0)) throw ConfigError("solver.newton_tol", "newton tolerance must be positive");
    if (cfg.solver.newtonMaxIter < 1) throw ConfigError("solver.newton_max_iter", "newton iteration limit must be >= 1");
    if (cfg.solver.jacobianPoints < 3) throw ConfigError("solver.jacobian_points", "needs at least 3 points");
    if (cfg.solver.forcingPoints < 1) throw ConfigError("solver.forcing_points", "needs at least 1 point");
    if (cfg.units == Units::physical && !cfg.physical) {
        throw ConfigError("output.units", "physical units need a [physical] section");
    }
    for (std::size_t n : cfg.meshes) {
        if (n < 2) throw ConfigError("mms.meshes", "every mesh needs at least 2 elements");
    }
    for (const auto& [name, values] : cfg.sweep.axes) {
        for (double v : values) {
            RunConfig probe = cfg;
            probe.sweep = {};
            auto& q = probe.solver.params;
            if (name == "alpha") q.alpha = v;
            if (name == "gamma1") q.gamma1 = v;
            if (name == "gamma2") q.gamma2 = v;
            if (name == "lambda") q.lambda = v;
            try {
                check(probe);
            } catch (const ConfigError& e) {
                throw ConfigError("sweep." + name, fmt::format("grid value {} is invalid ({})", v, e.what()));
            }
        }
    }
    if (const auto issues = validate(cfg.solver); !issues.empty()) throw ConfigError("config", issues.front());
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
    const auto& s = cfg.solver;
    const auto& p = s.params;
    nlohmann::ordered_json j;
    j["params"] = {{"alpha", p.alpha}, {"gamma1", p.gamma1}, {"gamma2", p.gamma2}, {"lambda", p.lambda},
                   {"Abc", p.Abc},     {"Bbc", p.Bbc},       {"c", p.c},           {"T", p.T}};
    j["solver"] = {{"n", s.n},
                   {"m", s.m},
                   {"newton_tol", s.newtonTol},
                   {"newton_max_iter", s.newtonMaxIter},
                   {"newton_damping", s.newtonDamping},
                   {"jacobian_points", s.jacobianPoints},
                   {"forcing_points", s.forcingPoints},
                   {"snapshots", cfg.snapshots}};
    j["output"] = {{"units", to_string(cfg.units)}, {"scale_phase", cfg.scalePhase}, {"field_nodal", cfg.nodalField}};
    j["mms"] = {{"meshes", cfg.meshes}};
    nlohmann::ordered_json sweep = nlohmann::ordered_json::object();
    for (const auto& [name, values] : cfg.sweep.axes) sweep[name] = values;
    sweep["workers"] = cfg.workers;
    j["sweep"] = sweep;
    if (cfg.physical) {
        const auto& ph = *cfg.physical;
        nlohmann::ordered_json phys = {{"d", ph.d},       {"tB", ph.tB},         {"W", ph.W},       {"halfLength", ph.halfLength},
                                       {"eps", ph.eps},   {"sigma0", ph.sigma0}, {"area", ph.area}, {"Jc", ph.Jc},
                                       {"Jbias", ph.Jbias}, {"alpha", ph.alpha}};
        if (ph.I) phys["I"] = *ph.I;
        if (ph.Bex) phys["Bex"] = *ph.Bex;
        if (ph.eta) phys["eta"] = *ph.eta;
        phys["convention"] = convention_name(cfg.convention);
        j["physical"] = phys;
    } else {
        j["physical"] = nullptr;
    }
    return j;
}

RunConfig config_from_json(const nlohmann::ordered_json& j) {
    RunConfig cfg;
    try {
        auto& s = cfg.solver;
        auto& p = s.params;
        const auto& jp = j.at("params");
        p.alpha = jp.at("alpha").get<double>();
        p.gamma1 = jp.at("gamma1").get<double>();
        p.gamma2 = jp.at("gamma2").get<double>();
        p.lambda = jp.at("lambda").get<double>();
        p.Abc = jp.at("Abc").get<double>();
        p.Bbc = jp.at("Bbc").get<double>();
        p.c = jp.at("c").get<double>();
        p.T = jp.at("T").get<double>();
        const auto& js = j.at("solver");
        s.n = js.at("n").get<std::size_t>();
        s.m = js.at("m").get<std::size_t>();
        s.newtonTol = js.at("newton_tol").get<double>();
        s.newtonMaxIter = js.at("newton_max_iter").get<int>();
        s.newtonDamping = js.at("newton_damping").get<bool>();
        s.jacobianPoints = js.at("jacobian_points").get<std::size_t>();
        s.forcingPoints = js.at("forcing_points").get<std::size_t>();
        cfg.snapshots = js.at("snapshots").get<std::size_t>();
        const auto& jo = j.at("output");
        cfg.units = to_units(jo.at("units").get<std::string>(), "output.units");
        cfg.scalePhase = jo.at("scale_phase").get<bool>();
        cfg.nodalField = jo.at("field_nodal").get<bool>();
        cfg.meshes = j.at("mms").at("meshes").get<std::vector<std::size_t>>();
        for (const auto& [key, value] : j.at("sweep").items()) {
            if (key == "workers") {
                cfg.workers = value.get<std::size_t>();
            } else {
                set_axis(cfg.sweep, key, value.get<std::vector<double>>());
            }
        }
        if (const auto& ph = j.at("physical"); !ph.is_null()) {
            PhysicalJunctionParams phys;
            phys.d = ph.at("d").get<double>();
            phys.tB = ph.at("tB").get<double>();
            phys.W = ph.at("W").get<double>();
            phys.halfLength = ph.at("halfLength").get<double>();
            phys.eps = ph.at("eps").get<double>();
            phys.sigma0 = ph.at("sigma0").get<double>();
            phys.area = ph.at("area").get<double>();
            phys.Jc = ph.at("Jc").get<double>();
            phys.Jbias = ph.at("Jbias").get<double>();
            phys.alpha = ph.at("alpha").get<double>();
            if (ph.contains("I")) phys.I = ph.at("I").get<double>();
            if (ph.contains("Bex")) phys.Bex = ph.at("Bex").get<double>();
            if (ph.contains("eta")) phys.eta = ph.at("eta").get<double>();
            cfg.convention = to_convention(ph.at("convention").get<std::string>(), "physical.convention");
            cfg.physical = phys;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("manifest", fmt::format("cannot read config from manifest: {}", e.what()));
    }
    check(cfg);
    return cfg;
}

}  // namespace jjfrac::cli
