#include "gravcorr/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gravcorr {

namespace {

using nlohmann::json;

// Minimal TOML reader covering the config dialect: [section] headers,
// key = value with numbers, booleans and quoted strings, # comments.
json toml_to_json(const std::string& text) {
    json root = json::object();
    json* section = &root;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated section header");
            }
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) {
                throw ConfigError("config line " + std::to_string(lineno) + ": empty section");
            }
            section = &root[name];
            if (!section->is_object()) *section = json::object();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        }
        if (value.front() == '"' || value.front() == '\'') {
            if (value.size() < 2 || value.back() != value.front()) {
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated string");
            }
            (*section)[key] = value.substr(1, value.size() - 2);
        } else if (value == "true" || value == "false") {
            (*section)[key] = (value == "true");
        } else {
            try {
                std::size_t used = 0;
                const double d = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
                (*section)[key] = d;
            } catch (const std::exception&) {
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": cannot parse value '" + value + "'");
            }
        }
    }
    return root;
}

double require_number(const json& sec, const std::string& section, const std::string& key) {
    if (!sec.contains(key)) {
        throw ConfigError(section + "." + key + ": missing required key");
    }
    if (!sec[key].is_number()) {
        throw ConfigError(section + "." + key + ": expected a number");
    }
    return sec[key].get<double>();
}

void check_keys(const json& sec, const std::string& section,
                std::initializer_list<const char*> allowed) {
    for (auto it = sec.begin(); it != sec.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) { ok = true; break; }
        }
        if (!ok) throw ConfigError(section + "." + it.key() + ": unknown key");
    }
}

MechanicalParams parse_mech(const json& sec, const std::string& section) {
    check_keys(sec, section,
               {"omega_m_hz", "q_m", "mass_kg", "density_kg_m3", "temperature_k"});
    MechanicalParams m;
    m.omega_m = kTwoPi * require_number(sec, section, "omega_m_hz");
    m.q_m = require_number(sec, section, "q_m");
    m.mass = require_number(sec, section, "mass_kg");
    m.density = require_number(sec, section, "density_kg_m3");
    m.temperature = require_number(sec, section, "temperature_k");
    try {
        m.validate(section);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    return m;
}

OpticalParams parse_opt(const json& sec, const std::string& section) {
    check_keys(sec, section,
               {"power_w", "wavelength_m", "length_m", "finesse", "bandwidth_hz"});
    OpticalParams o;
    o.power_cav = require_number(sec, section, "power_w");
    o.wavelength = require_number(sec, section, "wavelength_m");
    o.cavity_length = require_number(sec, section, "length_m");
    if (sec.contains("finesse") && sec.contains("bandwidth_hz")) {
        throw ConfigError(section + ": finesse and bandwidth_hz are mutually exclusive");
    }
    if (sec.contains("finesse")) o.finesse = require_number(sec, section, "finesse");
    if (sec.contains("bandwidth_hz")) {
        o.bandwidth = kTwoPi * require_number(sec, section, "bandwidth_hz");
    }
    try {
        o.validate(section);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    return o;
}

SystemParams from_json(const json& root) {
    if (!root.is_object()) throw ConfigError("config: top level must be a table/object");
    for (auto it = root.begin(); it != root.end(); ++it) {
        const std::string& k = it.key();
        if (k != "mechanical_a" && k != "mechanical_b" && k != "optical_a" &&
            k != "optical_b" && k != "gravity" && k != "model") {
            throw ConfigError(k + ": unknown section");
        }
    }
    if (!root.contains("mechanical_a")) throw ConfigError("mechanical_a: missing section");
    if (!root.contains("optical_a")) throw ConfigError("optical_a: missing section");

    SystemParams sys;
    sys.cavity_a.mech = parse_mech(root["mechanical_a"], "mechanical_a");
    sys.cavity_a.opt = parse_opt(root["optical_a"], "optical_a");
    sys.cavity_b.mech = root.contains("mechanical_b")
                            ? parse_mech(root["mechanical_b"], "mechanical_b")
                            : sys.cavity_a.mech;
    sys.cavity_b.opt = root.contains("optical_b") ? parse_opt(root["optical_b"], "optical_b")
                                                  : sys.cavity_a.opt;
    if (root.contains("gravity")) {
        const json& g = root["gravity"];
        check_keys(g, "gravity", {"lambda_form"});
        sys.gravity.lambda_form = require_number(g, "gravity", "lambda_form");
    }
    if (root.contains("model")) {
        const json& m = root["model"];
        check_keys(m, "model", {"gravity_model", "sn_keep_thermal_cross"});
        if (m.contains("gravity_model")) {
            if (!m["gravity_model"].is_string()) {
                throw ConfigError("model.gravity_model: expected a string");
            }
            try {
                sys.model = gravity_model_from_string(m["gravity_model"].get<std::string>());
            } catch (const std::domain_error& e) {
                throw ConfigError(e.what());
            }
        }
        if (m.contains("sn_keep_thermal_cross")) {
            if (!m["sn_keep_thermal_cross"].is_boolean()) {
                throw ConfigError("model.sn_keep_thermal_cross: expected a boolean");
            }
            sys.sn_keep_thermal_cross = m["sn_keep_thermal_cross"].get<bool>();
        }
    }
    try {
        sys.validate();
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    return sys;
}

} // namespace

SystemParams parse_config_text(const std::string& text) {
    // Sniff: JSON starts with '{' after whitespace.
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') {
            json root;
            try {
                root = json::parse(text);
            } catch (const json::exception& e) {
                throw ConfigError(std::string("config: invalid JSON: ") + e.what());
            }
            return from_json(root);
        }
        break;
    }
    return from_json(toml_to_json(text));
}

SystemParams parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

nlohmann::json config_echo(const SystemParams& sys) {
    json j;
    auto mech = [](const MechanicalParams& m) {
        return json{{"omega_m_hz", m.omega_m / kTwoPi},
                    {"q_m", m.q_m},
                    {"mass_kg", m.mass},
                    {"density_kg_m3", m.density},
                    {"temperature_k", m.temperature}};
    };
    auto opt = [](const OpticalParams& o) {
        json s{{"power_w", o.power_cav},
               {"wavelength_m", o.wavelength},
               {"length_m", o.cavity_length}};
        if (o.bandwidth) {
            s["bandwidth_hz"] = *o.bandwidth / kTwoPi;
        } else if (o.finesse) {
            s["finesse"] = *o.finesse;
        }
        return s;
    };
    j["mechanical_a"] = mech(sys.cavity_a.mech);
    j["mechanical_b"] = mech(sys.cavity_b.mech);
    j["optical_a"] = opt(sys.cavity_a.opt);
    j["optical_b"] = opt(sys.cavity_b.opt);
    j["gravity"] = {{"lambda_form", sys.gravity.lambda_form}};
    j["model"] = {{"gravity_model", to_string(sys.model)},
                  {"sn_keep_thermal_cross", sys.sn_keep_thermal_cross}};
    return j;
}

void set_config_value(nlohmann::json& config, const std::string& dotted_key, double value) {
    const auto dot = dotted_key.find('.');
    if (dot == std::string::npos) {
        throw ConfigError("sweep key '" + dotted_key + "': expected section.key");
    }
    const std::string section = dotted_key.substr(0, dot);
    const std::string key = dotted_key.substr(dot + 1);
    if (!config.contains(section) || !config[section].is_object()) {
        throw ConfigError("sweep key '" + dotted_key + "': unknown section");
    }
    if (!config[section].contains(key)) {
        throw ConfigError("sweep key '" + dotted_key + "': unknown key");
    }
    if (!config[section][key].is_number()) {
        throw ConfigError("sweep key '" + dotted_key + "': not a numeric field");
    }
    config[section][key] = value;
}

SystemParams system_from_echo(const nlohmann::json& config) {
    return parse_config_text(config.dump());
}

} // namespace gravcorr
