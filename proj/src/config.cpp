#include "qrep/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace qrep {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const double parsed = std::stod(value, &consumed);
        if (trim(value.substr(consumed)).empty()) return parsed;
    } catch (const std::exception&) {
    }
    throw config_error("key '" + key + "' expects a number, got '" + value + "'");
}

long long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const long long parsed = std::stoll(value, &consumed);
        if (trim(value.substr(consumed)).empty()) return parsed;
    } catch (const std::exception&) {
    }
    throw config_error("key '" + key + "' expects an integer, got '" + value + "'");
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value,
                          T (*parse_one)(const std::string&, const std::string&)) {
    std::vector<T> out;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw config_error("key '" + key + "' has an empty list entry in '" + value + "'");
        }
        out.push_back(parse_one(key, item));
    }
    if (out.empty()) {
        throw config_error("key '" + key + "' expects a non-empty list, got '" + value + "'");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    const long long v = parse_integer(key, value);
    if (v < -2147483647LL || v > 2147483647LL) {
        throw config_error("key '" + key + "' value out of range: " + value);
    }
    return static_cast<int>(v);
}

ProtocolKind parse_kind(const std::string& key, const std::string& value) {
    if (value == "standard") return ProtocolKind::standard;
    if (value == "innsbruck") return ProtocolKind::innsbruck;
    if (value == "blind") return ProtocolKind::blind;
    throw config_error("key '" + key +
                       "' expects standard|innsbruck|blind, got '" + value + "'");
}

// Shared 9-significant-digit quantization: CSV prints this string and JSON
// stores the double parsed back from it, so both formats carry identical
// values.
std::string format_value(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", v);
    return buffer;
}

double quantize(double v) { return std::stod(format_value(v)); }

template <typename T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        if constexpr (std::is_same_v<T, double>) {
            out += format_value(values[i]);
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

}  // namespace

NoiseModel RunConfig::noise_model() const {
    NoiseModel m{noise_p, noise_eta, noise_kappa};
    try {
        m.validate();
    } catch (const std::exception& e) {
        throw config_error(e.what());
    }
    return m;
}

TimeModel RunConfig::time_model() const {
    TimeModel tm{time_t0_s, time_segment_km};
    try {
        tm.validate();
    } catch (const std::exception& e) {
        throw config_error(e.what());
    }
    if (time_gate_s < 0.0) {
        throw config_error("time.gate_s must be >= 0");
    }
    return tm;
}

ProtocolSpec RunConfig::protocol_spec() const {
    ProtocolSpec spec;
    spec.kind = parse_kind("protocol.kind", protocol_kind);
    spec.levels = protocol_levels;
    if (protocol_steps.size() == 1 && protocol_levels > 1) {
        spec.steps_per_level.assign(protocol_levels, protocol_steps[0]);
    } else {
        spec.steps_per_level = protocol_steps;
    }
    spec.initial_f = protocol_initial_f;
    spec.blind_levels = spec.kind == ProtocolKind::blind ? protocol_blind_levels : 0;
    spec.branching = protocol_branching;
    spec.base = parse_kind("protocol.base", protocol_base);
    spec.forced_blind_step_prob = protocol_forced_blind_step_prob;
    try {
        spec.validate();
    } catch (const std::exception& e) {
        throw config_error(e.what());
    }
    return spec;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot read config file '" + path + "'");
    }
    std::map<std::string, std::string> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config file '" + path + "' line " +
                               std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw config_error("config file '" + path + "' line " +
                               std::to_string(line_no) + ": empty key or value");
        }
        entries[key] = value;
    }
    return entries;
}

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
    if (key == "noise.p") config.noise_p = parse_double(key, value);
    else if (key == "noise.eta") config.noise_eta = parse_double(key, value);
    else if (key == "noise.kappa") config.noise_kappa = parse_double(key, value);
    else if (key == "time.t0_s") config.time_t0_s = parse_double(key, value);
    else if (key == "time.segment_km") config.time_segment_km = parse_double(key, value);
    else if (key == "time.gate_s") config.time_gate_s = parse_double(key, value);
    else if (key == "protocol.kind") config.protocol_kind = value;
    else if (key == "protocol.levels") config.protocol_levels = parse_int(key, value);
    else if (key == "protocol.steps") config.protocol_steps = parse_list<int>(key, value, parse_int);
    else if (key == "protocol.initial_f") config.protocol_initial_f = parse_double(key, value);
    else if (key == "protocol.blind_levels") config.protocol_blind_levels = parse_int(key, value);
    else if (key == "protocol.branching") config.protocol_branching = parse_int(key, value);
    else if (key == "protocol.base") config.protocol_base = value;
    else if (key == "protocol.forced_blind_step_prob")
        config.protocol_forced_blind_step_prob = parse_double(key, value);
    else if (key == "regime.pump_f") config.regime_pump_f = parse_double(key, value);
    else if (key == "regime.max_level") config.regime_max_level = parse_int(key, value);
    else if (key == "sweep.error_rates")
        config.sweep_error_rates = parse_list<double>(key, value, parse_double);
    else if (key == "blind.M") config.blind_steps = parse_int(key, value);
    else if (key == "blind.L") config.blind_branching = parse_int(key, value);
    else if (key == "blind.m_max") config.blind_max_levels = parse_int(key, value);
    else if (key == "blind.p_sucs")
        config.blind_p_sucs = parse_list<double>(key, value, parse_double);
    else if (key == "oracle.trials") {
        const long long trials = parse_integer(key, value);
        if (trials < 1) throw config_error("oracle.trials must be >= 1");
        config.oracle_trials = static_cast<std::size_t>(trials);
    } else if (key == "seed") {
        const long long seed = parse_integer(key, value);
        if (seed < 0) throw config_error("seed must be >= 0");
        config.seed = static_cast<std::uint64_t>(seed);
    } else {
        throw config_error("unknown config key '" + key + "'");
    }
}

RunConfig make_config(const std::map<std::string, std::string>& file_entries,
                      const std::map<std::string, std::string>& overrides) {
    RunConfig config;
    for (const auto& [key, value] : file_entries) apply_config_entry(config, key, value);
    for (const auto& [key, value] : overrides) apply_config_entry(config, key, value);
    return config;
}

std::map<std::string, std::string> config_entries(const RunConfig& config) {
    std::map<std::string, std::string> out;
    out["noise.p"] = format_value(config.noise_p);
    out["noise.eta"] = format_value(config.noise_eta);
    out["noise.kappa"] = format_value(config.noise_kappa);
    out["time.t0_s"] = format_value(config.time_t0_s);
    out["time.segment_km"] = format_value(config.time_segment_km);
    out["time.gate_s"] = format_value(config.time_gate_s);
    out["protocol.kind"] = config.protocol_kind;
    out["protocol.levels"] = std::to_string(config.protocol_levels);
    out["protocol.steps"] = join(config.protocol_steps);
    out["protocol.initial_f"] = format_value(config.protocol_initial_f);
    out["protocol.blind_levels"] = std::to_string(config.protocol_blind_levels);
    out["protocol.branching"] = std::to_string(config.protocol_branching);
    out["protocol.base"] = config.protocol_base;
    out["protocol.forced_blind_step_prob"] =
        format_value(config.protocol_forced_blind_step_prob);
    out["regime.pump_f"] = format_value(config.regime_pump_f);
    out["regime.max_level"] = std::to_string(config.regime_max_level);
    out["sweep.error_rates"] = join(config.sweep_error_rates);
    out["blind.M"] = std::to_string(config.blind_steps);
    out["blind.L"] = std::to_string(config.blind_branching);
    out["blind.m_max"] = std::to_string(config.blind_max_levels);
    out["blind.p_sucs"] = join(config.blind_p_sucs);
    out["oracle.trials"] = std::to_string(config.oracle_trials);
    out["seed"] = std::to_string(config.seed);
    return out;
}

std::string to_csv(const OutputTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ",";
        out += table.columns[i];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("table row width does not match its header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += row[i] ? format_value(*row[i]) : "-";
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const OutputTable& table, const RunConfig& config) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, value] : config_entries(config)) params[key] = value;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("table row width does not match its header");
        }
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i]) {
                obj[table.columns[i]] = quantize(*row[i]);
            } else {
                obj[table.columns[i]] = nullptr;
            }
        }
        rows.push_back(std::move(obj));
    }
    const nlohmann::json doc{{"params", std::move(params)}, {"rows", std::move(rows)}};
    return doc.dump(2) + "\n";
}

OutputTable parse_csv(const std::string& text) {
    OutputTable table;
    std::stringstream stream(text);
    std::string line;
    bool header = true;
    while (std::getline(stream, line)) {
        line = trim(line);
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream row_stream(line);
        std::string cell;
        while (std::getline(row_stream, cell, ',')) cells.push_back(trim(cell));
        if (header) {
            table.columns = cells;
            header = false;
            continue;
        }
        std::vector<std::optional<double>> row;
        for (const auto& c : cells) {
            if (c == "-") {
                row.push_back(std::nullopt);
            } else {
                row.push_back(parse_double("csv cell", c));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace qrep
