#include "cli_config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "heatback/errors.hpp"
#include "heatback/forward_solver.hpp"

namespace heatback::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw DomainError("config: bad number for '" + key + "': " + text);
    }
}

int parse_int(const std::string& key, const std::string& text) {
    try {
        size_t pos = 0;
        const int v = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw DomainError("config: bad integer for '" + key + "': " + text);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
    try {
        size_t pos = 0;
        const unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw DomainError("config: bad seed for '" + key + "': " + text);
    }
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw DomainError("config: bad boolean for '" + key + "': " + text);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ProblemConfig CliConfig::problem() const {
    ProblemConfig cfg;
    cfg.x0 = x0;
    cfg.t0 = t0;
    cfg.m = m;
    cfg.r1 = r1;
    cfg.n_modes = n_modes > 0 ? n_modes : forward::default_mode_count(TimeGrid(t0, m));
    cfg.validate();
    return cfg;
}

void apply_overrides(CliConfig& cfg, const CliOverrides& o) {
    if (o.x0) cfg.x0 = *o.x0;
    if (o.t0) cfg.t0 = *o.t0;
    if (o.m) cfg.m = *o.m;
    if (o.n_modes) cfg.n_modes = *o.n_modes;
    if (o.r1) cfg.r1 = *o.r1;
    if (o.profile) cfg.profile = *o.profile;
    if (o.scale_to_r1_fraction) cfg.scale_to_r1_fraction = *o.scale_to_r1_fraction;
    if (o.deltas) cfg.deltas = *o.deltas;
    if (o.seeds) cfg.seeds = *o.seeds;
    if (o.oracle_forward) cfg.oracle_forward = *o.oracle_forward;
}

CliConfig parse_key_value(const std::string& text) {
    CliConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config: line " + std::to_string(line_no) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw DomainError("config: empty key or value on line " + std::to_string(line_no));

        if (key == "x0") {
            cfg.x0 = parse_double(key, value);
        } else if (key == "t0") {
            cfg.t0 = parse_double(key, value);
        } else if (key == "m") {
            cfg.m = parse_int(key, value);
        } else if (key == "n_modes") {
            cfg.n_modes = parse_int(key, value);
        } else if (key == "r1") {
            cfg.r1 = parse_double(key, value);
        } else if (key == "profile") {
            cfg.profile = value;
        } else if (key == "scale_to_r1_fraction") {
            cfg.scale_to_r1_fraction = parse_double(key, value);
        } else if (key == "deltas") {
            cfg.deltas.clear();
            for (const std::string& item : split_list(value))
                cfg.deltas.push_back(parse_double(key, item));
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (const std::string& item : split_list(value))
                cfg.seeds.push_back(parse_u64(key, item));
        } else if (key == "oracle_forward") {
            cfg.oracle_forward = parse_bool(key, value);
        } else {
            throw DomainError("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

std::string to_key_value(const CliConfig& cfg) {
    std::ostringstream out;
    out << "x0 = " << format_double(cfg.x0) << '\n';
    out << "t0 = " << format_double(cfg.t0) << '\n';
    out << "m = " << cfg.m << '\n';
    out << "n_modes = " << cfg.n_modes << '\n';
    out << "r1 = " << format_double(cfg.r1) << '\n';
    out << "profile = " << cfg.profile << '\n';
    out << "scale_to_r1_fraction = " << format_double(cfg.scale_to_r1_fraction) << '\n';
    out << "deltas = ";
    for (size_t i = 0; i < cfg.deltas.size(); ++i)
        out << (i ? ", " : "") << format_double(cfg.deltas[i]);
    out << '\n';
    out << "seeds = ";
    for (size_t i = 0; i < cfg.seeds.size(); ++i) out << (i ? ", " : "") << cfg.seeds[i];
    out << '\n';
    out << "oracle_forward = " << (cfg.oracle_forward ? "true" : "false") << '\n';
    return out.str();
}

CliConfig parse_json_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("config: JSON root must be an object");

    CliConfig cfg;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "x0") {
                cfg.x0 = value.get<double>();
            } else if (key == "t0") {
                cfg.t0 = value.get<double>();
            } else if (key == "m") {
                cfg.m = value.get<int>();
            } else if (key == "n_modes") {
                cfg.n_modes = value.get<int>();
            } else if (key == "r1") {
                cfg.r1 = value.get<double>();
            } else if (key == "profile") {
                cfg.profile = value.get<std::string>();
            } else if (key == "scale_to_r1_fraction") {
                cfg.scale_to_r1_fraction = value.get<double>();
            } else if (key == "deltas") {
                cfg.deltas = value.get<std::vector<double>>();
            } else if (key == "seeds") {
                cfg.seeds = value.get<std::vector<std::uint64_t>>();
            } else if (key == "oracle_forward") {
                cfg.oracle_forward = value.get<bool>();
            } else {
                throw DomainError("config: unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("config: wrong JSON value type: ") + e.what());
    }
    return cfg;
}

std::string to_json_config(const CliConfig& cfg) {
    nlohmann::json j;
    j["x0"] = cfg.x0;
    j["t0"] = cfg.t0;
    j["m"] = cfg.m;
    j["n_modes"] = cfg.n_modes;
    j["r1"] = cfg.r1;
    j["profile"] = cfg.profile;
    j["scale_to_r1_fraction"] = cfg.scale_to_r1_fraction;
    j["deltas"] = cfg.deltas;
    j["seeds"] = cfg.seeds;
    j["oracle_forward"] = cfg.oracle_forward;
    return j.dump(2) + "\n";
}

CliConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (std::filesystem::path(path).extension() == ".json")
        return parse_json_config(buf.str());
    return parse_key_value(buf.str());
}

}  // namespace heatback::cli
