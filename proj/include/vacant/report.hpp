#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace vacant {

// Uniform record for every verified inequality or identity.
inline nlohmann::json check_record(const std::string& check, const nlohmann::json& inputs,
                                   double lhs, double rhs, bool pass) {
    return nlohmann::json{
        {"check", check}, {"inputs", inputs}, {"lhs", lhs}, {"rhs", rhs}, {"pass", pass}};
}

// ---------------------------------------------------------------------------
// Experiment configuration: one key=value pair per line, '#' comments.
// Keys: n, d, u, gamma, delta, seeds, replicas, variant (floor|ceil).

struct ExperimentConfig {
    int n = 0;
    int d = 3;
    double u = 1.0;
    std::optional<double> gamma;
    double delta = 0.25;
    std::vector<std::uint64_t> seeds;
    long replicas = 1000;
    std::string variant = "floor";
};

inline ExperimentConfig parse_experiment_config(std::istream& is) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("config error at line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        key = trim(key);
        val = trim(val);
        if (val.empty()) fail("empty value for key '" + key + "'");
        try {
            if (key == "n")
                cfg.n = std::stoi(val);
            else if (key == "d")
                cfg.d = std::stoi(val);
            else if (key == "u")
                cfg.u = std::stod(val);
            else if (key == "gamma")
                cfg.gamma = std::stod(val);
            else if (key == "delta")
                cfg.delta = std::stod(val);
            else if (key == "replicas")
                cfg.replicas = std::stol(val);
            else if (key == "variant") {
                if (val != "floor" && val != "ceil") fail("variant must be floor or ceil");
                cfg.variant = val;
            } else if (key == "seeds") {
                std::istringstream ss(val);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty()) cfg.seeds.push_back(std::stoull(tok));
                if (cfg.seeds.empty()) fail("seeds list is empty");
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            fail("cannot parse value '" + val + "' for key '" + key + "'");
        } catch (const std::out_of_range&) {
            fail("value out of range for key '" + key + "'");
        }
    }
    if (cfg.n <= 0) throw std::runtime_error("config error: key 'n' is required");
    if (cfg.seeds.empty()) cfg.seeds.push_back(1);
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    return parse_experiment_config(f);
}

}  // namespace vacant
