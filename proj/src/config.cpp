#include "qxor/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "qxor/errors.hpp"

namespace qxor {

namespace {

constexpr std::array<const char *, 4> kEfficiencyKeys = {"e0_plus", "e1_plus", "e0_times", "e1_times"};

double parse_double(std::string_view text) {
    std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw UsageError("cannot parse number '" + s + "'");
    }
    if (used != s.size()) {
        throw UsageError("cannot parse number '" + s + "'");
    }
    return v;
}

}  // namespace

void QrngConfig::validate() const {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-12)) {
        throw UsageError("theta must lie in [0, pi/2]");
    }
    const auto e = efficiencies();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!(e[i] > 0.0 && e[i] <= 1.0)) {
            throw UsageError(std::string(kEfficiencyKeys[i]) + " must lie in (0, 1]");
        }
    }
    if (drift) {
        if (!(drift->period > 0.0)) {
            throw UsageError("drift period must be positive");
        }
        const double min_e = *std::min_element(e.begin(), e.end());
        for (double a : drift->amplitude) {
            if (!(a >= 0.0 && a < min_e)) {
                throw UsageError("drift amplitude must be non-negative and below the smallest efficiency");
            }
        }
    }
    if (!(dead_time_Td >= 0.0)) {
        throw UsageError("dead_time_Td must be >= 0");
    }
    if (!(mean_pair_interval > 0.0)) {
        throw UsageError("mean_pair_interval must be > 0");
    }
    if (!(double_count_prob >= 0.0 && double_count_prob <= 1.0)) {
        throw UsageError("double_count_prob must lie in [0, 1]");
    }
    if (demon_rho && !(*demon_rho > 0.0 && *demon_rho < 1.0)) {
        throw UsageError("demon_rho must lie in (0, 1)");
    }
}

QrngConfig QrngConfig::at_time(double t) const {
    if (!drift) {
        return *this;
    }
    QrngConfig out = *this;
    const double s = std::sin(2.0 * std::numbers::pi * t / drift->period);
    out.e0_plus += drift->amplitude[0] * s;
    out.e1_plus += drift->amplitude[1] * s;
    out.e0_times += drift->amplitude[2] * s;
    out.e1_times += drift->amplitude[3] * s;
    return out;
}

void to_json(nlohmann::json &j, const QrngConfig &cfg) {
    j = nlohmann::json{
        {"theta", cfg.theta},
        {"e0_plus", cfg.e0_plus},
        {"e1_plus", cfg.e1_plus},
        {"e0_times", cfg.e0_times},
        {"e1_times", cfg.e1_times},
        {"dead_time_Td", cfg.dead_time_Td},
        {"mean_pair_interval", cfg.mean_pair_interval},
        {"double_count_prob", cfg.double_count_prob},
    };
    if (cfg.drift) {
        j["drift"] = {{"amplitude", cfg.drift->amplitude}, {"period", cfg.drift->period}};
    } else {
        j["drift"] = nullptr;
    }
    if (cfg.demon_rho) {
        j["demon_rho"] = *cfg.demon_rho;
    } else {
        j["demon_rho"] = nullptr;
    }
}

void from_json(const nlohmann::json &j, QrngConfig &cfg) {
    if (!j.is_object()) {
        throw FormatError("config must be a JSON object");
    }
    static const std::array<const char *, 10> known = {
        "theta", "e0_plus", "e1_plus", "e0_times", "e1_times",
        "drift", "dead_time_Td", "mean_pair_interval", "double_count_prob", "demon_rho"};
    for (const auto &item : j.items()) {
        if (std::find_if(known.begin(), known.end(), [&](const char *k) { return item.key() == k; }) == known.end()) {
            throw FormatError("unknown config key '" + item.key() + "'");
        }
    }
    try {
        QrngConfig out;
        if (j.contains("theta")) {
            const auto &t = j.at("theta");
            out.theta = t.is_string() ? parse_angle(t.get<std::string>()) : t.get<double>();
        }
        out.e0_plus = j.value("e0_plus", out.e0_plus);
        out.e1_plus = j.value("e1_plus", out.e1_plus);
        out.e0_times = j.value("e0_times", out.e0_times);
        out.e1_times = j.value("e1_times", out.e1_times);
        out.dead_time_Td = j.value("dead_time_Td", out.dead_time_Td);
        out.mean_pair_interval = j.value("mean_pair_interval", out.mean_pair_interval);
        out.double_count_prob = j.value("double_count_prob", out.double_count_prob);
        if (j.contains("drift") && !j.at("drift").is_null()) {
            DriftSpec d;
            d.amplitude = j.at("drift").at("amplitude").get<std::array<double, 4>>();
            d.period = j.at("drift").at("period").get<double>();
            out.drift = d;
        }
        if (j.contains("demon_rho") && !j.at("demon_rho").is_null()) {
            out.demon_rho = j.at("demon_rho").get<double>();
        }
        cfg = out;
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("bad config value: ") + e.what());
    }
}

QrngConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open config file " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error &e) {
        throw FormatError("config file " + path + ": " + e.what());
    }
    QrngConfig cfg = j.get<QrngConfig>();
    cfg.validate();
    return cfg;
}

double parse_angle(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string::npos) {
        return parse_double(s);
    }
    std::string coeff = s.substr(0, pi_pos);
    std::string rest = s.substr(pi_pos + 2);
    if (!coeff.empty() && coeff.back() == '*') {
        coeff.pop_back();
    }
    double value = std::numbers::pi;
    if (!coeff.empty()) {
        value *= parse_double(coeff);
    }
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw UsageError("cannot parse angle '" + std::string(text) + "'");
        }
        const double den = parse_double(rest.substr(1));
        if (den == 0.0) {
            throw UsageError("angle denominator is zero");
        }
        value /= den;
    }
    return value;
}

}  // namespace qxor
