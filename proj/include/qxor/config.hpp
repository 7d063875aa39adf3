#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qxor {

// Sinusoidal efficiency drift: e(t) = e + amplitude * sin(2*pi*t / period).
// Amplitudes are ordered e0_plus, e1_plus, e0_times, e1_times.
struct DriftSpec {
    std::array<double, 4> amplitude{};
    double period = 1.0;
};

// Source parameterization. "plus" is the first measurement context and
// "times" the second, pi/4 apart in an ideal setup; theta is the actual
// relative analyzer angle.
struct QrngConfig {
    double theta = std::numbers::pi / 4;
    double e0_plus = 1.0;
    double e1_plus = 1.0;
    double e0_times = 1.0;
    double e1_times = 1.0;
    std::optional<DriftSpec> drift;
    double dead_time_Td = 0.0;
    double mean_pair_interval = 1e-6;
    double double_count_prob = 0.0;
    std::optional<double> demon_rho;

    // Throws UsageError when any invariant is broken.
    void validate() const;

    // Efficiencies with the drift model evaluated at time t (seconds).
    QrngConfig at_time(double t) const;

    std::array<double, 4> efficiencies() const { return {e0_plus, e1_plus, e0_times, e1_times}; }
    double efficiency_plus(bool bit) const { return bit ? e1_plus : e0_plus; }
    double efficiency_times(bool bit) const { return bit ? e1_times : e0_times; }
};

void to_json(nlohmann::json &j, const QrngConfig &cfg);
void from_json(const nlohmann::json &j, QrngConfig &cfg);

QrngConfig load_config(const std::string &path);

// Accepts decimals ("0.6283") and fractions of pi ("pi/5", "3pi/8", "3*pi/8", "pi").
double parse_angle(std::string_view text);

// One coincidence: arrival time and the two context outcomes.
struct PairRecord {
    double time = 0.0;
    bool outcome_plus = false;
    bool outcome_times = false;

    friend bool operator==(const PairRecord &, const PairRecord &) = default;
};

using PairStream = std::vector<PairRecord>;

}  // namespace qxor
