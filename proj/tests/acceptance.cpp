// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qxor/bitstring.hpp"
#include "qxor/exact.hpp"
#include "qxor/extractors.hpp"
#include "qxor/rng.hpp"
#include "qxor/simulator.hpp"
#include "qxor/stats.hpp"
#include "test_support.hpp"

using namespace qxor;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            notes.push_back("FAILED " + what);
        }
    }
    void note(const std::string &text) { notes.push_back(text); }
};

std::string fmt(const char *f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char *f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char *f, double a, double b, double c) {
    char buf[192];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::array<std::uint64_t, 4> cell_counts(const PairStream &s) {
    std::array<std::uint64_t, 4> c{};
    for (const auto &r : s) {
        ++c[2 * r.outcome_plus + r.outcome_times];
    }
    return c;
}

std::array<double, 4> cell_probs(const QrngConfig &cfg) {
    return {pair_prob(false, false, cfg), pair_prob(false, true, cfg), pair_prob(true, false, cfg),
            pair_prob(true, true, cfg)};
}

// Reference configuration tables: output length 10, offsets 0..2.
Outcome distribution_values() {
    Outcome o;
    const auto cfg = testing::reference_config();
    struct Row {
        std::size_t j;
        std::uint64_t z;
        double expected;
    };
    const Row rows[] = {{0, 174, 5.90e-4}, {0, 487, 9.70e-4}, {0, 973, 1.64e-4},
                        {1, 174, 9.75e-4}, {1, 487, 9.71e-4}, {1, 973, 9.71e-4},
                        {2, 174, 9.78e-4}, {2, 487, 9.70e-4}, {2, 973, 9.70e-4}};
    std::vector<ExactDistribution> q;
    double j2_seconds = 0.0;
    for (std::size_t j = 0; j <= 2; ++j) {
        const auto start = std::chrono::steady_clock::now();
        q.push_back(exact_Q(10, j, cfg));
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (j == 2) {
            j2_seconds = s;
        }
    }
    for (const auto &r : rows) {
        const double got = q[r.j][r.z];
        const double rel = std::abs(got - r.expected) / r.expected;
        const std::string label = "Q(10," + std::to_string(r.j) + ")[" + std::to_string(r.z) + "]";
        o.note(label + fmt(" = %.6e (expected %.3e, rel %.4f)", got, r.expected, rel));
        o.check(rel <= 0.005, label + " within 0.5%");
    }
    o.note(fmt("j=2 enumeration %.2f s", j2_seconds));
    o.check(j2_seconds < 60.0, "j=2 enumeration under 60 s");
    return o;
}

Outcome distance_values() {
    Outcome o;
    const auto cfg = testing::reference_config();
    const auto u = ExactDistribution::uniform(10);
    const double expected[] = {0.770271, 0.00441399, 0.00440061};
    const double tol[] = {1e-5, 1e-6, 1e-6};
    for (std::size_t j = 0; j <= 2; ++j) {
        const auto q = exact_Q(10, j, cfg);
        const double tv = tv_distance(q, u);
        const double l1 = l1_distance(q, u);
        o.note("j=" + std::to_string(j) + fmt(": tv %.9g, l1 %.9g, expected %.9g", tv, l1, expected[j]));
        o.check(std::abs(tv - expected[j]) <= tol[j], "tv j=" + std::to_string(j));
    }
    return o;
}

Outcome closed_form_equivalence() {
    Outcome o;
    CounterRng rng(301);
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
        const auto cfg = testing::random_config(rng);
        for (std::size_t n = 1; n <= 10; ++n) {
            const auto a = exact_Q(n, 0, cfg);
            const auto b = closed_form_Q0(n, cfg);
            for (std::size_t z = 0; z < a.mass().size(); ++z) {
                worst = std::max(worst, std::abs(a[z] - b[z]));
            }
        }
    }
    o.note(fmt("closed form vs enumeration max |diff| %.3g", worst));
    o.check(worst <= 1e-12, "closed form equivalence");

    double worst_uniform = 0.0;
    for (const double theta : {0.0, kPi / 7, kPi / 5, kPi / 4, 1.3, kPi / 2}) {
        for (const double e : {0.05, 0.3, 1.0}) {
            const auto cfg = testing::equal_config(theta, e);
            for (std::size_t n = 1; n <= 10; ++n) {
                for (std::size_t j = 1; n + j <= kDefaultEnumerationCap && j <= 3; ++j) {
                    const auto q = exact_Q(n, j, cfg);
                    const double u = std::ldexp(1.0, -static_cast<int>(n));
                    for (double m : q.mass()) {
                        worst_uniform = std::max(worst_uniform, std::abs(m - u));
                    }
                }
            }
        }
    }
    o.note(fmt("equal efficiencies, j>=1: max |Q - 2^-n| %.3g", worst_uniform));
    o.check(worst_uniform <= 1e-12, "uniformity for j >= 1");
    return o;
}

Outcome independence() {
    Outcome o;
    CounterRng rng(404);
    double worst = 0.0;
    for (int c = 0; c < 10; ++c) {
        const auto cfg = testing::random_config(rng);
        for (std::size_t n = 1; n <= 6; ++n) {
            const auto pairs = exact_P(n, cfg);
            for (std::size_t k = 1; k <= n; ++k) {
                for (std::uint64_t xv = 0; xv < (std::uint64_t{1} << k); ++xv) {
                    for (std::uint64_t yv = 0; yv < (std::uint64_t{1} << k); ++yv) {
                        const auto x = BitString::from_uint(xv, k);
                        const auto y = BitString::from_uint(yv, k);
                        const double whole = cylinder_probability(pairs, 0, x, y);
                        const double head = cylinder_probability(pairs, 0, x.slice(0, k - 1), y.slice(0, k - 1));
                        const double last = cylinder_probability(pairs, k - 1, x.slice(k - 1, 1), y.slice(k - 1, 1));
                        worst = std::max(worst, std::abs(whole - head * last));
                    }
                }
            }
        }
    }
    o.note(fmt("max |P(prefix k) - P(prefix k-1) P(position k)| %.3g", worst));
    o.check(worst <= 1e-12, "independence");
    return o;
}

Outcome expectation_curves() {
    Outcome o;
    o.check(expectation_xor_quantum(0.0) == 1.0, "E_quantum(0) = 1");
    o.check(expectation_xor_quantum(kPi / 4) == 0.5, "E_quantum(pi/4) = 1/2");
    o.check(expectation_xor_quantum(kPi / 2) == 0.0, "E_quantum(pi/2) = 0");
    o.check(expectation_xor_classical(0.0) == 1.0, "E_classical(0) = 1");
    o.check(expectation_xor_classical(kPi / 4) == 0.5, "E_classical(pi/4) = 1/2");
    o.check(expectation_xor_classical(kPi / 2) == 0.0, "E_classical(pi/2) = 0");

    std::vector<int> agree;
    for (int i = 0; i <= 1000; ++i) {
        const double theta = (kPi / 2) * i / 1000.0;
        if (expectation_xor_quantum(theta) == expectation_xor_classical(theta)) {
            agree.push_back(i);
        }
    }
    std::string where;
    for (int i : agree) {
        where += (where.empty() ? "" : ",") + std::to_string(i);
    }
    o.note("curves agree at grid points {" + where + "}");
    o.check(agree == std::vector<int>{0, 500, 1000}, "agreement only at 0, pi/4, pi/2");

    const double d = 1e-4;
    const auto gap = taylor_gap(d);
    const double ratio = gap.quantum / gap.classical;
    const double h = 1e-5;
    const double dq = (expectation_xor_quantum(kPi / 4 + h) - expectation_xor_quantum(kPi / 4 - h)) / (2 * h);
    const double dc = (expectation_xor_classical(kPi / 4 + h) - expectation_xor_classical(kPi / 4 - h)) / (2 * h);
    o.note(fmt("first-order ratio %.12f, slope ratio %.12f, pi/2 = %.12f", ratio, dq / dc, kPi / 2));
    o.check(std::abs(ratio - kPi / 2) <= 1e-9, "first-order gap ratio");
    o.check(std::abs(dq / dc - kPi / 2) <= 1e-9, "slope ratio at pi/4");
    return o;
}

Outcome simulator_fidelity() {
    Outcome o;
    const auto cfg = testing::reference_config();
    const auto weighted = sample_pairs(1000000, cfg, 601);
    const auto p1 = chi2_goodness_of_fit(cell_counts(weighted.records), cell_probs(cfg));
    const auto physical = sample_pairs_physical(1000000, cfg, 602);
    const auto p2 = chi2_goodness_of_fit(cell_counts(physical.records), cell_probs(cfg));
    o.note(fmt("weighted p = %.4g, physical p = %.4g (kept %.0f)", *p1.p_value, *p2.p_value,
               static_cast<double>(physical.records.size())));
    o.check(*p1.p_value > 0.001, "weighted sampler chi-square");
    o.check(*p2.p_value > 0.001, "physical sampler chi-square");
    return o;
}

Outcome extractor_laws() {
    Outcome o;
    CounterRng rng(701);
    const std::size_t n = 1000000;
    const auto biased = testing::random_bits(rng, n, 0.7);
    const auto vn = von_neumann(biased);
    const auto bias = estimate_bias(vn.bits);
    const double q = 2 * 0.7 * 0.3;
    const double vn_yield = static_cast<double>(vn.bits.size()) / n;
    const double vn_sigma = std::sqrt(n / 2.0 * q * (1 - q)) / n;
    o.note(fmt("von Neumann: p1 = %.5f (sigma %.5f), yield %.5f", bias.p1, bias.standard_error, vn_yield));
    o.check(std::abs(bias.p1 - 0.5) <= 3 * bias.standard_error, "von Neumann unbiased");
    o.check(std::abs(vn_yield - 0.21) <= 3 * vn_sigma, "von Neumann yield");

    const auto x = testing::random_bits(rng, n);
    const auto y = testing::random_bits(rng, n);
    const double pvn_yield = static_cast<double>(pair_von_neumann(x, y).bits.size()) / n;
    const double pvn_sigma = std::sqrt(n / 2.0 * 0.75 * 0.25) / n;
    o.note(fmt("pair von Neumann yield %.5f (sigma %.5f)", pvn_yield, pvn_sigma));
    o.check(std::abs(pvn_yield - 0.375) <= 3 * pvn_sigma, "pair von Neumann yield");

    std::vector<QrngConfig> configs = {testing::reference_config()};
    for (int i = 0; i < 20; ++i) {
        configs.push_back(testing::random_config(rng));
    }
    double worst = 0.0;
    for (const auto &cfg : configs) {
        double zero = 0.0;
        double one = 0.0;
        for (int c = 0; c < 16; ++c) {
            const bool a1 = c & 8, b1 = c & 4, a2 = c & 2, b2 = c & 1;
            const double p = pair_prob(a1, b1, cfg) * pair_prob(a2, b2, cfg);
            const auto out = pair_von_neumann(BitString::from_uint(2 * a1 + a2, 2), BitString::from_uint(2 * b1 + b2, 2));
            if (out.bits.size() == 1) {
                (out.bits[0] ? one : zero) += p;
            }
        }
        worst = std::max(worst, std::abs(zero - one));
    }
    o.note(fmt("pair von Neumann one-pair law max |P(0) - P(1)| %.3g", worst));
    o.check(worst <= 1e-14, "pair von Neumann balance");
    return o;
}

Outcome xor_transport() {
    Outcome o;
    const auto cfg = testing::reference_config();
    const std::size_t n = 10, samples = 1000000;
    const auto u = ExactDistribution::uniform(n);
    double tv_hat[2] = {0.0, 0.0};
    for (std::size_t j = 0; j <= 1; ++j) {
        const auto r = sample_pairs(samples * (n + j), cfg, 800 + j);
        std::vector<std::uint64_t> counts(std::size_t{1} << n);
        for (std::size_t s = 0; s < samples; ++s) {
            std::uint64_t z = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto &a = r.records[s * (n + j) + i];
                const auto &b = r.records[s * (n + j) + i + j];
                z = (z << 1) | static_cast<std::uint64_t>(a.outcome_plus != b.outcome_times);
            }
            ++counts[z];
        }
        const auto q = exact_Q(n, j, cfg);
        const auto fit = chi2_goodness_of_fit(counts, q.mass());
        tv_hat[j] = tv_distance(empirical_distribution(counts, n), u);
        o.note("j=" + std::to_string(j) + fmt(": chi-square p = %.4g, empirical tv %.5f", *fit.p_value, tv_hat[j]));
        o.check(*fit.p_value > 0.001, "chi-square j=" + std::to_string(j));
    }
    o.check(tv_hat[1] < tv_hat[0], "empirical tv ordering");
    return o;
}

Outcome demon_construction() {
    Outcome o;
    CounterRng rng(901);
    const std::size_t n = 1000000;
    const auto d = demon_filter(testing::random_bits(rng, n), 0.5);
    bool zeros = d.period == 2;
    for (std::size_t i = 1; i < d.bits.size(); i += 2) {
        zeros = zeros && !d.bits[i];
    }
    const double rejected = static_cast<double>(d.rejected) / n;
    o.note(fmt("period %.0f, rejected fraction %.5f", static_cast<double>(d.period), rejected));
    o.check(zeros, "every 2nd output bit is 0");
    o.check(rejected >= 0.30 && rejected <= 0.37, "rejected fraction in [0.30, 0.37]");
    return o;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "qxor_acceptance_determinism";
    const std::string dir = root.string();
    const char *files[] = {"stream.ndjson", "plus.bits", "times.bits", "xor.bits", "summary.json", "manifest.json",
                           "report/analysis.csv", "report/report.json", "peres.bits", "peres.bits.json"};
    std::vector<std::string> first;
    for (int pass = 0; pass < 2; ++pass) {
        fs::remove_all(root);
        std::ostringstream out, err;
        const int c1 = cli::run({"simulate", "--pairs", "200000", "--theta", "pi/5", "--e", "0.30,0.33,0.29,0.30",
                                 "--seed", "1234", "--double-count", "0.01", "--dead-time", "1e-8", "--out-dir", dir},
                                out, err);
        const int c2 = cli::run({"analyze", "--in", dir + "/plus.bits", "--in2", dir + "/times.bits", "--out-dir",
                                 dir + "/report"},
                                out, err);
        const int c3 = cli::run({"extract", "--method", "peres", "--in", dir + "/xor.bits", "--out", dir + "/peres.bits"},
                                out, err);
        o.check(c1 == 0 && c2 == 0 && c3 == 0, "cli runs succeed (pass " + std::to_string(pass + 1) + ")");
        for (std::size_t i = 0; i < std::size(files); ++i) {
            const std::string bytes = slurp(root / files[i]);
            if (pass == 0) {
                o.check(!bytes.empty(), std::string("non-empty ") + files[i]);
                first.push_back(bytes);
            } else {
                o.check(bytes == first[i], std::string("identical ") + files[i]);
            }
        }
    }
    o.note("compared " + std::to_string(std::size(files)) + " files across two runs");
    fs::remove_all(root);
    return o;
}

}  // namespace

int main() {
    const std::pair<const char *, std::function<Outcome()>> criteria[] = {
        {"distribution values at n=10, j=0..2", distribution_values},
        {"distance to uniform at n=10, j=0..2", distance_values},
        {"closed form and equal-efficiency uniformity", closed_form_equivalence},
        {"independence of the pair law", independence},
        {"expectation curves", expectation_curves},
        {"simulator fidelity", simulator_fidelity},
        {"extractor laws", extractor_laws},
        {"XOR transport", xor_transport},
        {"demon construction", demon_construction},
        {"determinism", determinism},
    };
    int failed = 0;
    int id = 1;
    for (const auto &[name, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %2d: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, s);
        for (const auto &n : o.notes) {
            std::printf("      %s\n", n.c_str());
        }
        failed += o.pass ? 0 : 1;
        ++id;
    }
    std::printf("%d of %d criteria passed\n", id - 1 - failed, id - 1);
    return failed == 0 ? 0 : 1;
}
