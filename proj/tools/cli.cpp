#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qxor/bitio.hpp"
#include "qxor/config.hpp"
#include "qxor/errors.hpp"
#include "qxor/exact.hpp"
#include "qxor/extractors.hpp"
#include "qxor/simulator.hpp"
#include "qxor/stats.hpp"

namespace qxor::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::size_t kChunkBits = std::size_t{1} << 16;

// Writes through a temporary file in the same directory, then renames.
void write_atomic(const fs::path &path, const std::function<void(std::ostream &)> &body) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw FormatError("cannot write " + tmp.string());
        }
        body(out);
        out.flush();
        if (!out) {
            throw FormatError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

void write_json(const fs::path &path, const json &j) {
    write_atomic(path, [&](std::ostream &out) { out << j.dump(2) << '\n'; });
}

std::string format_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t parse_count(const std::string &text, const char *what) {
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
    } catch (const std::exception &) {
        throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
    }
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) {
        throw UsageError(std::string(what) + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> parse_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_angle(item));
    }
    return out;
}

// Flags shared by every command that needs a source configuration.
struct ConfigFlags {
    std::string config_file;
    std::string theta;
    std::string efficiencies;
    bool equal_e = false;
    std::string drift_amplitude;
    double drift_period = 0.0;
    std::optional<double> dead_time;
    std::optional<double> interval;
    std::optional<double> double_count;
    std::optional<double> demon;

    void attach(CLI::App *app) {
        app->add_option("--config", config_file, "JSON config file with QrngConfig fields");
        app->add_option("--theta", theta, "analyzer angle, e.g. 0.6 or pi/5");
        app->add_option("--e", efficiencies, "efficiencies e0_plus,e1_plus,e0_times,e1_times");
        app->add_flag("--equal-e", equal_e, "set all four efficiencies to 1");
        app->add_option("--drift-amplitude", drift_amplitude, "drift amplitudes (four values, efficiency units)");
        app->add_option("--drift-period", drift_period, "drift period in seconds");
        app->add_option("--dead-time", dead_time, "dead time T_d in seconds");
        app->add_option("--interval", interval, "mean pair interval in seconds");
        app->add_option("--double-count", double_count, "double counting probability");
        app->add_option("--demon", demon, "fair-sampling demon efficiency bound rho");
    }

    QrngConfig resolve() const {
        QrngConfig cfg = config_file.empty() ? QrngConfig{} : load_config(config_file);
        if (!theta.empty()) {
            cfg.theta = parse_angle(theta);
        }
        if (equal_e && !efficiencies.empty()) {
            throw UsageError("--equal-e and --e are mutually exclusive");
        }
        if (equal_e) {
            cfg.e0_plus = cfg.e1_plus = cfg.e0_times = cfg.e1_times = 1.0;
        }
        if (!efficiencies.empty()) {
            const auto e = parse_list(efficiencies);
            if (e.size() != 4) {
                throw UsageError("--e needs exactly four values");
            }
            cfg.e0_plus = e[0];
            cfg.e1_plus = e[1];
            cfg.e0_times = e[2];
            cfg.e1_times = e[3];
        }
        if (!drift_amplitude.empty()) {
            const auto a = parse_list(drift_amplitude);
            if (a.size() != 4) {
                throw UsageError("--drift-amplitude needs exactly four values");
            }
            DriftSpec d;
            std::copy(a.begin(), a.end(), d.amplitude.begin());
            d.period = drift_period > 0.0 ? drift_period : (cfg.drift ? cfg.drift->period : 1.0);
            cfg.drift = d;
        } else if (drift_period > 0.0) {
            if (!cfg.drift) {
                throw UsageError("--drift-period needs --drift-amplitude or a config drift");
            }
            cfg.drift->period = drift_period;
        }
        if (dead_time) {
            cfg.dead_time_Td = *dead_time;
        }
        if (interval) {
            cfg.mean_pair_interval = *interval;
        }
        if (double_count) {
            cfg.double_count_prob = *double_count;
        }
        if (demon) {
            cfg.demon_rho = *demon;
        }
        cfg.validate();
        return cfg;
    }
};

json manifest(const std::string &command, const std::vector<std::string> &argv, const json &effective) {
    return json{{"tool", "qxor"}, {"command", command}, {"argv", argv}, {"effective", effective}};
}

// Returns argv with an explicit --seed appended when the caller relied on
// the default.
std::vector<std::string> with_seed(std::vector<std::string> argv, std::uint64_t seed) {
    if (std::find(argv.begin(), argv.end(), "--seed") == argv.end()) {
        argv.push_back("--seed");
        argv.push_back(std::to_string(seed));
    }
    return argv;
}

// ---------------------------------------------------------------- exact

struct ExactArgs {
    ConfigFlags config;
    std::size_t n = 0;
    std::size_t j = 0;
    std::size_t cap = kDefaultEnumerationCap;
    std::string out_dir = ".";
    bool tv = false;
};

int cmd_exact(const ExactArgs &a, const std::vector<std::string> &argv, std::ostream &out) {
    const QrngConfig cfg = a.config.resolve();
    const auto start = std::chrono::steady_clock::now();
    const ExactDistribution q = exact_Q(a.n, a.j, cfg, a.cap);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto uniform = ExactDistribution::uniform(a.n);
    const double tv = tv_distance(q, uniform);
    const double l1 = l1_distance(q, uniform);

    const fs::path dir(a.out_dir);
    const std::string stem = "Q_n" + std::to_string(a.n) + "_j" + std::to_string(a.j);
    write_atomic(dir / (stem + ".csv"), [&](std::ostream &o) { write_distribution_csv(o, q); });
    write_atomic(dir / (stem + "_deviation.csv"), [&](std::ostream &o) { write_deviation_csv(o, q); });
    write_json(dir / (stem + "_tv.json"), json{{"n", a.n}, {"j", a.j}, {"config", cfg}, {"tv", tv}, {"l1", l1}});
    write_json(dir / "manifest.json",
               manifest("exact", argv, {{"n", a.n}, {"j", a.j}, {"cap", a.cap}, {"config", cfg}}));

    out << "exact: n=" << a.n << " j=" << a.j << " strings=" << q.mass().size() << " enumeration_seconds="
        << seconds << '\n';
    if (a.tv) {
        out << "tv=" << format_g(tv) << " l1=" << format_g(l1) << '\n';
    }
    return 0;
}

// ------------------------------------------------------------- simulate

struct SimulateArgs {
    ConfigFlags config;
    std::string pairs = "1000";
    std::uint64_t seed = kDefaultSeed;
    bool physical = false;
    bool no_stream = false;
    std::string out_dir = ".";
    std::string format = "ascii";
};

int cmd_simulate(const SimulateArgs &a, const std::vector<std::string> &argv, std::ostream &out) {
    const QrngConfig cfg = a.config.resolve();
    const std::size_t n = parse_count(a.pairs, "--pairs");
    if (n == 0) {
        throw UsageError("--pairs must be >= 1");
    }
    const BitFormat fmt = parse_bit_format(a.format);
    if (fmt == BitFormat::automatic) {
        throw UsageError("output format must be ascii or packed");
    }
    const SimulationResult r = simulate(n, cfg, a.seed, a.physical);

    const fs::path dir(a.out_dir);
    if (!a.no_stream) {
        write_atomic(dir / "stream.ndjson", [&](std::ostream &o) { write_stream_ndjson(o, r.records); });
    }
    write_atomic(dir / "plus.bits", [&](std::ostream &o) { write_bits(o, plus_bits(r.records), fmt); });
    write_atomic(dir / "times.bits", [&](std::ostream &o) { write_bits(o, times_bits(r.records), fmt); });
    write_atomic(dir / "xor.bits", [&](std::ostream &o) { write_bits(o, xor_bits(r.records), fmt); });
    const json summary{{"generated", r.generated},
                       {"kept", r.records.size()},
                       {"dropped_loss", r.dropped_loss},
                       {"dropped_dead_time", r.dropped_dead_time},
                       {"dropped_demon", r.dropped_demon},
                       {"seed", r.seed},
                       {"mode", a.physical ? "physical" : "weighted"},
                       {"config", cfg}};
    write_json(dir / "summary.json", summary);
    write_json(dir / "manifest.json",
               manifest("simulate", with_seed(argv, a.seed),
                        {{"pairs", n}, {"seed", a.seed}, {"physical", a.physical}, {"format", a.format},
                         {"config", cfg}}));
    out << "simulate: kept " << r.records.size() << " of " << r.generated << " pairs (seed " << a.seed << ")\n";
    return 0;
}

// -------------------------------------------------------------- extract

struct ExtractArgs {
    std::string method;
    std::string in;
    std::string in2;
    std::size_t j = 0;
    std::size_t depth = 4;
    std::size_t block = 65536;
    std::string format = "auto";
    std::string out_format = "ascii";
    std::string out;
    std::string summary;
};

int cmd_extract(const ExtractArgs &a, const std::vector<std::string> &argv, std::ostream &out) {
    const BitFormat in_fmt = parse_bit_format(a.format);
    const BitFormat out_fmt = parse_bit_format(a.out_format);
    if (out_fmt == BitFormat::automatic) {
        throw UsageError("output format must be ascii or packed");
    }
    const bool two_inputs = a.method == "xor" || a.method == "pair-vn";
    if (a.method != "vn" && a.method != "peres" && !two_inputs) {
        throw UsageError("unknown method '" + a.method + "' (vn, peres, pair-vn, xor)");
    }
    if (two_inputs == a.in2.empty()) {
        throw UsageError(two_inputs ? "method needs --in2" : "method takes a single input");
    }

    std::ifstream f1(a.in, std::ios::binary);
    if (!f1) {
        throw FormatError("cannot open " + a.in);
    }
    BitReader r1(f1, in_fmt);
    std::ifstream f2;
    std::optional<BitReader> r2;
    if (two_inputs) {
        f2.open(a.in2, std::ios::binary);
        if (!f2) {
            throw FormatError("cannot open " + a.in2);
        }
        r2.emplace(f2, in_fmt);
    }

    BitString result;
    StreamCounts counts;
    json params = json::object();
    auto next_pair = [&](BitString &x, BitString &y) {
        x = r1.next(kChunkBits);
        y = r2->next(kChunkBits);
        if (x.size() != y.size()) {
            throw FormatError("input streams differ in length");
        }
        return !x.empty();
    };
    if (a.method == "vn") {
        VonNeumannStream s;
        for (BitString x = r1.next(kChunkBits); !x.empty(); x = r1.next(kChunkBits)) {
            result.append(s.feed(x));
        }
        result.append(s.finish());
        counts = s.counts();
    } else if (a.method == "peres") {
        PeresStream s(a.depth, a.block);
        for (BitString x = r1.next(kChunkBits); !x.empty(); x = r1.next(kChunkBits)) {
            result.append(s.feed(x));
        }
        result.append(s.finish());
        counts = s.counts();
        params = {{"depth", a.depth}, {"block", a.block}};
    } else if (a.method == "pair-vn") {
        PairVonNeumannStream s;
        BitString x, y;
        while (next_pair(x, y)) {
            result.append(s.feed(x, y));
        }
        result.append(s.finish());
        counts = s.counts();
    } else {
        XorOffsetStream s(a.j);
        BitString x, y;
        while (next_pair(x, y)) {
            result.append(s.feed(x, y));
        }
        counts = s.counts();
        if (counts.consumed <= a.j) {
            throw UsageError("xor offset must be smaller than the input length");
        }
        params = {{"j", a.j}};
    }

    const fs::path out_path = a.out.empty() ? fs::path("extracted.bits") : fs::path(a.out);
    const fs::path summary_path = a.summary.empty() ? fs::path(out_path.string() + ".json") : fs::path(a.summary);
    write_atomic(out_path, [&](std::ostream &o) { write_bits(o, result, out_fmt); });
    const json summary{{"in", counts.consumed},
                       {"out", result.size()},
                       {"discarded", counts.discarded},
                       {"method", a.method},
                       {"params", params}};
    write_json(summary_path, summary);
    write_json(out_path.parent_path() / (out_path.stem().string() + "_manifest.json"),
               manifest("extract", argv, summary));
    const double yield = counts.consumed ? static_cast<double>(result.size()) / static_cast<double>(counts.consumed) : 0.0;
    out << "extract: method=" << a.method << " in=" << counts.consumed << " out=" << result.size()
        << " yield=" << yield << '\n';
    return 0;
}

// -------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string in;
    std::string in2;
    std::size_t k_max = 5;
    double alpha = kDefaultAlpha;
    std::string format = "auto";
    std::string out_dir = ".";
};

int cmd_analyze(const AnalyzeArgs &a, const std::vector<std::string> &argv, std::ostream &out) {
    if (a.k_max < 1 || a.k_max > 8) {
        throw UsageError("--k-max must lie in 1..8");
    }
    const BitFormat fmt = parse_bit_format(a.format);
    const BitString bits = read_bits_file(a.in, fmt);

    json report{{"input", a.in}, {"bits", bits.size()}, {"alpha", a.alpha}};
    std::vector<std::string> chi_row;
    json chi = json::array();
    for (std::size_t k = 1; k <= a.k_max; ++k) {
        if (bits.size() < 100 * (std::size_t{1} << k)) {
            chi.push_back(nullptr);
            chi_row.push_back("");
            continue;
        }
        const auto r = chi2_uniformity(bits, k, a.alpha);
        chi.push_back(r);
        chi_row.push_back(format_g(*r.p_value));
    }
    report["chi2_uniformity"] = chi;

    std::vector<std::string> borel_row(a.k_max);
    if (bits.size() >= 64) {
        const auto borel = borel_normality(bits);
        report["borel_normality"] = borel;
        for (const auto &r : borel) {
            if (r.k <= a.k_max) {
                borel_row[r.k - 1] = r.pass ? "pass" : "fail";
            }
        }
    }

    const auto bias = estimate_bias(bits);
    report["bias"] = {{"p1", bias.p1}, {"standard_error", bias.standard_error}};

    if (!a.in2.empty()) {
        const BitString other = read_bits_file(a.in2, fmt);
        if (other.size() != bits.size()) {
            throw FormatError("paired inputs differ in length");
        }
        json pair{{"correlation", correlation_estimate(bits, other)}, {"exor_rate", exor_rate(bits, other, 0)}};
        if (bits.size() >= 10000) {
            const auto t = estimate_theta(bits, other);
            pair["theta"] = {{"estimate", t.theta},
                             {"standard_error", t.standard_error},
                             {"rate", t.rate},
                             {"degenerate", t.degenerate}};
            out << "theta_hat=" << format_g(t.theta) << " stderr=" << format_g(t.standard_error)
                << (t.degenerate ? " (degenerate rate)" : "") << '\n';
        }
        report["pair"] = pair;
    }

    const fs::path dir(a.out_dir);
    write_atomic(dir / "analysis.csv", [&](std::ostream &o) {
        o << "test";
        for (std::size_t k = 1; k <= a.k_max; ++k) {
            o << ",k=" << k;
        }
        o << "\nchi2_uniformity";
        for (const auto &c : chi_row) {
            o << ',' << c;
        }
        o << "\nborel_normality";
        for (const auto &c : borel_row) {
            o << ',' << c;
        }
        o << '\n';
    });
    write_json(dir / "report.json", report);
    write_json(dir / "manifest.json",
               manifest("analyze", argv, {{"in", a.in}, {"in2", a.in2}, {"k_max", a.k_max}, {"alpha", a.alpha}}));

    out << "analyze: " << bits.size() << " bits";
    for (std::size_t k = 0; k < chi_row.size(); ++k) {
        out << " p[k=" << k + 1 << "]=" << (chi_row[k].empty() ? "n/a" : chi_row[k]);
    }
    out << '\n';
    return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    ConfigFlags config;
    std::string grid;
    std::string from = "0";
    std::string to = "pi/2";
    std::size_t steps = 90;
    std::string empirical_pairs = "0";
    std::uint64_t seed = kDefaultSeed;
    std::string out = "sweep.csv";
};

int cmd_sweep(const SweepArgs &a, const std::vector<std::string> &argv, std::ostream &out) {
    std::vector<double> thetas;
    if (!a.grid.empty()) {
        thetas = parse_list(a.grid);
    } else {
        if (a.steps == 0) {
            throw UsageError("--steps must be >= 1");
        }
        const double lo = parse_angle(a.from);
        const double hi = parse_angle(a.to);
        for (std::size_t i = 0; i <= a.steps; ++i) {
            thetas.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(a.steps));
        }
    }
    const std::size_t pairs = parse_count(a.empirical_pairs, "--empirical-pairs");
    QrngConfig base = a.config.resolve();

    write_atomic(fs::path(a.out), [&](std::ostream &o) {
        o << "theta,E_quantum,E_classical" << (pairs ? ",E_empirical" : "") << '\n';
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            const double t = thetas[i];
            if (!(t >= 0.0 && t <= std::numbers::pi / 2 + 1e-12)) {
                throw UsageError("sweep angles must lie in [0, pi/2]");
            }
            o << format_g(t) << ',' << format_g(expectation_xor_quantum(t)) << ','
              << format_g(expectation_xor_classical(t));
            if (pairs) {
                QrngConfig cfg = base;
                cfg.theta = std::min(t, std::numbers::pi / 2);
                const auto r = sample_pairs(pairs, cfg, a.seed + i);
                const auto z = xor_bits(r.records);
                o << ',' << format_g(static_cast<double>(z.count(false)) / static_cast<double>(z.size()));
            }
            o << '\n';
        }
    });
    write_json(fs::path(a.out).parent_path() / (fs::path(a.out).stem().string() + "_manifest.json"),
               manifest("sweep", with_seed(argv, a.seed),
                        {{"thetas", thetas}, {"empirical_pairs", pairs}, {"seed", a.seed}, {"config", base}}));
    out << "sweep: " << thetas.size() << " angles -> " << a.out << '\n';
    return 0;
}

// ----------------------------------------------------------- demon-demo

struct DemonArgs {
    std::string bits = "1000000";
    double rho = 0.5;
    std::uint64_t seed = kDefaultSeed;
    std::string out_dir = ".";
};

int cmd_demon(const DemonArgs &a, const std::vector<std::string> &argv, std::ostream &out) {
    const std::size_t n = parse_count(a.bits, "--bits");
    QrngConfig cfg;
    cfg.theta = std::numbers::pi / 4;
    const auto source = xor_bits(sample_pairs(n, cfg, a.seed).records);
    const DemonOutput d = demon_filter(source, a.rho);
    bool subsequence_zero = true;
    for (std::size_t i = d.period - 1; i < d.bits.size(); i += d.period) {
        subsequence_zero = subsequence_zero && !d.bits[i];
    }
    const fs::path dir(a.out_dir);
    write_atomic(dir / "demon.bits", [&](std::ostream &o) { write_bits(o, d.bits, BitFormat::ascii); });
    const json summary{{"input", n},
                       {"output", d.bits.size()},
                       {"rejected", d.rejected},
                       {"rejected_fraction", n ? static_cast<double>(d.rejected) / static_cast<double>(n) : 0.0},
                       {"period", d.period},
                       {"rho", a.rho},
                       {"subsequence_all_zero", subsequence_zero}};
    write_json(dir / "demon.json", summary);
    write_json(dir / "manifest.json", manifest("demon-demo", with_seed(argv, a.seed), summary));
    out << "demon-demo: period=" << d.period << " rejected=" << d.rejected << " of " << n
        << " subsequence_all_zero=" << (subsequence_zero ? "true" : "false") << '\n';
    return 0;
}

int cmd_replay(const std::string &path, std::ostream &out, std::ostream &err) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open manifest " + path);
    }
    json m;
    try {
        in >> m;
        auto argv = m.at("argv").get<std::vector<std::string>>();
        if (argv.empty() || argv.front() == "replay") {
            throw FormatError("manifest does not describe a replayable run");
        }
        return run(argv, out, err);
    } catch (const json::exception &e) {
        throw FormatError(std::string("bad manifest: ") + e.what());
    }
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"qxor: entangled-pair XOR random number generator toolkit"};
    app.require_subcommand(1);

    ExactArgs exact_args;
    auto *exact = app.add_subcommand("exact", "exact output distribution of the offset-XOR");
    exact_args.config.attach(exact);
    exact->add_option("--n", exact_args.n, "output length")->required();
    exact->add_option("--j", exact_args.j, "offset");
    exact->add_option("--cap", exact_args.cap, "enumeration cap on n + j");
    exact->add_option("--out-dir", exact_args.out_dir, "output directory");
    exact->add_flag("--tv", exact_args.tv, "print the distance to uniform");

    SimulateArgs sim_args;
    auto *sim = app.add_subcommand("simulate", "simulate a coincidence stream");
    sim_args.config.attach(sim);
    sim->add_option("--pairs", sim_args.pairs, "number of pairs (1e6 accepted)");
    sim->add_option("--seed", sim_args.seed, "generator seed");
    sim->add_flag("--physical", sim_args.physical, "detector-loss model instead of weighted sampling");
    sim->add_flag("--no-stream", sim_args.no_stream, "skip the NDJSON stream dump");
    sim->add_option("--out-dir", sim_args.out_dir, "output directory");
    sim->add_option("--format", sim_args.format, "bit file format (ascii, packed)");

    ExtractArgs ext_args;
    auto *ext = app.add_subcommand("extract", "post-process bit files");
    ext->add_option("--method", ext_args.method, "vn, peres, pair-vn or xor")->required();
    ext->add_option("--in", ext_args.in, "input bit file")->required();
    ext->add_option("--in2", ext_args.in2, "second input (pair-vn, xor)");
    ext->add_option("--j", ext_args.j, "xor offset");
    ext->add_option("--depth", ext_args.depth, "peres recursion depth");
    ext->add_option("--block", ext_args.block, "peres block size in bits");
    ext->add_option("--format", ext_args.format, "input format (ascii, packed, auto)");
    ext->add_option("--out-format", ext_args.out_format, "output format (ascii, packed)");
    ext->add_option("--out", ext_args.out, "output bit file");
    ext->add_option("--summary", ext_args.summary, "summary JSON path");

    AnalyzeArgs an_args;
    auto *an = app.add_subcommand("analyze", "statistical tests on a bit file");
    an->add_option("--in", an_args.in, "input bit file")->required();
    an->add_option("--in2", an_args.in2, "paired input for correlation and theta estimation");
    an->add_option("--k-max", an_args.k_max, "largest chi-square block length");
    an->add_option("--alpha", an_args.alpha, "significance level");
    an->add_option("--format", an_args.format, "input format (ascii, packed, auto)");
    an->add_option("--out-dir", an_args.out_dir, "output directory");

    SweepArgs sw_args;
    auto *sw = app.add_subcommand("sweep", "expectation curves over an angle grid");
    sw_args.config.attach(sw);
    sw->add_option("--grid", sw_args.grid, "comma-separated angles");
    sw->add_option("--from", sw_args.from, "first angle");
    sw->add_option("--to", sw_args.to, "last angle");
    sw->add_option("--steps", sw_args.steps, "number of intervals");
    sw->add_option("--empirical-pairs", sw_args.empirical_pairs, "simulated pairs per angle (0 = none)");
    sw->add_option("--seed", sw_args.seed, "generator seed");
    sw->add_option("--out", sw_args.out, "output CSV");

    DemonArgs dm_args;
    auto *dm = app.add_subcommand("demon-demo", "fair-sampling demon on a uniform stream");
    dm->add_option("--bits", dm_args.bits, "input length");
    dm->add_option("--rho", dm_args.rho, "efficiency bound");
    dm->add_option("--seed", dm_args.seed, "generator seed");
    dm->add_option("--out-dir", dm_args.out_dir, "output directory");

    std::string replay_path;
    auto *rp = app.add_subcommand("replay", "re-run the command recorded in a manifest");
    rp->add_option("manifest", replay_path, "manifest.json")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    try {
        if (exact->parsed()) {
            return cmd_exact(exact_args, args, out);
        }
        if (sim->parsed()) {
            return cmd_simulate(sim_args, args, out);
        }
        if (ext->parsed()) {
            return cmd_extract(ext_args, args, out);
        }
        if (an->parsed()) {
            return cmd_analyze(an_args, args, out);
        }
        if (sw->parsed()) {
            return cmd_sweep(sw_args, args, out);
        }
        if (dm->parsed()) {
            return cmd_demon(dm_args, args, out);
        }
        if (rp->parsed()) {
            return cmd_replay(replay_path, out, err);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    } catch (const ResourceError &e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::resource);
    } catch (const FormatError &e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::input_format);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return static_cast<int>(ExitCode::usage);
}

}  // namespace qxor::cli
