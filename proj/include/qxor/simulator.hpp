#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

#include "qxor/bitstring.hpp"
#include "qxor/config.hpp"

namespace qxor {

struct SimulationResult {
    PairStream records;
    std::size_t generated = 0;  // raw pairs drawn from the source
    std::size_t dropped_loss = 0;
    std::size_t dropped_dead_time = 0;
    std::size_t dropped_demon = 0;
    std::uint64_t seed = 0;
};

// Draws n coincidences directly from the efficiency-weighted pair law (with
// drift evaluated at each arrival time). Arrival gaps are exponential with
// mean cfg.mean_pair_interval.
SimulationResult sample_pairs(std::size_t n, const QrngConfig &cfg, std::uint64_t seed);

// Loss model: draws ideal singlet outcomes, then gates each photon through
// its detector with probability equal to the detector efficiency. Pairs
// with a missing photon are dropped; generation continues until n pairs
// survive.
SimulationResult sample_pairs_physical(std::size_t n, const QrngConfig &cfg, std::uint64_t seed);

// With probability p_dc per record, the second outcome is taken from the
// next record instead. The last record is never altered.
PairStream apply_double_counting(const PairStream &stream, double p_dc, std::uint64_t seed);

// Keeps a record iff it arrives more than dead_time after the previously
// kept record. The first record is always kept.
PairStream dead_time_filter(const PairStream &stream, double dead_time);

// Period k = ceil(1 / (1 - rho)) of the forced-zero slots.
std::size_t demon_period(double rho);

struct DemonOutput {
    BitString bits;
    std::size_t rejected = 0;
    std::size_t period = 0;
};

// Adversarial fair-sampling violation: output positions k, 2k, 3k, ...
// (1-based) are forced to 0 by rejecting input 1s at those slots. Other
// input bits pass through in order. Stops if the input runs out while
// seeking a 0.
DemonOutput demon_filter(const BitString &bits, double rho);

// Same rule applied to a pair stream, keyed on the XOR of the two outcomes.
PairStream demon_filter_pairs(const PairStream &stream, double rho, std::size_t *rejected = nullptr);

// sample_pairs or sample_pairs_physical, then double counting, dead-time
// filtering and the demon, each applied when cfg enables it.
SimulationResult simulate(std::size_t n, const QrngConfig &cfg, std::uint64_t seed, bool physical = false);

BitString plus_bits(const PairStream &stream);
BitString times_bits(const PairStream &stream);
BitString xor_bits(const PairStream &stream);

// NDJSON, one {"t":...,"a":0|1,"b":0|1} object per line.
void write_stream_ndjson(std::ostream &out, const PairStream &stream);
PairStream read_stream_ndjson(std::istream &in);

}  // namespace qxor
