#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "boxball/config.hpp"
#include "boxball/qstat.hpp"
#include "boxball/rng.hpp"

namespace boxball {

enum class SampleMethod { SlotReconstruction, MarkovDirect };

/// What to draw: parameter sequence, number of complete excursions on each
/// side of the origin, seed, and the construction to use.
struct SampleSpec {
    QParams q = QParams::finite_support({});
    int64_t records = 1;        // excursions right of the origin (indices 0..records-1)
    int64_t left_records = 0;   // excursions left of the origin
    uint64_t seed = 0;
    uint64_t replica = 0;
    SampleMethod method = SampleMethod::SlotReconstruction;
};

/// A configuration with a record at the origin, drawn from the invariant law
/// with independent geometric slot contents.
Configuration sample_nu(const SampleSpec& spec);

/// A configuration drawn without the origin-record conditioning (inverse
/// Palm). The origin lands uniformly inside a length-biased excursion.
Configuration sample_mu(const SampleSpec& spec);

/// Geometric(q) on {0,1,...} by inversion.
int64_t geometric(RngStream& rng, double q);

/// One fresh excursion word (leading record included) under the slot law.
std::vector<uint8_t> sample_excursion(const QParams& q, RngStream& rng);

/// Histogram of (excursion length, descent count) pairs.
struct ExcursionCensus {
    std::map<std::pair<int64_t, int64_t>, int64_t> hist;  // (|e|, descents) -> count
    int64_t total = 0;
    double mean_length = 0;

    void add(const std::vector<uint8_t>& word);
    std::string to_json() const;
};

ExcursionCensus excursion_census(const QParams& q, int64_t samples, uint64_t seed);

}  // namespace boxball
