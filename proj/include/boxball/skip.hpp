#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "boxball/config.hpp"
#include "boxball/seat.hpp"
#include "boxball/soliton.hpp"

namespace boxball {

/// Image of the k-skip map together with the re-anchoring shift.
struct SkipResult {
    Configuration image;
    int64_t origin_shift = 0;  // xi_k at the origin; the image anchor is its negative
};

/// Deletes every seat of level <= k and renumbers the surviving sites.
SkipResult skip(const Configuration& cfg, int k);

/// recenter(skip(cfg).image); equals skip(recenter(cfg)).image pointwise.
Configuration skip_recentered(const Configuration& cfg, int k);

/// Slot index of the i-th nonempty k-slot (i >= 1 counts right from slot 0,
/// i <= 0 counts left from slot -1).
int64_t J_stop(const SlotArray& z, int k, int64_t i);

/// Crossing index: least volume index j of (l-k)-solitons in the k-skipped
/// image whose position at time n clears the tagged slot J_k(i).
struct CrossingIndices {
    std::map<std::pair<int, int64_t>, int64_t> J;  // (k, i) -> J_k(i)
};

/// Per-identity audit outcome for one tagged run.
struct AuditReport {
    bool ok = true;
    std::vector<std::string> failures;  // description + counterexample text
    int64_t checks = 0;

    void fail(const std::string& what) {
        ok = false;
        failures.push_back(what);
    }
    std::string to_json() const;
};

/// Bit-exact verification of the overtake-count identity, the blocked-step
/// record formula, and the two-sided overtaken-by bounds for the tagged
/// (k, natural i) soliton over n steps.
AuditReport audit_counting(const Configuration& cfg, int k, int64_t i, int64_t n);

/// One term of the exact linear decomposition of the tagged increment.
struct DecompositionTerm {
    int level = 0;        // 0 marks the blocked-step term
    std::string coeff;    // exact rational coefficient, as "p/q"
    int64_t sum = 0;      // integer slot sum (or n - M for level 0)
};

}  // namespace boxball
