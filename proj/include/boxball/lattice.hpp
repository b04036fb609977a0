#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "boxball/config.hpp"

namespace boxball {

/// Carrier load W(x) over a site interval, aligned to absolute coordinates.
struct CarrierProfile {
    int64_t lo = 0;  // site of values[0]
    std::vector<int64_t> values;

    int64_t at(int64_t x) const {
        if (x < lo) return 0;
        auto i = static_cast<size_t>(x - lo);
        if (i >= values.size()) return 0;
        return values[i];
    }
    int64_t hi() const { return lo + static_cast<int64_t>(values.size()); }
};

/// Record sites of a configuration within a computed window, with arithmetic
/// extension outside: every site left of the window and right of the support
/// is a record.
class RecordIndex {
  public:
    RecordIndex(std::vector<int64_t> sites, size_t zero_index, int64_t window_lo,
                int64_t window_hi)
        : sites_(std::move(sites)), zero_index_(zero_index), window_lo_(window_lo),
          window_hi_(window_hi) {}

    const std::vector<int64_t>& sites() const { return sites_; }
    int64_t window_lo() const { return window_lo_; }
    int64_t window_hi() const { return window_hi_; }

    /// s_inf(i): the i-th record, i relative to the anchor at the largest
    /// record <= 0. Indices outside the computed window extend with spacing 1.
    int64_t s(int64_t i) const;

    /// The anchor record s_inf(0) = max{x <= 0 : x is a record}.
    int64_t s0() const { return sites_[zero_index_]; }

    bool is_record(int64_t x) const;

    /// Index i with s(i) <= x < s(i+1), i.e. the excursion containing site x.
    int64_t excursion_index(int64_t x) const;

  private:
    std::vector<int64_t> sites_;  // strictly increasing, covers [window_lo, window_hi]
    size_t zero_index_;
    int64_t window_lo_, window_hi_;
};

/// One excursion: the segment [start, start + word.size()) beginning with the
/// record's 0.
struct Excursion {
    int64_t start = 0;
    std::vector<uint8_t> word;

    int64_t ball_count() const {
        int64_t n = 0;
        for (auto b : word) n += b;
        return n;
    }
};

/// Carrier profile over [lo, hi]; requires the interval to cover the support
/// plus one site on each side.
CarrierProfile carrier_profile(const Configuration& cfg, int64_t lo, int64_t hi);

/// One forward step of the dynamics.
Configuration evolve(const Configuration& cfg);

/// One backward step; inverse of evolve on finite-support configurations.
Configuration evolve_inverse(const Configuration& cfg);

/// All records in [min(support_lo, 0) - 1, support_hi + 1].
RecordIndex records(const Configuration& cfg);

/// Excursions between consecutive records of the computed window.
std::vector<Excursion> excursions(const Configuration& cfg);

/// Membership test for excursion words: a 0-leading word of odd length whose
/// embedding has records exactly at its two ends.
bool is_excursion_word(const std::vector<uint8_t>& word);

/// Shift so that the anchor record lands at the origin.
Configuration recenter(const Configuration& cfg);

namespace detail {
/// Plain per-site reference evolve, kept for differential testing against the
/// table-driven engine.
Configuration evolve_reference(const Configuration& cfg);
}  // namespace detail

}  // namespace boxball
