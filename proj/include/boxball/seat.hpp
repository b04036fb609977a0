#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "boxball/config.hpp"
#include "boxball/lattice.hpp"

namespace boxball {

/// Site label: a record, or the (level, direction) seat event of the seated
/// carrier. level == 0 encodes a record; direction: +1 pick-up, -1 put-down.
struct SeatLabel {
    int32_t level = 0;
    int8_t dir = 0;
    bool is_record() const { return level == 0; }
    bool up() const { return dir > 0; }
};

/// Per-site seat labels of one configuration plus the derived coordinates
/// xi_k / s_k and the slot contents zeta_k. Immutable once built.
class SeatView {
  public:
    explicit SeatView(const Configuration& cfg);

    const Configuration& config() const { return cfg_; }
    int64_t lo() const { return lo_; }
    int64_t hi() const { return lo_ + static_cast<int64_t>(labels_.size()); }

    /// Label at any site inside the labeled window; sites outside are records.
    SeatLabel label(int64_t x) const;

    /// Anchor record s_inf(0).
    int64_t anchor() const { return anchor_; }
    const RecordIndex& record_index() const { return rec_; }

    /// Seat occupancy of level k after processing site x.
    int seat_occupied(int k, int64_t x) const;

    /// xi_k(x): counts records and seats of level > k up to x, zero at the anchor.
    int64_t xi(int k, int64_t x) const;

    /// s_k(i): leftmost site with xi_k == i. Throws WindowError outside the
    /// realized range.
    int64_t s(int k, int64_t i) const;

    /// Xi_k(i) = xi_k(s_inf(i)).
    int64_t Xi(int k, int64_t i) const;

    /// Largest seat level occurring in the window (0 when none).
    int max_level() const { return max_level_; }

  private:
    const std::vector<int64_t>& xi_prefix(int k) const;

    Configuration cfg_;
    RecordIndex rec_;
    int64_t lo_ = 0;
    int64_t anchor_ = 0;
    int max_level_ = 0;
    std::vector<SeatLabel> labels_;
    mutable std::map<int, std::vector<int64_t>> xi_cache_;
};

/// Sparse slot contents zeta_k(i) with the realized index range per level.
struct SlotArray {
    int levels = 0;  // max level with any entry
    std::map<int, std::map<int64_t, int64_t>> zeta;      // k -> i -> count (nonzero only)
    std::map<int, std::pair<int64_t, int64_t>> realized; // k -> [i_lo, i_hi) realized range

    int64_t get(int k, int64_t i) const {
        auto it = zeta.find(k);
        if (it == zeta.end()) return 0;
        auto jt = it->second.find(i);
        return jt == it->second.end() ? 0 : jt->second;
    }
    int64_t level_total(int k) const {
        int64_t n = 0;
        auto it = zeta.find(k);
        if (it != zeta.end())
            for (auto& [i, c] : it->second) n += c;
        return n;
    }
    std::string to_json() const;
    static SlotArray from_json(const std::string& text);
};

/// Capacity-limited carrier values over the labeled window.
struct CapacityCarrier {
    int capacity = 0;
    int64_t lo = 0;
    std::vector<int32_t> values;
    int32_t at(int64_t x) const {
        if (x < lo) return 0;
        auto i = static_cast<size_t>(x - lo);
        return i < values.size() ? values[i] : 0;
    }
};

SeatView seat_decompose(const Configuration& cfg);

/// Slot contents of every level, over the realized slot range of the window.
SlotArray slots(const SeatView& view);

/// Inverse of the slot map: builds the configuration in which record i sits
/// at the start of excursion i for i = 0..record_count-1 (sites >= 0), with
/// optional extra excursions left of the origin.
Configuration reconstruct(const SlotArray& z, int64_t record_count, int64_t left_records = 0);

/// Offset o_k entering the one-step slot shift.
int64_t offset(const Configuration& cfg, int k);

CapacityCarrier capacity_carrier(const Configuration& cfg, int capacity);

}  // namespace boxball
