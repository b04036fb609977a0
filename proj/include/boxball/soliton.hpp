#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "boxball/config.hpp"
#include "boxball/lattice.hpp"

namespace boxball {

/// One soliton: 2k sites, k of them occupied (heads) and k empty (tails).
/// The position convention is X = (inf sites) - 1.
struct Soliton {
    int size = 0;
    std::vector<int64_t> sites;   // sorted
    std::vector<int64_t> heads;   // sorted, cells == 1
    std::vector<int64_t> tails;   // sorted, cells == 0
    int64_t position = 0;         // sites.front() - 1

    int64_t sup() const { return sites.back(); }
};

/// A maximal group of connected same-size solitons; the leftmost member is
/// the representative.
struct VolumeGroup {
    size_t rep = 0;               // index into SolitonSet::of_size(k)
    std::vector<size_t> members;  // left to right
    int64_t volume() const { return static_cast<int64_t>(members.size()); }
};

/// All solitons of a configuration, grouped by size, with natural and
/// volume numbering relative to the anchor record.
class SolitonSet {
  public:
    SolitonSet() = default;
    SolitonSet(std::map<int, std::vector<Soliton>> by_size, int64_t anchor);

    const std::map<int, std::vector<Soliton>>& by_size() const { return by_size_; }
    const std::vector<Soliton>& of_size(int k) const;
    bool has_size(int k) const { return by_size_.count(k) != 0; }
    int max_size() const { return by_size_.empty() ? 0 : by_size_.rbegin()->first; }
    int64_t count(int k) const;
    int64_t total() const;

    /// The i-th k-soliton under natural numbering (index 0 = rightmost left
    /// of the anchor record). Throws NotFoundError when absent.
    const Soliton& natural(int k, int64_t i) const;
    /// Natural index of the j-th (left-to-right) k-soliton.
    int64_t natural_index_of(int k, size_t j) const;
    /// Left-to-right position of natural index i, or nullopt.
    std::optional<size_t> vector_index(int k, int64_t i) const;

    int64_t anchor() const { return anchor_; }

  private:
    std::map<int, std::vector<Soliton>> by_size_;
    std::map<int, int64_t> first_right_;  // per size: vector index of natural #1
    int64_t anchor_ = 0;                  // s_inf(0) used for numbering
};

/// Takahashi-Satsuma decomposition of every excursion.
SolitonSet identify(const Configuration& cfg);

/// TS decomposition of one excursion body; `base` is the absolute site of
/// word[0]. All 1s must pair off (the word must be a full excursion body).
std::vector<Soliton> ts_decompose(const std::vector<uint8_t>& word, int64_t base);

/// The unique soliton of `next` whose heads are the tails of `sol`.
/// `next_cfg` must be evolve of the configuration `sol` came from.
const Soliton& track_step(const Soliton& sol, const SolitonSet& next, const Configuration& next_cfg);

/// True when no larger soliton sits left of `sol` inside the same excursion.
bool is_free(const Soliton& sol, const SolitonSet& set, const RecordIndex& rec);

/// Volume groups of the k-solitons, left to right.
std::vector<VolumeGroup> volume_groups(const SolitonSet& set, const RecordIndex& rec, int k);

/// Time series of one tagged soliton with its interaction counters.
struct TaggedTrajectory {
    int size_k = 0;
    int64_t natural_index = 0;                 // i in the natural numbering
    std::vector<int64_t> positions;            // X at times 0..n
    std::vector<uint8_t> free_at;              // freeness at times 0..n-1
    std::vector<std::map<int, int64_t>> overtakes;  // step m -> {l -> N_{k,l}(m)}, m = 1..n
    int64_t blocked_steps = 0;                 // M_k(n)
    std::map<int, int64_t> overtaken_by;       // l -> M_{k,l}(n), l > k

    int64_t increment() const { return positions.back() - positions.front(); }
    int64_t sum_overtakes(int l) const;
};

/// Track the natural-i k-soliton for n steps, computing all counters by
/// direct per-step identification.
TaggedTrajectory run_tagged(const Configuration& cfg, int k, int64_t i, int64_t n);

}  // namespace boxball
