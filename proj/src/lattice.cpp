#include "boxball/lattice.hpp"

#include <algorithm>
#include <cassert>

namespace boxball {

int64_t RecordIndex::s(int64_t i) const {
    int64_t j = i + static_cast<int64_t>(zero_index_);
    if (j < 0) return sites_.front() + j;  // all sites left of the window are records
    if (j >= static_cast<int64_t>(sites_.size()))
        return sites_.back() + (j - static_cast<int64_t>(sites_.size()) + 1);
    return sites_[static_cast<size_t>(j)];
}

bool RecordIndex::is_record(int64_t x) const {
    if (x < window_lo_) return true;
    if (x > window_hi_) return x > sites_.back() || std::binary_search(sites_.begin(), sites_.end(), x);
    return std::binary_search(sites_.begin(), sites_.end(), x);
}

int64_t RecordIndex::excursion_index(int64_t x) const {
    if (x < sites_.front()) return x - sites_.front() - static_cast<int64_t>(zero_index_);
    auto it = std::upper_bound(sites_.begin(), sites_.end(), x);
    int64_t j = static_cast<int64_t>(it - sites_.begin()) - 1;
    if (j == static_cast<int64_t>(sites_.size()) - 1 && x > sites_.back())
        j += x - sites_.back();
    return j - static_cast<int64_t>(zero_index_);
}

CarrierProfile carrier_profile(const Configuration& cfg, int64_t lo, int64_t hi) {
    if (!cfg.empty() && (lo > cfg.support_lo() - 1 || hi < cfg.support_hi() + 1))
        throw WindowError("carrier_profile: window does not cover the support");
    CarrierProfile w;
    w.lo = lo;
    w.values.resize(static_cast<size_t>(hi - lo + 1), 0);
    int64_t load = 0;
    for (int64_t x = lo; x <= hi; ++x) {
        if (cfg.get(x)) {
            ++load;
        } else if (load > 0) {
            --load;
        }
        w.values[static_cast<size_t>(x - lo)] = load;
    }
    return w;
}

namespace detail {

Configuration evolve_reference(const Configuration& cfg) {
    if (cfg.empty()) return cfg;
    int64_t lo = cfg.support_lo();
    int64_t hi = cfg.support_hi();
    // The carrier drains within ball_count() sites past the support.
    int64_t end = hi + cfg.ball_count() + 1;
    std::vector<uint8_t> out(static_cast<size_t>(end - lo + 1), 0);
    int64_t load = 0;
    for (int64_t x = lo; x <= end; ++x) {
        int64_t prev = load;
        int c = cfg.get(x);
        if (c) {
            ++load;
        } else if (load > 0) {
            --load;
        }
        out[static_cast<size_t>(x - lo)] = static_cast<uint8_t>(c - (load - prev));
    }
    return Configuration(std::move(out), lo);
}

}  // namespace detail

Configuration evolve(const Configuration& cfg) { return detail::evolve_reference(cfg); }

Configuration evolve_inverse(const Configuration& cfg) {
    return evolve(cfg.reversed()).reversed();
}

RecordIndex records(const Configuration& cfg) {
    int64_t lo = std::min(std::min<int64_t>(cfg.lo(), 0),
                          (cfg.empty() ? 0 : cfg.support_lo())) -
                 1;
    // Scan far enough right that the carrier has drained and the trailing
    // all-record region has begun.
    int64_t hi = std::max(std::max<int64_t>(cfg.hi(), 0),
                          (cfg.empty() ? 0 : cfg.support_hi() + cfg.ball_count())) +
                 1;
    std::vector<int64_t> sites;
    int64_t load = 0;
    size_t zero_index = 0;
    for (int64_t x = lo; x <= hi; ++x) {
        int64_t prev = load;
        if (cfg.get(x)) {
            ++load;
        } else if (load > 0) {
            --load;
        }
        if (prev == 0 && cfg.get(x) == 0) {
            if (x <= 0) zero_index = sites.size();
            sites.push_back(x);
        }
    }
    assert(!sites.empty());
    return RecordIndex(std::move(sites), zero_index, lo, hi);
}

std::vector<Excursion> excursions(const Configuration& cfg) {
    RecordIndex rec = records(cfg);
    const auto& s = rec.sites();
    std::vector<Excursion> out;
    out.reserve(s.size());
    for (size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] < cfg.lo() || s[i] >= cfg.hi()) continue;  // starts in the stored window only
        Excursion e;
        e.start = s[i];
        e.word.reserve(static_cast<size_t>(s[i + 1] - s[i]));
        for (int64_t x = s[i]; x < s[i + 1]; ++x)
            e.word.push_back(static_cast<uint8_t>(cfg.get(x)));
        out.push_back(std::move(e));
    }
    return out;
}

bool is_excursion_word(const std::vector<uint8_t>& word) {
    if (word.empty() || word.front() != 0) return false;
    if (word.size() % 2 == 0) return false;
    int64_t ones = 0;
    for (auto b : word) ones += b;
    if (2 * ones + 1 != static_cast<int64_t>(word.size())) return false;
    // Embed with zeros around; records must appear exactly at both ends.
    Configuration cfg(word, 0);
    RecordIndex rec = records(cfg);
    for (int64_t x = 0; x < static_cast<int64_t>(word.size()); ++x)
        if (rec.is_record(x) != (x == 0)) return false;
    return rec.is_record(static_cast<int64_t>(word.size()));
}

Configuration recenter(const Configuration& cfg) {
    int64_t s0 = records(cfg).s0();
    return cfg.shifted_left(s0);
}

}  // namespace boxball
