#include "boxball/soliton.hpp"

#include <algorithm>
#include <cassert>
#include <list>
#include <optional>

namespace boxball {

SolitonSet::SolitonSet(std::map<int, std::vector<Soliton>> by_size, int64_t anchor)
    : by_size_(std::move(by_size)), anchor_(anchor) {
    for (auto& [k, v] : by_size_) {
        std::sort(v.begin(), v.end(),
                  [](const Soliton& a, const Soliton& b) { return a.position < b.position; });
        size_t j = 0;
        while (j < v.size() && v[j].position < anchor_) ++j;
        first_right_[k] = static_cast<int64_t>(j);
    }
}

const std::vector<Soliton>& SolitonSet::of_size(int k) const {
    static const std::vector<Soliton> kEmpty;
    auto it = by_size_.find(k);
    return it == by_size_.end() ? kEmpty : it->second;
}

int64_t SolitonSet::count(int k) const {
    auto it = by_size_.find(k);
    return it == by_size_.end() ? 0 : static_cast<int64_t>(it->second.size());
}

int64_t SolitonSet::total() const {
    int64_t n = 0;
    for (auto& [k, v] : by_size_) n += static_cast<int64_t>(v.size());
    return n;
}

const Soliton& SolitonSet::natural(int k, int64_t i) const {
    auto idx = vector_index(k, i);
    if (!idx)
        throw NotFoundError("no soliton of size " + std::to_string(k) + " with natural index " +
                            std::to_string(i));
    return of_size(k)[*idx];
}

int64_t SolitonSet::natural_index_of(int k, size_t j) const {
    auto it = first_right_.find(k);
    if (it == first_right_.end()) throw NotFoundError("no solitons of that size");
    return static_cast<int64_t>(j) - it->second + 1;
}

std::optional<size_t> SolitonSet::vector_index(int k, int64_t i) const {
    auto it = first_right_.find(k);
    if (it == first_right_.end()) return std::nullopt;
    int64_t j = i - 1 + it->second;
    if (j < 0 || j >= count(k)) return std::nullopt;
    return static_cast<size_t>(j);
}

std::vector<Soliton> ts_decompose(const std::vector<uint8_t>& word, int64_t base) {
    struct Run {
        uint8_t value;
        std::vector<int64_t> sites;
    };
    std::list<Run> runs;
    for (size_t i = 0; i < word.size(); ++i) {
        int64_t x = base + static_cast<int64_t>(i);
        if (!runs.empty() && runs.back().value == word[i]) {
            runs.back().sites.push_back(x);
        } else {
            runs.push_back(Run{word[i], {x}});
        }
    }
    std::vector<Soliton> out;
    auto any_ones = [&] {
        for (auto& r : runs)
            if (r.value == 1) return true;
        return false;
    };
    while (any_ones()) {
        // leftmost run whose successor is at least as long
        auto it = runs.begin();
        auto picked = runs.end();
        for (; it != runs.end(); ++it) {
            auto nx = std::next(it);
            if (nx == runs.end()) break;
            if (nx->sites.size() >= it->sites.size()) {
                picked = it;
                break;
            }
        }
        if (picked == runs.end())
            throw std::logic_error("ts_decompose: no qualifying run (word is not an excursion body)");
        auto nx = std::next(picked);
        size_t k = picked->sites.size();
        Soliton s;
        s.size = static_cast<int>(k);
        s.sites = picked->sites;
        s.sites.insert(s.sites.end(), nx->sites.begin(), nx->sites.begin() + static_cast<long>(k));
        std::sort(s.sites.begin(), s.sites.end());
        for (int64_t x : s.sites) {
            size_t off = static_cast<size_t>(x - base);
            (word[off] ? s.heads : s.tails).push_back(x);
        }
        s.position = s.sites.front() - 1;
        out.push_back(std::move(s));
        nx->sites.erase(nx->sites.begin(), nx->sites.begin() + static_cast<long>(k));
        if (nx->sites.empty()) runs.erase(nx);
        runs.erase(picked);
        // merge equal-valued neighbors created by the removal
        for (auto i2 = runs.begin(); i2 != runs.end();) {
            auto n2 = std::next(i2);
            if (n2 != runs.end() && n2->value == i2->value) {
                i2->sites.insert(i2->sites.end(), n2->sites.begin(), n2->sites.end());
                runs.erase(n2);
            } else {
                ++i2;
            }
        }
    }
    return out;
}

SolitonSet identify(const Configuration& cfg) {
    RecordIndex rec = records(cfg);
    std::map<int, std::vector<Soliton>> by_size;
    const auto& sites = rec.sites();
    for (size_t i = 0; i + 1 < sites.size(); ++i) {
        if (sites[i + 1] == sites[i] + 1) continue;
        std::vector<uint8_t> body;
        body.reserve(static_cast<size_t>(sites[i + 1] - sites[i] - 1));
        for (int64_t x = sites[i] + 1; x < sites[i + 1]; ++x)
            body.push_back(static_cast<uint8_t>(cfg.get(x)));
        for (auto& s : ts_decompose(body, sites[i] + 1))
            by_size[s.size].push_back(std::move(s));
    }
    return SolitonSet(std::move(by_size), rec.s0());
}

const Soliton& track_step(const Soliton& sol, const SolitonSet& next, const Configuration& next_cfg) {
    (void)next_cfg;
    for (const Soliton& cand : next.of_size(sol.size)) {
        if (cand.heads == sol.tails) return cand;
    }
    throw std::logic_error("track_step: no successor soliton matches the tails");
}

bool is_free(const Soliton& sol, const SolitonSet& set, const RecordIndex& rec) {
    int64_t e = rec.excursion_index(sol.position);
    for (auto& [k, v] : set.by_size()) {
        if (k <= sol.size) continue;
        for (const Soliton& other : v) {
            if (other.position >= sol.position) break;
            if (rec.excursion_index(other.position) == e) return false;
        }
    }
    return true;
}

std::vector<VolumeGroup> volume_groups(const SolitonSet& set, const RecordIndex& rec, int k) {
    const auto& v = set.of_size(k);
    std::vector<VolumeGroup> groups;
    if (v.empty()) return groups;
    // sites of strictly larger solitons, for the gap test
    std::vector<int64_t> big;
    for (auto& [l, w] : set.by_size()) {
        if (l <= k) continue;
        for (const Soliton& s : w) big.insert(big.end(), s.sites.begin(), s.sites.end());
    }
    std::sort(big.begin(), big.end());
    auto blocked_gap = [&](int64_t a, int64_t b) {
        // record or larger-soliton site within [a, b]?
        for (int64_t x = a; x <= b; ++x)
            if (rec.is_record(x)) return true;
        auto it = std::lower_bound(big.begin(), big.end(), a);
        return it != big.end() && *it <= b;
    };
    VolumeGroup cur;
    cur.rep = 0;
    cur.members = {0};
    for (size_t j = 1; j < v.size(); ++j) {
        if (!blocked_gap(v[j - 1].sup(), v[j].position)) {
            cur.members.push_back(j);
        } else {
            groups.push_back(cur);
            cur = VolumeGroup{j, {j}};
        }
    }
    groups.push_back(cur);
    return groups;
}

int64_t TaggedTrajectory::sum_overtakes(int l) const {
    int64_t n = 0;
    for (auto& m : overtakes) {
        auto it = m.find(l);
        if (it != m.end()) n += it->second;
    }
    return n;
}

TaggedTrajectory run_tagged(const Configuration& cfg, int k, int64_t i, int64_t n) {
    TaggedTrajectory tr;
    tr.size_k = k;
    tr.natural_index = i;

    Configuration cur = cfg;
    SolitonSet set = identify(cur);
    RecordIndex rec = records(cur);
    Soliton tagged = set.natural(k, i);
    tr.positions.push_back(tagged.position);

    // positions of every larger soliton, tracked for the overtaken-by counts
    std::map<int, std::vector<Soliton>> larger;
    for (auto& [l, v] : set.by_size())
        if (l > k) larger[l] = v;

    for (int64_t step = 0; step < n; ++step) {
        bool free = is_free(tagged, set, rec);
        tr.free_at.push_back(free ? 1 : 0);
        std::map<int, int64_t> ns;
        if (free) {
            // census of smaller solitons inside [H_1, T_1] of the tagged
            int64_t a = tagged.heads.front(), b = tagged.tails.front();
            for (auto& [l, v] : set.by_size()) {
                if (l >= k) continue;
                int64_t c = 0;
                for (const Soliton& s : v)
                    if (s.sites.front() >= a && s.sites.back() <= b) ++c;
                if (c) ns[l] = c;
            }
        } else {
            ++tr.blocked_steps;
        }
        tr.overtakes.push_back(ns);

        Configuration next = evolve(cur);
        SolitonSet next_set = identify(next);
        Soliton next_tagged = track_step(tagged, next_set, next);

        // larger solitons overtaking the tagged one this step
        for (auto& [l, v] : larger) {
            std::vector<Soliton> moved;
            moved.reserve(v.size());
            for (const Soliton& s : v) {
                const Soliton& s1 = track_step(s, next_set, next);
                if (s.position < tagged.position && s1.position > next_tagged.position)
                    ++tr.overtaken_by[l];
                moved.push_back(s1);
            }
            v = std::move(moved);
        }

        cur = std::move(next);
        set = std::move(next_set);
        rec = records(cur);
        tagged = std::move(next_tagged);
        tr.positions.push_back(tagged.position);
    }
    return tr;
}

}  // namespace boxball
