#include "boxball/seat.hpp"

#include <algorithm>
#include <cassert>

#include <nlohmann/json.hpp>

namespace boxball {

namespace {

/// Dynamic set of occupied seat numbers (1-based), with first-empty and
/// first-occupied queries.
class SeatBank {
  public:
    int pick_up() {  // occupy the smallest empty seat, return its number
        for (size_t w = 0;; ++w) {
            if (w == words_.size()) words_.push_back(0);
            if (~words_[w]) {
                int b = __builtin_ctzll(~words_[w]);
                words_[w] |= (1ull << b);
                return static_cast<int>(w * 64 + b) + 1;
            }
        }
    }
    int put_down() {  // vacate the smallest occupied seat, 0 if none
        for (size_t w = 0; w < words_.size(); ++w) {
            if (words_[w]) {
                int b = __builtin_ctzll(words_[w]);
                words_[w] &= ~(1ull << b);
                return static_cast<int>(w * 64 + b) + 1;
            }
        }
        return 0;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

  private:
    std::vector<uint64_t> words_;
};

}  // namespace

SeatView::SeatView(const Configuration& cfg) : cfg_(cfg), rec_(records(cfg)) {
    lo_ = rec_.window_lo();
    anchor_ = rec_.s0();
    int64_t hi = rec_.window_hi();
    labels_.resize(static_cast<size_t>(hi - lo_ + 1));
    SeatBank bank;
    for (int64_t x = lo_; x <= hi; ++x) {
        SeatLabel& lab = labels_[static_cast<size_t>(x - lo_)];
        if (cfg_.get(x)) {
            lab.level = bank.pick_up();
            lab.dir = 1;
        } else if (!bank.empty()) {
            lab.level = bank.put_down();
            lab.dir = -1;
        } else {
            lab.level = 0;  // record
            lab.dir = 0;
        }
        max_level_ = std::max(max_level_, static_cast<int>(lab.level));
    }
    assert(bank.empty());
}

SeatLabel SeatView::label(int64_t x) const {
    if (x < lo_ || x >= hi()) return SeatLabel{};  // all records outside
    return labels_[static_cast<size_t>(x - lo_)];
}

int SeatView::seat_occupied(int k, int64_t x) const {
    // W_k(x) = #(k,up) minus #(k,down) among labels up to x
    if (x < lo_) return 0;
    x = std::min(x, hi() - 1);
    int occ = 0;
    for (int64_t y = lo_; y <= x; ++y) {
        const SeatLabel& lab = labels_[static_cast<size_t>(y - lo_)];
        if (lab.level == k) occ += lab.dir;
    }
    return occ;
}

const std::vector<int64_t>& SeatView::xi_prefix(int k) const {
    auto it = xi_cache_.find(k);
    if (it != xi_cache_.end()) return it->second;
    std::vector<int64_t> pre(labels_.size());
    int64_t v = 0;
    for (size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].level == 0 || labels_[i].level > k) ++v;
        pre[i] = v;
    }
    // anchor: xi_k(s_inf(0)) = 0
    int64_t shift = pre[static_cast<size_t>(anchor_ - lo_)];
    for (auto& p : pre) p -= shift;
    return xi_cache_.emplace(k, std::move(pre)).first->second;
}

int64_t SeatView::xi(int k, int64_t x) const {
    const auto& pre = xi_prefix(k);
    if (x < lo_) return pre.front() - 1 - (lo_ - 1 - x);  // records all the way left
    if (x >= hi()) return pre.back() + (x - (hi() - 1));  // and all the way right
    return pre[static_cast<size_t>(x - lo_)];
}

int64_t SeatView::s(int k, int64_t i) const {
    const auto& pre = xi_prefix(k);
    if (i < pre.front()) return lo_ - (pre.front() - i);
    if (i > pre.back()) return (hi() - 1) + (i - pre.back());
    auto it = std::lower_bound(pre.begin(), pre.end(), i);
    // min{y : xi_k(y) = i}; lower_bound finds the first position reaching i
    return lo_ + static_cast<int64_t>(it - pre.begin());
}

int64_t SeatView::Xi(int k, int64_t i) const { return xi(k, rec_.s(i)); }

SeatView seat_decompose(const Configuration& cfg) { return SeatView(cfg); }

SlotArray slots(const SeatView& view) {
    SlotArray out;
    out.levels = view.max_level();
    for (int64_t x = view.lo(); x < view.hi(); ++x) {
        SeatLabel lab = view.label(x);
        if (lab.level == 0 || !lab.up()) continue;
        int l = lab.level;
        out.zeta[l][view.xi(l, x)] += 1;
        if (l >= 2) out.zeta[l - 1][view.xi(l - 1, x) - 1] -= 1;
    }
    for (auto& [k, m] : out.zeta)
        for (auto it = m.begin(); it != m.end();)
            it = it->second == 0 ? m.erase(it) : std::next(it);
    for (int k = 1; k <= out.levels; ++k)
        out.realized[k] = {view.xi(k, view.lo()), view.xi(k, view.hi() - 1)};
    return out;
}

std::string SlotArray::to_json() const {
    nlohmann::ordered_json j;
    j["levels"] = levels;
    int64_t recs = 0;
    auto it = realized.find(1);
    if (it != realized.end()) recs = std::max<int64_t>(0, it->second.second);
    j["records"] = recs;
    nlohmann::ordered_json zj = nlohmann::ordered_json::object();
    for (auto& [k, m] : zeta) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (auto& [i, c] : m) row[std::to_string(i)] = c;
        zj[std::to_string(k)] = row;
    }
    j["zeta"] = zj;
    return j.dump();
}

SlotArray SlotArray::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    SlotArray z;
    z.levels = j.at("levels").get<int>();
    for (auto& [ks, row] : j.at("zeta").items()) {
        int k = std::stoi(ks);
        for (auto& [is, c] : row.items()) z.zeta[k][std::stoll(is)] = c.get<int64_t>();
    }
    return z;
}

Configuration reconstruct(const SlotArray& z, int64_t record_count, int64_t left_records) {
    if (record_count < 1) throw std::invalid_argument("reconstruct: need at least one record");
    std::vector<uint8_t> cells(static_cast<size_t>(left_records + record_count), 0);
    int64_t anchor_pos = left_records;  // array index of the site that ends up at 0

    for (int k = z.levels; k >= 1; --k) {
        Configuration cur(cells, -anchor_pos);
        SeatView view = seat_decompose(cur);
        CapacityCarrier wk = capacity_carrier(cur, k);
        // k-slot sites inside the built window, left to right
        std::vector<std::pair<int64_t, int64_t>> slot_sites;  // (slot index, site)
        for (int64_t x = cur.lo(); x < cur.hi(); ++x) {
            SeatLabel lab = view.label(x);
            if (lab.level == 0 || lab.level > k) slot_sites.emplace_back(view.xi(k, x), x);
        }
        if (!z.zeta.count(k)) continue;
        int64_t lo_slot = slot_sites.front().first, hi_slot = slot_sites.back().first;
        for (auto& [i, c] : z.zeta.at(k)) {
            if (c < 0) throw std::invalid_argument("reconstruct: negative slot count");
            if (c > 0 && (i < lo_slot || i > hi_slot))
                throw WindowError("reconstruct: slot index outside the generated range");
        }
        // insert right-to-left so earlier insertions do not shift later sites
        for (auto it = slot_sites.rbegin(); it != slot_sites.rend(); ++it) {
            int64_t count = z.get(k, it->first);
            if (count == 0) continue;
            int64_t w = wk.at(it->second);
            if (w != 0 && w != k)
                throw std::logic_error("reconstruct: slot-site carrier outside {0,k}");
            std::vector<uint8_t> word;
            word.reserve(static_cast<size_t>(2 * k * count));
            for (int64_t c2 = 0; c2 < count; ++c2)
                for (int j = 0; j < 2 * k; ++j) {
                    bool ball = (w == 0) ? (j < k) : (j >= k);
                    word.push_back(ball ? 1 : 0);
                }
            auto pos = cells.begin() + static_cast<long>(it->second - cur.lo() + 1);
            cells.insert(pos, word.begin(), word.end());
            if (it->second < 0) anchor_pos += static_cast<int64_t>(word.size());
        }
    }
    return Configuration(std::move(cells), -anchor_pos);
}

int64_t offset(const Configuration& cfg, int k) {
    Configuration next = evolve(cfg);
    SeatView v0 = seat_decompose(cfg);
    SeatView v1 = seat_decompose(next);
    int64_t s0 = v0.anchor();
    int64_t s1 = v1.anchor();
    int64_t down0 = 0, up1 = 0;
    for (int64_t y = s0 + 1; y <= 0; ++y) {
        SeatLabel lab = v0.label(y);
        if (lab.level >= 1 && lab.level <= k && !lab.up()) ++down0;
    }
    for (int64_t y = s1 + 1; y <= 0; ++y) {
        SeatLabel lab = v1.label(y);
        if (lab.level >= 1 && lab.level <= k && lab.up()) ++up1;
    }
    return s0 - s1 + 2 * down0 - 2 * up1;
}

CapacityCarrier capacity_carrier(const Configuration& cfg, int capacity) {
    RecordIndex rec = records(cfg);
    CapacityCarrier out;
    out.capacity = capacity;
    out.lo = rec.window_lo();
    out.values.resize(static_cast<size_t>(rec.window_hi() - out.lo + 1));
    int32_t w = 0;
    for (int64_t x = out.lo; x <= rec.window_hi(); ++x) {
        if (cfg.get(x)) {
            if (w < capacity) ++w;
        } else if (w > 0) {
            --w;
        }
        out.values[static_cast<size_t>(x - out.lo)] = w;
    }
    return out;
}

}  // namespace boxball
