#include "boxball/skip.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace boxball {

SkipResult skip(const Configuration& cfg, int k) {
    SeatView view = seat_decompose(cfg);
    int64_t shift = view.xi(k, 0);
    // surviving sites: records and seats of level > k; site y lands at
    // xi_k(y) - shift
    std::vector<int64_t> kept;
    for (int64_t y = view.lo(); y < view.hi(); ++y) {
        SeatLabel lab = view.label(y);
        if (lab.level == 0 || lab.level > k) kept.push_back(y);
    }
    if (kept.empty()) return SkipResult{Configuration({}, 0), shift};
    int64_t new_lo = view.xi(k, kept.front()) - shift;
    std::vector<uint8_t> cells(kept.size());
    for (size_t j = 0; j < kept.size(); ++j)
        cells[j] = static_cast<uint8_t>(cfg.get(kept[j]));
    return SkipResult{Configuration(std::move(cells), new_lo), shift};
}

Configuration skip_recentered(const Configuration& cfg, int k) {
    return recenter(skip(cfg, k).image);
}

int64_t J_stop(const SlotArray& z, int k, int64_t i) {
    auto it = z.zeta.find(k);
    if (it == z.zeta.end()) throw NotFoundError("J_stop: no occupied slots at that level");
    const auto& row = it->second;  // ordered map index -> count (nonzero)
    if (i >= 1) {
        int64_t seen = 0;
        for (auto& [j, c] : row) {
            if (j < 0) continue;
            if (++seen == i) return j;
        }
    } else {
        int64_t want = -i + 1, seen = 0;
        for (auto rit = row.rbegin(); rit != row.rend(); ++rit) {
            if (rit->first >= 0) continue;
            if (++seen == want) return rit->first;
        }
    }
    throw NotFoundError("J_stop: not enough occupied slots");
}

std::string AuditReport::to_json() const {
    nlohmann::ordered_json j;
    j["ok"] = ok;
    j["checks"] = checks;
    j["failures"] = failures;
    return j.dump(2);
}

namespace {

/// Positions at times 0..n of the left-to-right j-th k-soliton.
std::vector<int64_t> track_positions(const Configuration& cfg, int k, size_t j, int64_t n) {
    Configuration cur = cfg;
    Soliton s = identify(cur).of_size(k).at(j);
    std::vector<int64_t> xs{s.position};
    for (int64_t m = 0; m < n; ++m) {
        Configuration next = evolve(cur);
        SolitonSet nset = identify(next);
        s = track_step(s, nset, next);
        xs.push_back(s.position);
        cur = std::move(next);
    }
    return xs;
}

/// Sum of zeta_l over occupied slot indices in [a, b] (either bound may be
/// absent, meaning the sum extends over the whole realized side).
int64_t zeta_range_sum(const SlotArray& z, int l, std::optional<int64_t> a,
                       std::optional<int64_t> b) {
    auto it = z.zeta.find(l);
    if (it == z.zeta.end()) return 0;
    int64_t total = 0;
    for (auto& [j, c] : it->second) {
        if (a && j < *a) continue;
        if (b && j > *b) continue;
        total += c;
    }
    return total;
}

}  // namespace

AuditReport audit_counting(const Configuration& cfg, int k, int64_t i, int64_t n) {
    AuditReport rep;
    Configuration eta = recenter(cfg);
    SolitonSet set0 = identify(eta);
    auto vi = set0.vector_index(k, i);
    if (!vi) throw NotFoundError("audit_counting: tagged soliton not present");

    TaggedTrajectory tr = run_tagged(eta, k, i, n);
    SeatView view = seat_decompose(eta);
    SlotArray z = slots(view);
    const std::string cfg_text = eta.to_text();

    // Cumulative overtake counts vs slot sums traversed in the skipped image.
    for (int l = 1; l < k; ++l) {
        ++rep.checks;
        Configuration psi = recenter(skip(eta, l).image);
        SolitonSet pset = identify(psi);
        auto pvi = pset.vector_index(k - l, i);
        if (!pvi) {
            rep.fail("skipped image lost the tagged soliton; config " + cfg_text);
            continue;
        }
        auto xs = track_positions(psi, k - l, *pvi, n);
        int64_t lhs = tr.sum_overtakes(l);
        int64_t rhs = 0;
        for (int64_t jj = xs.front() + 1; jj <= xs.back(); ++jj) rhs += z.get(l, jj);
        if (lhs != rhs)
            rep.fail("overtake count vs slot sum mismatch at level " + std::to_string(l) + ": " +
                     std::to_string(lhs) + " != " + std::to_string(rhs) + "; config " + cfg_text);
    }

    // Blocked steps vs the record indicator at the frozen slot of the
    // k-skipped image.
    const int64_t slot = view.xi(k, set0.of_size(k)[*vi].position);
    Configuration psi_k = recenter(skip(eta, k).image);
    {
        ++rep.checks;
        int64_t m_formula = 0;
        Configuration cur = psi_k;
        for (int64_t m = 0; m < n; ++m) {
            if (!records(cur).is_record(slot)) ++m_formula;
            cur = evolve(cur);
        }
        if (m_formula != tr.blocked_steps)
            rep.fail("blocked steps vs record formula: " + std::to_string(tr.blocked_steps) +
                     " != " + std::to_string(m_formula) + "; config " + cfg_text);
    }

    // Two-sided bounds on the per-size overtaken-by counts, via the
    // crossing indices of the (l-k)-solitons in the k-skipped image.
    {
        SolitonSet pset = identify(psi_k);
        RecordIndex prec = records(psi_k);
        for (auto& [l_big, group_list] : set0.by_size()) {
            if (l_big <= k) continue;
            const int l = l_big;
            int64_t m_kl = 0;
            if (auto it = tr.overtaken_by.find(l); it != tr.overtaken_by.end()) m_kl = it->second;
            ++rep.checks;
            if (!pset.has_size(l - k)) {
                rep.fail("skipped image lost the overtaker size " + std::to_string(l - k) +
                         "; config " + cfg_text);
                continue;
            }
            auto groups = volume_groups(pset, prec, l - k);
            // volume index of group g: 1 + g - (first group at/right of the origin)
            int64_t g0 = 0;
            while (g0 < static_cast<int64_t>(groups.size()) &&
                   pset.of_size(l - k)[groups[static_cast<size_t>(g0)].rep].position < 0)
                ++g0;
            std::vector<std::vector<int64_t>> paths;
            paths.reserve(groups.size());
            for (auto& g : groups) paths.push_back(track_positions(psi_k, l - k, g.rep, n));
            auto sigma = [&](int64_t t) -> std::optional<int64_t> {
                for (size_t g = 0; g < paths.size(); ++g)
                    if (paths[g][static_cast<size_t>(t)] >= slot)
                        return static_cast<int64_t>(g) - g0 + 1;
                return std::nullopt;
            };
            auto s_0 = sigma(0), s_n = sigma(n);
            if (!s_n) {
                if (m_kl != 0)
                    rep.fail("no crossing index at time n but overtakes recorded; config " +
                             cfg_text);
                continue;
            }
            std::optional<int64_t> lo_a = J_stop(z, l, *s_n);
            std::optional<int64_t> hi_a = s_0 ? std::optional<int64_t>(J_stop(z, l, *s_0) - 1)
                                              : std::nullopt;
            std::optional<int64_t> lo_b = std::optional<int64_t>(*lo_a - 1);
            std::optional<int64_t> hi_b = s_0 ? std::optional<int64_t>(J_stop(z, l, *s_0))
                                              : std::nullopt;
            int64_t lower = zeta_range_sum(z, l, lo_a, hi_a);
            int64_t upper = zeta_range_sum(z, l, lo_b, hi_b);
            if (!(lower <= m_kl && m_kl <= upper))
                rep.fail("overtaken-by bounds violated at size " + std::to_string(l) + ": " +
                         std::to_string(lower) + " <= " + std::to_string(m_kl) + " <= " +
                         std::to_string(upper) + " fails; config " + cfg_text);
        }
    }

    // Position formula and the blocked-step sandwich.
    {
        ++rep.checks;
        int64_t rhs = tr.positions.front() + k * (n - tr.blocked_steps);
        for (auto& m : tr.overtakes)
            for (auto& [l, c] : m) rhs += 2 * l * c;
        if (tr.positions.back() != rhs)
            rep.fail("position formula mismatch; config " + cfg_text);

        ++rep.checks;
        int64_t twice = 0;
        for (auto& [l, c] : tr.overtaken_by) twice += 2 * c;
        if (!(twice <= tr.blocked_steps && tr.blocked_steps <= 1 + twice))
            rep.fail("blocked-step sandwich violated; config " + cfg_text);
    }

    return rep;
}

}  // namespace boxball
