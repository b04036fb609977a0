#!/usr/bin/env python3
"""Throwaway arbitration sim: measure v_k and D_k for tagged k-solitons in the
ρ=0.25 Bernoulli BBS directly, to settle which of the paper's two conflicting
closed-form sets is physically correct. Not part of the deliverable."""
import numpy as np
import sys

def evolve(a):
    # a: int8 array over window; zeros outside. Returns (Ta, W, records_mask).
    s = np.cumsum(2 * a.astype(np.int64) - 1)
    m = np.minimum(np.minimum.accumulate(s), 0)
    W = s - m
    Wprev = np.concatenate(([0], W[:-1]))
    Ta = a - (W - Wprev).astype(a.dtype) + 0
    Ta = (a.astype(np.int64) - W + Wprev).astype(np.int8)
    rec = (a == 0) & (Wprev == 0)
    return Ta, W, rec

def ts_solitons(bits, base):
    """TS algorithm on an excursion body (list of 0/1), absolute sites = base+i.
    Returns list of (size, sorted site tuple)."""
    # runs: list of [value, [sites...]]
    runs = []
    for i, b in enumerate(bits):
        if runs and runs[-1][0] == b:
            runs[-1][1].append(base + i)
        else:
            runs.append([b, [base + i]])
    out = []
    while True:
        if not any(r[0] == 1 for r in runs):
            break
        sel = -1
        for i in range(len(runs) - 1):
            if len(runs[i + 1][1]) >= len(runs[i][1]):
                sel = i
                break
        assert sel >= 0, "TS stuck"
        k = len(runs[sel][1])
        sites = runs[sel][1] + runs[sel + 1][1][:k]
        out.append((k, tuple(sorted(sites))))
        runs[sel + 1][1] = runs[sel + 1][1][k:]
        if not runs[sel + 1][1]:
            del runs[sel + 1]
        del runs[sel]
        # merge neighbors
        i = max(sel - 1, 0)
        while i + 1 < len(runs):
            if runs[i][0] == runs[i + 1][0]:
                runs[i][1] += runs[i + 1][1]
                del runs[i + 1]
            else:
                i += 1
    return out

def excursion_of(a, lo, rec_sites, pos):
    # rec_sites sorted absolute; excursion containing pos: [r_i, r_{i+1})
    j = np.searchsorted(rec_sites, pos, side='right') - 1
    r0 = rec_sites[j]
    r1 = rec_sites[j + 1] if j + 1 < len(rec_sites) else lo + len(a)
    return r0, r1

def run_replica(rng, rho, k, n, left_margin, right_extent):
    lo = -left_margin
    L = left_margin + right_extent
    a = (rng.random(L) < rho).astype(np.int8)
    Ta, W, rec = evolve(a)
    rec_sites = np.concatenate(([lo - 1], np.nonzero(rec)[0] + lo))
    j = np.searchsorted(rec_sites, 0, side='right') - 1
    s0 = rec_sites[j]
    tagged = None
    for jj in range(j, len(rec_sites) - 1):
        r0, r1 = rec_sites[jj], rec_sites[jj + 1]
        body = a[r0 - lo + 1:r1 - lo]
        if body.sum() == 0:
            continue
        sols = ts_solitons(list(body), r0 + 1)
        cand = [(min(s) - 1, s) for (sz, s) in sols if sz == k and min(s) - 1 >= s0]
        if cand:
            cand.sort()
            tagged = cand[0][1]
            break
    if tagged is None:
        return None
    X0 = min(tagged) - 1
    X = X0
    tails = sorted(x for x in tagged if a[x - lo] == 0)
    for step in range(n):
        a = Ta
        Ta, W, rec = evolve(a)          # rec = records of current a
        rec_sites = np.concatenate(([lo - 1], np.nonzero(rec)[0] + lo))
        new_heads = set(tails)
        hmin = min(new_heads)
        jj = np.searchsorted(rec_sites, hmin, side='right') - 1
        r0 = rec_sites[jj]
        r1 = rec_sites[jj + 1] if jj + 1 < len(rec_sites) else lo + L
        body = a[r0 - lo + 1:r1 - lo]
        sols = ts_solitons(list(body), r0 + 1)
        match = [s for (sz, s) in sols if sz == k and set(x for x in s if a[x - lo] == 1) == new_heads]
        assert len(match) == 1, f"tracking failed: {len(match)} matches"
        tagged = match[0]
        X = min(tagged) - 1
        tails = sorted(x for x in tagged if a[x - lo] == 0)
        if X > lo + L - 40:
            return None  # ran out of window; drop replica
    return X - X0

def sanity():
    # Figure 1 check
    s = "1100011100110010110000"
    a = np.array([int(c) for c in s], dtype=np.int8)
    Ta, W, rec = evolve(a)
    Wfull = np.concatenate(([0], W))
    assert list(Wfull) == [0,1,2,1,0,0,1,2,3,2,1,2,3,2,1,2,1,2,3,2,1,0,0], list(Wfull)
    assert "".join(map(str, Ta)) == "0011000011001101001110", "".join(map(str, Ta))
    # Fig 2 census
    s2 = "01100011100110010110000"
    a2 = np.array([int(c) for c in s2], dtype=np.int8)
    _, W2, rec2 = evolve(a2)
    recs = list(np.nonzero(rec2)[0])
    assert recs == [0, 5, 22], recs
    allsol = []
    for i in range(len(recs) - 1):
        body = a2[recs[i] + 1:recs[i + 1]]
        if body.sum():
            allsol += ts_solitons(list(body), recs[i] + 1)
    census = sorted(sz for sz, _ in allsol)
    assert census == [1, 2, 2, 2, 3], census
    print("sanity OK")

def main():
    sanity()
    rho = 0.25
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 400
    E = int(sys.argv[2]) if len(sys.argv) > 2 else 3000
    for k in (1, 2):
        rng = np.random.default_rng(12345 + k)
        left = 6 * n + 200
        right = int(2.6 * n + 8 * np.sqrt(2.0 * n) + 300)
        ys = []
        dropped = 0
        for e in range(E):
            y = run_replica(rng, rho, k, n, left, right)
            if y is None:
                dropped += 1
                continue
            ys.append(y)
        ys = np.array(ys, dtype=float)
        vhat = ys.mean() / n
        se_v = ys.std(ddof=1) / np.sqrt(len(ys)) / n
        dhat = ys.var(ddof=1) / n
        se_d = dhat * np.sqrt(2.0 / len(ys))
        print(f"k={k}: E_eff={len(ys)} dropped={dropped}")
        print(f"  v_hat = {vhat:.5f} +- {se_v:.5f}   candidates: v1=0.8 | v2: 16/7={16/7:.5f} vs 8/91={8/91:.5f}")
        print(f"  D_hat = {dhat:.5f} +- {se_d:.5f}   candidates: D1: 0.288 vs 0.18 | D2: {8160/4459:.4f} vs {5568/4459:.4f}")

if __name__ == "__main__":
    main()
