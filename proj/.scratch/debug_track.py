#!/usr/bin/env python3
import numpy as np
from arbitrate import evolve, ts_solitons

def full_identify(a, lo):
    _, W, rec = evolve(a)
    recs = [lo - 1] + list(np.nonzero(rec)[0] + lo)
    out = []
    for i in range(len(recs) - 1):
        body = a[recs[i] - lo + 1:recs[i + 1] - lo]
        if body.sum():
            out += ts_solitons(list(body), recs[i] + 1)
    # trailing segment after last record (should be empty of balls if window padded)
    body = a[recs[-1] - lo + 1:]
    if body.sum():
        out += ts_solitons(list(body), recs[-1] + 1)
    return out

def track_demo(s, k, n, name):
    a = np.zeros(len(s) + 6 * n + 20, dtype=np.int8)
    a[:len(s)] = [int(c) for c in s]
    lo = 0
    sols = full_identify(a, lo)
    tagged = sorted(s2 for sz, s2 in sols if sz == k)[0]
    xs = [min(tagged) - 1]
    tails = sorted(x for x in tagged if a[x - lo] == 0)
    for t in range(n):
        a, W, rec = evolve(a)
        sols = full_identify(a, lo)
        nh = set(tails)
        match = [s2 for sz, s2 in sols if sz == k and set(x for x in s2 if a[x - lo] == 1) == nh]
        if len(match) != 1:
            print(f"{name} k={k} t={t+1}: MATCH FAIL: want heads {sorted(nh)}")
            for sz, s2 in sols:
                print("   sol", sz, s2, "heads", [x for x in s2 if a[x-lo]==1])
            return None
        tagged = match[0]
        xs.append(min(tagged) - 1)
        tails = sorted(x for x in tagged if a[x - lo] == 0)
    print(f"{name} k={k}: X series {xs}")
    return xs

# ex:phase_shift — expect 3-sol: -1,2,5,10 ; 1-sol: 6,7,7,7
track_demo("111000010000000000", 3, 3, "fig3")
track_demo("111000010000000000", 1, 3, "fig3")
# ex:int_2 — expect 2-sol: -1,1,3,11,13
track_demo("110001010100000000000000", 2, 4, "int2")
# ex:int_1 — 2-sols: left: -1,1,3,5,7,11 ; right: 3,5,7,11,13,15
track_demo("110011000101000000000000000", 2, 5, "int1")
# ex:int_3 — 2-sol: 5,5,5,9 ; 3-sol: -1,2,11,14 ; 1-sol: 7,7,7,7
track_demo("111000110100000000000000", 3, 3, "int3")
track_demo("111000110100000000000000", 2, 3, "int3")
track_demo("111000110100000000000000", 1, 3, "int3")

# random stress until failure
rng = np.random.default_rng(7)
for trial in range(400):
    L = 60
    s = "".join("1" if rng.random() < 0.3 else "0" for _ in range(L))
    for k in (1, 2, 3):
        a0 = np.zeros(L + 200, dtype=np.int8)
        a0[:L] = [int(c) for c in s]
        sols = full_identify(a0, 0)
        if not any(sz == k for sz, _ in sols):
            continue
        a = a0.copy()
        tagged = sorted(s2 for sz, s2 in sols if sz == k)[0]
        tails = sorted(x for x in tagged if a[x] == 0)
        ok = True
        for t in range(12):
            a, W, rec = evolve(a)
            sols = full_identify(a, 0)
            nh = set(tails)
            match = [s2 for sz, s2 in sols if sz == k and set(x for x in s2 if a[x] == 1) == nh]
            if len(match) != 1:
                print(f"STRESS FAIL trial={trial} k={k} t={t+1} config={s}")
                print("  want heads", sorted(nh))
                ok = False
                break
            tagged = match[0]
            tails = sorted(x for x in tagged if a[x] == 0)
        if not ok:
            raise SystemExit(1)
print("stress OK")
