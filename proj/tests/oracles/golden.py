#!/usr/bin/env python3
"""Independent reference values for the C++ test suites.

Everything here is evaluated with mpmath at 40 significant digits or by
exhaustive enumeration; nothing imports the C++ code. The printed values
are frozen into tests/*.cpp.
"""
import itertools
from mpmath import mp, mpf, log, exp, binomial, floor

mp.dps = 40


def h(q):
    q = mpf(q)
    if q == 0 or q == 1:
        return mpf(0)
    return -q * log(q, 2) - (1 - q) * log(1 - q, 2)


def final_rate(q, f=mpf("1.2")):
    return (1 - h(q)) ** 2 - f * h(q)


def key_rate_bound(n, q, leak, es, ec):
    return 1 - h(q) - leak / (4 * n) - log(2 / (es ** 2 * ec), 2) / (4 * n)


def pa_discard(n, q):
    hq = h(q)
    big_r = 4 * n * (1 - hq)
    return big_r * h(mpf(q) / (1 - hq)), 4 * n * hq * (1 - hq)


def binding(p, n_tol, e_tol, grid, variant):
    p, e_tol = mpf(p), mpf(e_tol)
    fl = int(floor(e_tol * n_tol))
    total = 1 + sum((2 ** k - 1) * binomial(n_tol, k) for k in range(1, fl + 1))
    best = None
    for i in range(grid):
        d = e_tol + (mpf("0.5") - e_tol) * (i + mpf("0.5")) / grid
        if variant == "literal":
            g = (d * n_tol - fl) ** 2 / (1 - n_tol)
        else:
            g = -2 * (d * n_tol - fl) ** 2 / n_tol
        v = (1 - exp(g)) * mpf(2) ** (1 - (1 - h(d)) * n_tol) + 2 * exp(g)
        best = v if best is None or v < best else best
    if p == 0:
        return mpf(0)
    return p * mpf(2) ** h(p) * best * total


def enumerate_commit_probability(n, x):
    """Brute force over all 2^(4N) basis patterns and 2^(2N) substrings."""
    balanced = sorted(s for s in itertools.product((0, 1), repeat=2 * n) if sum(s) == n)
    codebook = set(balanced[:x])
    hits = 0
    for bases in itertools.product((0, 1), repeat=4 * n):
        if sum(bases) != 2 * n:
            continue
        for sub in itertools.product((0, 1), repeat=2 * n):
            if sub in codebook:
                hits += 1
    return hits, 2 ** (4 * n) * 2 ** (2 * n)


def count_paths_complete(k):
    nodes = list(range(k))
    src, dst = 0, k - 1
    mids = nodes[1:-1]
    total = 0
    for r in range(len(mids) + 1):
        total += sum(1 for _ in itertools.permutations(mids, r))
    return total


if __name__ == "__main__":
    print("h(0.11)", h("0.11"))
    print("log2 C(400,200)", log(binomial(400, 200), 2))
    print("C(200,100)", int(binomial(200, 100)))
    q = mpf("0.05")
    print("key_rate_bound N=100 q=.05 leak=4N*1.2*h eps=1e-9",
          key_rate_bound(100, q, 400 * mpf("1.2") * h(q), mpf("1e-9"), mpf("1e-9")))
    print("pa_discard N=100 q=.02", pa_discard(100, "0.02"))
    print("pa_discard N=1 q=.25", pa_discard(1, "0.25"))
    print("final_rate(0.02)", final_rate("0.02"))
    for qq in ("0.01", "0.1"):
        print("final_rate", qq, final_rate(qq))
    lo, hi = mpf(0), mpf("0.2")
    for _ in range(200):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if final_rate(mid) > 0 else (lo, mid)
    print("root of final rate", lo)
    print("r'(0, 0.001, 100)", final_rate(0) - mpf("0.001") + mpf("0.001") * log(mpf("0.001"), 2) / 200)
    for n, x in ((1, 2), (2, 6), (3, 20), (3, 7)):
        hits, total = enumerate_commit_probability(n, x)
        print("commit_probability enum", n, x, hits, "/", total, mpf(hits) / total)
    balanced6 = sorted(s for s in itertools.product((0, 1), repeat=6) if sum(s) == 3)
    print("unrank(3,9)", "".join(map(str, balanced6[9])))
    print("K5 simple paths", count_paths_complete(5))
    for v in ("literal", "hoeffding"):
        print("binding p=.1 N=20 E=.05 grid=1e4", v, binding("0.1", 20, "0.05", 10000, v))
    p_n2 = mpf(420) / 4096
    for v in ("literal", "hoeffding"):
        print("binding p=420/4096 N=2 E=.25 grid=1e4", v, binding(p_n2, 2, "0.25", 10000, v))
    for v in ("literal", "hoeffding"):
        print("binding sweep p=.1 E=.05 grid=400", v,
              [float(binding("0.1", n, "0.05", 400, v)) for n in (10, 20, 40, 80, 160, 320)])
