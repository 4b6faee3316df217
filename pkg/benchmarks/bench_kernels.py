"""Time the compiled kernels against the interpreted fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""

import argparse
import json
import time

import numpy as np

from kerbinom import kernels
from kerbinom.curves import _odd_chains, valid_aux, valid_betas
from kerbinom.gf import tower_field


def _cases():
    F = tower_field(3, 4)  # 6561 elements
    exp, log, zech = F.arrays
    coeffs = [0, 5, 0, 0, 0, 77, 0, 0]
    qexps = [3**i for i in range(8)]
    yield "ratio_counts F_3^8", lambda k: k.ratio_counts(exp, log, zech, F.p, coeffs, qexps, 0)

    G = tower_field(2, 4)  # 256 elements
    e2, l2, z2 = G.arrays
    base = [2**j for j in range(8)]
    img_s = [G.pow_q(x, 1) for x in base]
    img_sn = [G.pow_q(x, 5) for x in base]
    nz = np.arange(1, 256, dtype=np.int64)
    yield "binomial_nullities F_2^8 (65k maps)", lambda k: k.binomial_nullities(e2, l2, z2, 2, 8, base, img_s, img_sn, nz, nz)

    H = tower_field(3, 5)  # 59049 elements, curve over F_243
    e3, l3, z3 = H.arrays
    sub, head, nxt = _odd_chains(H, 1)
    beta, eta = valid_betas(H)[3], valid_aux(H)[0]
    yield "odd_curve_scan F_243", lambda k: k.odd_curve_scan(e3, l3, z3, 3, sub, head, nxt, 3, eta, beta, False)

    E = tower_field(2, 5)
    e4, l4, z4 = E.arrays
    sub4 = np.array(E.subfield(5), dtype=np.int64)
    yield "even_curve_scan F_32", lambda k: k.even_curve_scan(e4, l4, z4, 2, sub4, 2, 1, valid_betas(E)[0], valid_aux(E)[0], False)
    yield "xi_norm_scan F_3^10", lambda k: k.xi_norm_scan(e3, l3, z3, 3, 3, 243, 729)


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json")
    args = ap.parse_args()
    names = kernels.available()
    rows = []
    print(f"{'kernel':40s}" + "".join(f"{n:>12s}" for n in names) + f"{'speedup':>10s}")
    for label, fn in _cases():
        times = {n: _time(lambda: fn(kernels.get(n)), args.repeat) for n in names}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        rows.append({"kernel": label, **{f"{n}_s": t for n, t in times.items()}, "speedup": speed})
        print(f"{label:40s}" + "".join(f"{times[n]:12.4f}" for n in names) + f"{speed:10.1f}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
