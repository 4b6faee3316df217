"""Batch front end: every command writes JSON lines and ends with a summary object.

Exit codes: 0 all checks passed, 1 a check failed, 2 invalid input,
3 the run would exceed the size guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__, kernels
from .binomial import (
    DegenerateError,
    binomial,
    classify,
    delta_binomial,
    find_witness,
    kernel_bound_ok,
    norm_class_representatives,
    normalize_s,
    witness_from_xi_any_x0,
)
from .curves import CurveSpec, count, params_from_curve_point, sweep_specs
from .gf import FieldError, is_prime, tower_field
from .linpoly import is_scattered, kernel_dimension
from .rmcode import DegenerateCodeError, rank_code

SIZE_LIMIT = 2**30
TABLE_LIMIT = 2**20


class SizeGuard(Exception):
    pass


def _prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1 and is_prime(p)


def _ctx(args):
    if not _prime_power(args.q):
        raise FieldError(f"q={args.q} is not a prime power")
    if args.n < 1:
        raise FieldError("n must be positive")
    if args.q ** (2 * args.n) > 2**32:
        raise SizeGuard(f"F_(q^2n) of order {args.q ** (2 * args.n)} exceeds 2^32")
    return tower_field(args.q, args.n)


def _guard(ops: int, what: str) -> None:
    if ops > SIZE_LIMIT:
        raise SizeGuard(f"{what}: about {ops} field operations exceeds 2^30")


def _need_tables(ctx) -> None:
    if ctx.order > TABLE_LIMIT:
        raise SizeGuard(f"enumeration needs log tables; field order {ctx.order} exceeds 2^20")


def _elem(ctx, text, name):
    if text is None:
        raise FieldError(f"--{name} is required")
    return ctx.parse(text)


def _pmap(fn, items, threads):
    """Order-preserving map, in worker processes when threads > 1."""
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (threads * 8))
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


# --- workers (module level so they pickle) -------------------------------------


def _witness_row(job):
    q, n, s, delta = job
    ctx = tower_field(q, n)
    try:
        cert = find_witness(ctx, s, delta)
    except DegenerateError as exc:
        return {"delta": delta, "status": "EXCLUDED", "reason": str(exc)}
    if cert is None:
        return {"delta": delta, "status": "NOT_FOUND", "norm": ctx.norm_rel(delta)}
    row = cert.to_json()
    row["dim"] = cert.kernel_dimension()
    row["status"] = "OK" if row["verified"] and row["dim"] == 2 else "FAIL"
    return row


def _class_row(job):
    q, n, s, alpha, xi = job
    ctx = tower_field(q, n)
    cert = witness_from_xi_any_x0(xi, s, ctx)
    row = cert.to_json()
    row["norm"] = alpha
    row["dim"] = cert.kernel_dimension()
    row["status"] = "OK" if row["verified"] and row["dim"] == 2 and ctx.norm_rel(cert.delta) == alpha else "FAIL"
    return row


def _classify_row(job):
    q, n, s, delta, exhaustive = job
    ctx = tower_field(q, n)
    c = classify(ctx, s, delta, exhaustive=exhaustive)
    row = {"delta": delta, "norm": ctx.norm_rel(delta), **c.as_json()}
    if exhaustive and c.kind not in ("UNKNOWN",) and ctx.order <= TABLE_LIMIT:
        row["enumerated"] = is_scattered(delta_binomial(ctx, delta, s))
        row["consistent"] = row["enumerated"] == c.scattered
    return row


def _curve_row(job):
    q, n, s, beta, aux, verify = job
    ctx = tower_field(q, n)
    spec = CurveSpec(ctx, s, beta, aux)
    cnt = count(spec, collect=verify)
    row = cnt.to_json()
    row["good_positive"] = cnt.good > 0
    if verify:
        signs = (1, -1) if spec.parity == "odd" else (None,)
        stats = {"certificates": 0, "verified": 0, "conditions_failed": 0, "alpha_match": {}}
        for S, Z in cnt.good_points:
            cert_ok = None
            for sign in signs:
                try:
                    r = params_from_curve_point(spec, S, Z, sign)
                except DegenerateError:
                    continue
                if not r.conditions_ok:
                    stats["conditions_failed"] += 1
                key = str(sign)
                m = stats["alpha_match"].setdefault(key, [0, 0])
                m[0 if r.alpha_matches else 1] += 1
                if cert_ok is None:
                    cert_ok = r.certificate.verify()
            if cert_ok is not None:
                stats["certificates"] += 1
                stats["verified"] += cert_ok
        row["roundtrip"] = stats
        row["roundtrip_ok"] = stats["certificates"] == stats["verified"] and not stats["conditions_failed"]
    return row


# --- commands ---------------------------------------------------------------------


def cmd_kernel(args, emit):
    ctx = _ctx(args)
    a, b = ctx.parse(args.a or "0"), ctx.parse(args.b or "0")
    f = binomial(ctx, a, b, args.s)
    dim = kernel_dimension(f)
    row = {
        "q": ctx.q,
        "n": ctx.n,
        "s": normalize_s(args.s, ctx.n),
        "a": a,
        "b": b,
        "dim": dim,
        "norm_a": ctx.norm_rel(a),
        "norm_b": ctx.norm_rel(b),
        "bound_ok": kernel_bound_ok(ctx, a, b, dim),
    }
    emit(row)
    return {"rows": 1, "ok": row["bound_ok"]}


def cmd_witness(args, emit):
    ctx = _ctx(args)
    _need_tables(ctx)
    s = normalize_s(args.s, ctx.n)
    _guard(ctx.order * 40, "xi scan")
    if args.per_class:
        reps = norm_class_representatives(ctx, s)
        jobs = [(ctx.q, ctx.n, s, al, xi) for al, xi in sorted(reps.items()) if al != 1]
        rows = _pmap(_class_row, jobs, args.threads)
    else:
        if args.all:
            deltas = [d for d in range(1, ctx.order) if ctx.norm_rel(d) not in (0, 1)]
        else:
            d = _elem(ctx, args.delta, "delta")
            if ctx.norm_rel(d) in (0, 1):
                raise DegenerateError("N(delta) must not be 0 or 1")
            deltas = [d]
        _guard(len(deltas) * ctx.order, "transport")
        rows = _pmap(_witness_row, [(ctx.q, ctx.n, s, d) for d in deltas], args.threads)
    counts = {}
    for r in rows:
        emit(r)
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    return {"rows": len(rows), "status": counts, "ok": counts.get("FAIL", 0) == 0}


def cmd_classify(args, emit):
    ctx = _ctx(args)
    s = normalize_s(args.s, ctx.n)
    if args.delta is not None:
        deltas = [_elem(ctx, args.delta, "delta")]
    else:
        deltas = list(range(1, ctx.order))
    if args.exhaustive:
        _need_tables(ctx)
        _guard(len(deltas) * ctx.order * 2 * ctx.n, "exhaustive classification")
    rows = _pmap(_classify_row, [(ctx.q, ctx.n, s, d, args.exhaustive) for d in deltas], args.threads)
    kinds = {}
    bad = 0
    for r in rows:
        emit(r)
        key = f"{r['kind']}:{r['scattered']}"
        kinds[key] = kinds.get(key, 0) + 1
        bad += r.get("consistent") is False
    return {"rows": len(rows), "kinds": kinds, "inconsistent": bad, "ok": bad == 0}


def _curve_aux(args, ctx):
    if ctx.p == 2:
        return _elem(ctx, args.eps, "eps")
    return _elem(ctx, args.eta, "eta")


def cmd_curve(args, emit):
    ctx = _ctx(args)
    _need_tables(ctx)
    _guard(ctx.q ** (2 * ctx.n) * 8, "curve scan")
    beta = _elem(ctx, args.beta, "beta")
    row = _curve_row((ctx.q, ctx.n, args.s, beta, _curve_aux(args, ctx), args.verify_points))
    if args.sign is not None:
        row["sign"] = args.sign
    emit(row)
    return {"rows": 1, "ok": row["ok"] and row.get("roundtrip_ok", True)}


def cmd_curve_sweep(args, emit):
    ctx = _ctx(args)
    _need_tables(ctx)
    specs = list(sweep_specs(ctx, args.s, all_aux=args.all_aux))
    _guard(len(specs) * ctx.q ** (2 * ctx.n) * 8, "curve sweep")
    jobs = [(ctx.q, ctx.n, sp.s, sp.beta, sp.aux, args.verify_points) for sp in specs]
    rows = _pmap(_curve_row, jobs, args.threads)
    fails = 0
    for r in rows:
        emit(r)
        fails += not (r["ok"] and r["good_positive"] and r.get("roundtrip_ok", True))
    return {"rows": len(rows), "failures": fails, "ok": fails == 0}


def cmd_mrd(args, emit):
    ctx = _ctx(args)
    _need_tables(ctx)
    s = normalize_s(args.s, ctx.n)
    d = _elem(ctx, args.delta, "delta")
    if not d:
        raise DegenerateCodeError("delta must be nonzero")
    code = rank_code(delta_binomial(ctx, d, s))
    rep = code.report({"n": ctx.n, "s": s, "delta": d, "norm": ctx.norm_rel(d)})
    rep["max_weight"] = code.spectrum.max_weight
    rep["distance_is_m_minus_max_weight"] = code.min_distance == code.m - code.spectrum.max_weight
    emit(rep)
    return {"rows": 1, "ok": rep["distance_is_m_minus_max_weight"]}


COMMANDS = {
    "kernel": cmd_kernel,
    "witness": cmd_witness,
    "classify": cmd_classify,
    "curve": cmd_curve,
    "curve-sweep": cmd_curve_sweep,
    "mrd": cmd_mrd,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kerbinom", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, required=True)
    common.add_argument("--n", type=int, required=True)
    common.add_argument("--s", type=int, default=1)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", help="write JSON lines here instead of stdout")
    common.add_argument("--backend", choices=kernels.available())
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", parents=[common], help="kernel dimension of f_{a,b,s}")
    p.add_argument("--a")
    p.add_argument("--b")

    p = sub.add_parser("witness", parents=[common], help="two-dimensional kernel certificates")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--delta")
    g.add_argument("--all", action="store_true", help="every delta with N(delta) not in {0, 1}")
    g.add_argument("--per-class", action="store_true", help="one certificate per reachable norm class")

    p = sub.add_parser("classify", parents=[common], help="scatteredness of L_{delta,s}")
    p.add_argument("--delta")
    p.add_argument("--exhaustive", action="store_true", help="enumerate when no criterion applies")

    helps = {"curve": "point counts on one auxiliary curve", "curve-sweep": "point counts over every valid beta"}
    for name in ("curve", "curve-sweep"):
        p = sub.add_parser(name, parents=[common], help=helps[name])
        p.add_argument("--verify-points", action="store_true", help="run every good point through the pipeline")
        if name == "curve":
            p.add_argument("--beta")
            p.add_argument("--eta")
            p.add_argument("--eps")
            p.add_argument("--sign", type=int, choices=(1, -1))
        else:
            p.add_argument("--all-aux", action="store_true", help="all eta / eps instead of the least one")

    p = sub.add_parser("mrd", parents=[common], help="rank distribution of C_f for f = f_{delta,s}")
    p.add_argument("--delta")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.backend:
        kernels.use(args.backend)
    out = open(args.out, "w") if args.out else sys.stdout

    def emit(obj):
        out.write(json.dumps(obj, sort_keys=True) + "\n")

    code = 0
    try:
        summary = COMMANDS[args.command](args, emit)
        code = 0 if summary.get("ok") else 1
    except SizeGuard as exc:
        summary, code = {"ok": False, "error": "size", "message": str(exc)}, 3
    except (FieldError, DegenerateError, DegenerateCodeError, ValueError) as exc:
        summary, code = {"ok": False, "error": "input", "message": str(exc)}, 2
    except AssertionError as exc:
        summary, code = {"ok": False, "error": "assertion", "message": str(exc)}, 1
    summary = {"summary": True, "command": args.command, **summary}
    emit(summary)
    if out is not sys.stdout:
        out.close()
    return code


if __name__ == "__main__":
    sys.exit(main())
