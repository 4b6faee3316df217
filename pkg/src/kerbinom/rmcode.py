"""Rank-metric codes C_f = {x -> a f(x) + b x : a, b in F_{q^m}}.

Codewords are never written out as matrices.  For a != 0 the rank of
a f + b x is m minus the weight of the point <(1, -b/a)> of L_f, and each
such ratio is hit by q^m - 1 pairs (a, b); for a = 0 the rank is m.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linpoly import QPolynomial, WeightSpectrum, kernel_dimension, ratio_buckets, weight_of_bucket, weight_spectrum


class DegenerateCodeError(ValueError):
    pass


def _check(f: QPolynomial) -> None:
    if f.is_zero():
        raise DegenerateCodeError("f is the zero map")
    if all(c == 0 for c in f.coeffs[1:]):
        raise DegenerateCodeError("f is a scalar multiple of x; C_f is not 2-dimensional")


@dataclass(frozen=True)
class RankCode:
    f: QPolynomial
    spectrum: WeightSpectrum

    @property
    def q(self) -> int:
        return self.f.q

    @property
    def m(self) -> int:
        return self.f.m

    @property
    def min_distance(self) -> int:
        return self.m - self.spectrum.max_weight

    @property
    def is_mrd(self) -> bool:
        return self.min_distance == self.m - 1

    def rank_distribution(self) -> dict[int, int]:
        q, m = self.q, self.m
        qm1 = q**m - 1
        dist: dict[int, int] = {0: 1}
        dist[m] = qm1  # a = 0, b != 0
        # one entry per lam in F_{q^m}; weight 0 means a f + b x is invertible
        points = self.spectrum.size
        if points != q**m:
            raise ArithmeticError("L_f does not have one point per lambda")
        for w, c in self.spectrum.entries.items():
            dist[m - w] = dist.get(m - w, 0) + c * qm1
        return dict(sorted(dist.items()))

    def report(self, params: dict | None = None) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "params": [self.m, self.m, self.q, self.min_distance],
            "mrd": self.is_mrd,
            "rank_distribution": {str(k): v for k, v in self.rank_distribution().items()},
            **({"binomial": params} if params else {}),
        }


def _full_spectrum(f: QPolynomial, backend: str | None = None) -> WeightSpectrum:
    """Weights of all q^m points <(1, lam)>, including weight-0 ones."""
    counts = ratio_buckets(f, backend)
    entries: dict[int, int] = {}
    for c in counts.tolist():
        w = weight_of_bucket(int(c), f.q) if c else 0
        entries[w] = entries.get(w, 0) + 1
    return WeightSpectrum(f.q, f.m, dict(sorted(entries.items())))


def rank_code(f: QPolynomial, backend: str | None = None) -> RankCode:
    _check(f)
    return RankCode(f, _full_spectrum(f, backend))


def min_distance(f: QPolynomial, backend: str | None = None) -> int:
    return rank_code(f, backend).min_distance


def is_mrd(f: QPolynomial, backend: str | None = None) -> bool:
    return rank_code(f, backend).is_mrd


def rank_distribution(f: QPolynomial, backend: str | None = None) -> dict[int, int]:
    return rank_code(f, backend).rank_distribution()


def rank_distribution_direct(f: QPolynomial) -> dict[int, int]:
    """Kernel dimension of a f + b x for every (a, b) (test oracle, q^{2m} maps)."""
    ctx, m = f.ctx, f.m
    ident = QPolynomial.identity(ctx)
    dist: dict[int, int] = {}
    for a in range(ctx.order):
        fa = f.scale(a)
        for b in range(ctx.order):
            g = fa + ident.scale(b)
            r = m - kernel_dimension(g) if not g.is_zero() else 0
            dist[r] = dist.get(r, 0) + 1
    return dict(sorted(dist.items()))
