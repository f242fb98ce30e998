"""Partition combinatorics for Schur powers of the cotangent bundle.

Graded pieces of the Green-Griffiths bundle E^GG_{k,m} are tensor products
S^{l_1} T* (x) ... (x) S^{l_k} T*.  Iterating the Pieri rule splits them into
irreducible Schur powers Gamma^lambda T*, and the column-depth test of
Brueckmann-Rackwitz decides when a Schur power has no sections on a smooth
complete intersection.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod

__all__ = [
    "Partition",
    "GradedPiece",
    "VerificationTooLarge",
    "VanishingReport",
    "pieri",
    "decompose_tensor",
    "schur_dim",
    "graded_pieces",
    "br_vanishing",
    "verify_theorem1",
]


@dataclass(frozen=True, order=True)
class Partition:
    """Nonincreasing nonnegative parts, trailing zeros trimmed."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError("partition parts must be nonnegative")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be nonincreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()")
        if not text:
            return cls(())
        return cls(tuple(int(x) for x in text.split(",")))

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i] if i < len(self.parts) else 0

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def contains(self, other: "Partition") -> bool:
        return all(self[i] >= other[i] for i in range(len(other)))

    def __str__(self):
        return ",".join(map(str, self.parts)) if self.parts else "0"


@dataclass(frozen=True)
class GradedPiece:
    ell: tuple[int, ...]

    @property
    def weighted_degree(self) -> int:
        return sum(i * x for i, x in enumerate(self.ell, start=1))

    def __str__(self):
        return "(" + ",".join(map(str, self.ell)) + ")"


class VerificationTooLarge(RuntimeError):
    """Enumeration would exceed the component ceiling."""


@lru_cache(maxsize=None)
def _horizontal_strips(lam: tuple[int, ...], m: int, n: int) -> tuple[tuple[int, ...], ...]:
    # mu_1 >= lam_1 >= mu_2 >= lam_2 >= ... with |mu| = |lam| + m, len(mu) <= n
    lam = lam + (0,) * (n - len(lam))
    out = []

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        upper = lam[i - 1] if i > 0 else lam[0] + left
        room = min(upper - lam[i], left)
        for add in range(room, -1, -1):
            acc.append(lam[i] + add)
            rec(i + 1, left - add, acc)
            acc.pop()

    if n == 0:
        return ((),) if m == 0 else ()
    rec(0, m, [])
    return tuple(tuple(p for p in mu if p) for mu in out)


def pieri(lam: Partition, m: int, n: int) -> Counter:
    """Gamma^lam (x) S^m = sum of Gamma^mu over horizontal m-strips mu / lam, len(mu) <= n."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if len(lam) > n:
        raise ValueError(f"{lam} has more than {n} parts")
    return Counter({Partition(mu): 1 for mu in _horizontal_strips(lam.parts, m, n)})


def _tensor_counts(ell: tuple[int, ...], n: int, limit: int | None) -> Counter:
    current: Counter = Counter({(): 1})
    for l in sorted((x for x in ell if x), reverse=True):
        nxt: Counter = Counter()
        for lam, mult in current.items():
            for mu in _horizontal_strips(lam, l, n):
                nxt[mu] += mult
        if limit is not None and len(nxt) > limit:
            raise VerificationTooLarge(f"more than {limit} components")
        current = nxt
    return current


@lru_cache(maxsize=4096)
def _cached_tensor(ell: tuple[int, ...], n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    return tuple(_tensor_counts(ell, n, None).items())


def decompose_tensor(ell: GradedPiece | tuple[int, ...], n: int) -> Counter:
    """Irreducible decomposition of S^{l_1} (x) ... (x) S^{l_k} in rank n."""
    if isinstance(ell, GradedPiece):
        ell = ell.ell
    key = tuple(sorted((x for x in ell if x), reverse=True))
    return Counter({Partition(mu): m for mu, m in _cached_tensor(key, n)})


def schur_dim(lam: Partition, n: int) -> int:
    """Weyl dimension formula prod_{i<j} (lam_i - lam_j + j - i) / (j - i)."""
    if len(lam) > n:
        raise ValueError(f"{lam} has more than {n} parts")
    num = prod(lam[i] - lam[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    q = Fraction(num, den)
    assert q.denominator == 1
    return int(q)


def graded_pieces(k: int, m: int) -> list[GradedPiece]:
    """All (l_1..l_k) with l_1 + 2 l_2 + ... + k l_k = m, lexicographically descending."""
    if k < 1 or m < 0:
        raise ValueError("need k >= 1 and m >= 0")
    out = []

    def rec(i, left, acc):
        # i is the 1-based slot being filled; slots i..k must absorb `left`
        if i == k:
            if left % k == 0:
                out.append(acc + [left // k])
            return
        for x in range(left // i, -1, -1):
            rec(i + 1, left - i * x, acc + [x])

    rec(1, m, [])
    return [GradedPiece(tuple(e)) for e in out]


def column_depth_sum(lam: Partition, depth: int) -> int:
    conj = lam.conjugate()
    return sum(conj[i] for i in range(depth))


def br_vanishing(lam: Partition, n: int, N: int) -> bool:
    """True when H^0(X, Gamma^lam T*_X) = 0 is guaranteed on every smooth
    complete intersection X of dimension n in P^N: the first N - n column
    depths of lam sum to less than n.
    """
    if not N > n >= 1:
        raise ValueError("need N > n >= 1")
    return column_depth_sum(lam, N - n) < n


@dataclass
class VanishingReport:
    n: int
    k: int
    m: int
    N: int
    pieces: int
    components: int
    all_vanish: bool
    violations: list[dict] = field(default_factory=list)
    not_guaranteed: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "pieces": self.pieces,
            "components": self.components,
            "all_vanish": self.all_vanish,
            "violations": self.violations,
            "not_guaranteed": self.not_guaranteed,
        }

    def render(self) -> str:
        lines = [
            f"E^GG_{{{self.k},{self.m}}} on a {self.n}-fold in P^{self.N}: "
            f"{self.pieces} graded pieces, {self.components} Schur components",
            f"all_vanish={str(self.all_vanish).lower()}",
        ]
        for v in self.violations:
            lines.append(f"violation: piece {v['piece']} component ({v['partition']}): {v['reason']}")
        for v in self.not_guaranteed:
            lines.append(f"not guaranteed: piece {v['piece']} component ({v['partition']}) t={v['t']}")
        return "\n".join(lines)


def verify_theorem1(n: int, k: int, m: int, N: int | None = None, max_components: int = 200_000) -> VanishingReport:
    """Check that every Schur component of E^GG_{k,m} T*_X has no sections.

    The hypersurface case is N = n + 1.  For k < n every component must have
    at most k rows and pass :func:`br_vanishing`; failures are violations.
    For k >= n, components not covered by the test are listed separately.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    N = n + 1 if N is None else N
    pieces = graded_pieces(k, m)
    if len(pieces) > max_components:
        raise VerificationTooLarge(f"{len(pieces)} graded pieces exceed the ceiling of {max_components}")
    total = 0
    violations, not_guaranteed = [], []
    all_vanish = True
    seen_mu: dict[tuple[int, ...], bool] = {}
    for piece in pieces:
        key = tuple(sorted((x for x in piece.ell if x), reverse=True))
        comps = _cached_tensor(key, n)
        if len(comps) > max_components:
            raise VerificationTooLarge(f"piece {piece} has {len(comps)} components")
        for mu, mult in comps:
            total += mult
            lam = Partition(mu)
            if len(lam) > k:
                violations.append({"piece": str(piece), "partition": str(lam), "reason": f"more than {k} rows"})
            ok = seen_mu.get(mu)
            if ok is None:
                ok = seen_mu[mu] = br_vanishing(lam, n, N)
            if not ok:
                all_vanish = False
                entry = {"piece": str(piece), "partition": str(lam), "t": column_depth_sum(lam, N - n)}
                if k < n:
                    entry["reason"] = f"t={entry['t']} >= {n}"
                    violations.append(entry)
                else:
                    not_guaranteed.append(entry)
    return VanishingReport(
        n=n, k=k, m=m, N=N, pieces=len(pieces), components=total,
        all_vanish=all_vanish, violations=violations, not_guaranteed=not_guaranteed,
    )
