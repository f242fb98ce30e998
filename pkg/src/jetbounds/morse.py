"""Holomorphic Morse criterion for the twisted jet line bundle L_k on X_k.

With F = L_k + twist*h and G = twist*h both nef, sections of L_k exist for
large m as soon as F^N - N F^{N-1} G > 0 on X_k.  We compute that number as
a polynomial in the hypersurface degree d and find where it turns positive.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .hypersurface import DegreePolynomial, evaluate_degree
from .polyring import Poly, Variable, h, mul, parse, u
from .tower import TowerAlgebra, build_tower, integrate_fiber, reduce

__all__ = [
    "WeightVector",
    "MorseResult",
    "ComputationTooLarge",
    "canonical_weights",
    "morse_class",
    "degree_bound",
    "compute_bound",
    "DEFAULT_MAX_TERMS",
]

MAX_TERMS_ENV = "JETBOUNDS_MAX_TERMS"
DEFAULT_MAX_TERMS = 2_000_000


def default_max_terms() -> int:
    raw = os.environ.get(MAX_TERMS_ENV)
    return int(raw) if raw else DEFAULT_MAX_TERMS


class ComputationTooLarge(RuntimeError):
    """The reduced representation would exceed the configured term ceiling."""


@dataclass(frozen=True)
class WeightVector:
    """Weights (a_1, ..., a_k) of O_{X_j}(1) in L_k, plus the h twist making it nef."""

    a: tuple[int, ...]
    twist: int

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def m(self) -> int:
        """Weighted degree of the jet differentials, a_1 + ... + a_k."""
        return sum(self.a)

    @property
    def partial_sums(self) -> tuple[int, ...]:
        out, s = [], 0
        for x in self.a:
            s += x
            out.append(s)
        return tuple(out)

    def is_admissible(self) -> bool:
        """Relative nefness condition a_1 >= 3a_2, ..., a_{k-1} >= 2a_k > 0."""
        a = self.a
        if any(x < 0 for x in a):
            return False
        if self.k == 1:
            return a[0] > 0
        if not a[-2] >= 2 * a[-1] > 0:
            return False
        return all(a[i] >= 3 * a[i + 1] for i in range(self.k - 2))

    def forms(self) -> tuple[dict[Variable, int], int]:
        """The class F as {variable: coefficient}, and the twist of G."""
        form: dict[Variable, int] = {u(j): aj for j, aj in enumerate(self.a, start=1)}
        form[h] = self.twist
        return form, self.twist


def canonical_weights(k: int) -> WeightVector:
    """a = (2*3^{k-2}, ..., 6, 2, 1) with twist 2*3^{k-1}; a = (1), twist 2 for k = 1."""
    if k < 1:
        raise ValueError(f"jet order must be at least 1, got k={k}")
    a = tuple(2 * 3 ** (k - j - 1) for j in range(1, k)) + (1,)
    return WeightVector(a=a, twist=2 * 3 ** (k - 1))


def _tower_size(n: int, k: int) -> int:
    # reduced basis size times number of base monomials of grade <= n
    weights = list(range(1, n + 1)) + [1]
    counts = [1] + [0] * n
    for w in weights:
        for g in range(w, n + 1):
            counts[g] += counts[g - w]
    return n ** k * sum(counts)


def morse_class(
    n: int,
    k: int,
    weights: WeightVector | None = None,
    *,
    engine: str = "dense",
    capped: bool = True,
    max_terms: int | None = None,
) -> Poly:
    """Push-forward to X of (F - N G) F^{N-1}, a grade-n class in c and h."""
    tower = build_tower(n, k)
    weights = weights or canonical_weights(k)
    if weights.k != k:
        raise ValueError("weight vector length must equal the jet order")
    N = tower.N
    form, twist = weights.forms()
    last = dict(form)
    last[h] = twist - N * twist
    limit = default_max_terms() if max_terms is None else max_terms

    if engine == "dense":
        if not capped:
            raise ValueError("the dense engine always truncates at base grade n")
        size = _tower_size(n, k)
        if size > limit:
            raise ComputationTooLarge(
                f"({n}, {k}) needs {size} coefficients, over the ceiling of {limit}"
            )
        alg = TowerAlgebra(tower)
        x = alg.one()
        for _ in range(N - 1):
            x = alg.mul_linear(form, x)
        x = alg.mul_linear(last, x)
        return alg.integrate(x).change_ring(tower.ring)

    if engine != "sparse":
        raise ValueError(f"unknown engine {engine!r}")
    ring = tower.ring
    A = sum((Poly.var(ring, v, 1, a) for v, a in form.items()), Poly.zero(ring))
    last_poly = sum((Poly.var(ring, v, 1, a) for v, a in last.items()), Poly.zero(ring))
    cap = n if capped else None
    acc = Poly.const(ring, 1)
    for _ in range(N - 1):
        acc = reduce(mul(acc, A, base_cap=cap), tower, base_cap=cap)
        if len(acc) > limit:
            raise ComputationTooLarge(f"({n}, {k}) intermediate exceeded {limit} terms")
    top = reduce(mul(last_poly, acc, base_cap=cap), tower, base_cap=cap)
    return integrate_fiber(top, tower)


def _ceil_root(num: int, den: int, i: int) -> int:
    """Least integer y >= 0 with y**i * den >= num."""
    lo, hi = 0, 1
    while hi**i * den < num:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**i * den >= num:
            hi = mid
        else:
            lo = mid + 1
    return lo


def root_bound(p: DegreePolynomial) -> int:
    """An integer B with |z| <= B for every complex root z of p.

    The smaller of the Cauchy bound 1 + max|a_i|/|a_n| and the Fujiwara bound
    2 max(|a_{n-1}/a_n|, |a_{n-2}/a_n|^(1/2), ..., |a_0/(2 a_n)|^(1/n)).
    The Cauchy bound alone is ~3e8 for the (5, 5) polynomial.
    """
    n, lead = p.degree, abs(p.leading)
    if n < 1:
        return 0
    others = [abs(v) for e, v in p.coeffs.items() if e != n]
    cauchy = 1 + -(-max(others, default=0) // lead)
    fujiwara = 0
    for e, v in p.coeffs.items():
        if e == n:
            continue
        i = n - e
        den = lead * (2 if e == 0 else 1)
        fujiwara = max(fujiwara, _ceil_root(abs(v), den, i))
    return min(cauchy, 2 * fujiwara)


def degree_bound(p: DegreePolynomial) -> int | None:
    """Least d0 >= 1 with p(d) > 0 for every integer d >= d0, or None.

    Beyond a root bound the sign is that of the leading coefficient, so only
    the integers up to it are scanned.
    """
    if not p or p.leading <= 0:
        return None
    last_bad = 0
    for x in range(root_bound(p), 0, -1):
        if p(x) <= 0:
            last_bad = x
            break
    return last_bad + 1


@dataclass
class MorseResult:
    n: int
    k: int
    class_in_chern: Poly
    poly_in_d: DegreePolynomial
    bound: int | None
    weights: WeightVector = field(default=None)

    @property
    def N(self) -> int:
        return self.n + self.k * (self.n - 1)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "class": str(self.class_in_chern),
            "poly_d": self.poly_in_d.to_json(),
            "bound": self.bound,
            "N": self.N,
            "weights": list(self.weights.a),
            "twist": self.weights.twist,
        }

    @classmethod
    def from_json(cls, data: dict) -> "MorseResult":
        from .polyring import Ring

        n, k = int(data["n"]), int(data["k"])
        return cls(
            n=n,
            k=k,
            class_in_chern=parse(data["class"], Ring(n, k)),
            poly_in_d=DegreePolynomial.from_json(data["poly_d"]),
            bound=data["bound"],
            weights=WeightVector(tuple(data["weights"]), int(data["twist"])),
        )

    def render(self) -> str:
        w = self.weights
        lines = [
            f"order {self.k} jets on a {self.n}-fold (N = {self.N})",
            f"weights: {','.join(map(str, w.a))} twist: {w.twist}",
            f"class: {self.class_in_chern}",
            f"poly_d: {self.poly_in_d}",
            f"bound: d >= {self.bound}" if self.bound is not None else "bound: none",
        ]
        return "\n".join(lines)


def compute_bound(n: int, k: int, *, max_terms: int | None = None, engine: str = "dense") -> MorseResult:
    """Morse class, its value as a polynomial in d, and the effective degree bound."""
    weights = canonical_weights(k)
    cls = morse_class(n, k, weights, engine=engine, max_terms=max_terms)
    poly = evaluate_degree(cls, n)
    return MorseResult(n=n, k=k, class_in_chern=cls, poly_in_d=poly, bound=degree_bound(poly), weights=weights)
