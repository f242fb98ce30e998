"""Chern classes of the Demailly tower X_k -> ... -> X_1 -> X over a base of
dimension n (rank r = n), reduction modulo the level relations, and
integration along the fibres.

Two reduction routes are provided:

* :func:`reduce` rewrites ``u_j^r`` top-down on sparse polynomials, exactly as
  a general-purpose computer algebra system would.  It works on any input.
* :class:`TowerAlgebra` stores reduced classes as dense arrays indexed by the
  reduced monomial basis ``u_1^{e_1} ... u_k^{e_k}`` (each ``e_j < r``) times a
  base monomial of grade ``<= n``.  Multiplication by ``u_j`` only ever has to
  rewrite ``u_j^r``; the rewrite multiplies by the Chern classes of ``V_{j-1}``,
  which are themselves applied recursively level by level.  This is what makes
  the (5, 5) cell tractable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np

from .polyring import Poly, Ring, Variable, c, h, mul, truncate_base, u

__all__ = [
    "TowerModel",
    "TowerAlgebra",
    "build_tower",
    "reduce",
    "integrate_fiber",
    "pow_reduced",
]


def _binom(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def transition_coefficient(r: int, s: int, t: int) -> int:
    """Coefficient of ``c_t^{[j-1]} u_j^{s-t}`` in ``c_s^{[j]}`` (with c_0 = 1)."""
    return _binom(r - t, s - t) - _binom(r - t, s - t - 1)


@dataclass(frozen=True, eq=False)
class TowerModel:
    n: int
    k: int
    r: int
    chern_V: tuple[tuple[Poly, ...], ...]
    relations: tuple[Poly, ...]

    @property
    def N(self) -> int:
        """Dimension of X_k."""
        return self.n + self.k * (self.r - 1)

    @cached_property
    def ring(self) -> Ring:
        return Ring(self.n, self.k)

    def relation(self, j: int) -> Poly:
        """q_j, monic of degree r in u_j."""
        return self.relations[j - 1]

    def chern(self, j: int, s: int) -> Poly:
        """c_s(V_j) for 0 <= j <= k-1, expanded over the base variables."""
        if s == 0:
            return Poly.const(self.ring, 1)
        if s > self.r:
            return Poly.zero(self.ring)
        return self.chern_V[j][s - 1]

    @cached_property
    def _relation_tails(self):
        # per level: list of (s, exponent, coef) for the terms of c_s^{[j-1]}
        out = []
        for j in range(1, self.k + 1):
            tail = []
            for s in range(1, self.r + 1):
                for exp, coef in self.chern(j - 1, s).terms.items():
                    tail.append((s, exp, coef))
            out.append(tail)
        return out


def build_tower(n: int, k: int) -> TowerModel:
    """Chern classes of V_0..V_{k-1} and the relations q_1..q_k.

    c(V_j) = (1 - u_j) * sum_t c_t(V_{j-1}) (1 + u_j)^{r-t}, graded piece by
    graded piece, starting from c(V_0) = c(T_X).
    """
    if n < 2:
        raise ValueError(f"base dimension must be at least 2 (rank V >= 2), got n={n}")
    if k < 1:
        raise ValueError(f"tower height must be at least 1, got k={k}")
    r = n
    ring = Ring(n, k)
    one = Poly.const(ring, 1)
    levels = [tuple(Poly.var(ring, c(s)) for s in range(1, r + 1))]
    for j in range(1, k):
        prev = (one,) + levels[-1]
        uj = Poly.var(ring, u(j))
        new = []
        for s in range(1, r + 1):
            w = Poly.zero(ring)
            for t in range(0, s + 1):
                a = transition_coefficient(r, s, t)
                if a:
                    w = w + prev[t] * (uj ** (s - t)) * a
            new.append(w)
        levels.append(tuple(new))
    relations = []
    for j in range(1, k + 1):
        uj = Poly.var(ring, u(j))
        q = uj ** r
        for s in range(1, r + 1):
            q = q + levels[j - 1][s - 1] * uj ** (r - s)
        relations.append(q)
    return TowerModel(n=n, k=k, r=r, chern_V=tuple(levels), relations=tuple(relations))


def _check_ring(p: Poly, t: TowerModel) -> Poly:
    ring = p.ring.join(t.ring)
    if ring != t.ring:
        raise ValueError(f"polynomial lives outside the ({t.n}, {t.k}) tower ring")
    return p.change_ring(ring)


def reduce(p: Poly, t: TowerModel, base_cap: int | None = None) -> Poly:
    """Normal form modulo q_k, ..., q_1 (eliminating u_k first).

    Each ``u_j^e`` with ``e >= r`` is rewritten as
    ``-sum_s c_s^{[j-1]} u_j^{e-s}`` until every u_j-degree is below r.
    """
    p = _check_ring(p, t)
    ring, r = t.ring, t.r
    bw = ring.base_grades
    terms = dict(p.terms)
    if base_cap is not None:
        terms = {e: v for e, v in terms.items() if sum(a * b for a, b in zip(e, bw)) <= base_cap}
    for j in range(t.k, 0, -1):
        i = j - 1
        if not any(exp[i] >= r for exp in terms):
            continue
        tail = t._relation_tails[j - 1]
        if base_cap is not None:
            tail = [(s, e, v, sum(a * b for a, b in zip(e, bw))) for s, e, v in tail]
        buckets: dict[int, dict[tuple[int, ...], int]] = {}
        for exp, coef in terms.items():
            buckets.setdefault(exp[i], {})[exp] = coef
        top = max(buckets)
        for e in range(top, r - 1, -1):
            bucket = buckets.pop(e, None)
            if not bucket:
                continue
            for exp, coef in bucket.items():
                if base_cap is not None:
                    room = base_cap - sum(a * b for a, b in zip(exp, bw))
                for item in tail:
                    if base_cap is not None:
                        s, texp, tcoef, g = item
                        if g > room:
                            continue
                    else:
                        s, texp, tcoef = item
                    new = list(map(int.__add__, exp, texp))
                    new[i] = e - s
                    new = tuple(new)
                    target = buckets.setdefault(e - s, {})
                    val = target.get(new, 0) - coef * tcoef
                    if val:
                        target[new] = val
                    else:
                        target.pop(new, None)
        terms = {}
        for bucket in buckets.values():
            terms.update(bucket)
    return Poly(ring, terms, _trusted=True)


def is_reduced(p: Poly, t: TowerModel) -> bool:
    return all(p.degree_in(u(j)) < t.r for j in range(1, t.k + 1))


def integrate_fiber(p: Poly, t: TowerModel) -> Poly:
    """Push forward to X: coefficient of u_j^{r-1} for j = k, ..., 1."""
    p = _check_ring(p, t)
    if not is_reduced(p, t):
        raise ValueError("integrate_fiber expects a reduced class")
    ring, r = t.ring, t.r
    top = tuple(range(t.k))
    terms = {}
    for exp, coef in p.terms.items():
        if all(exp[i] == r - 1 for i in top):
            terms[(0,) * t.k + exp[t.k:]] = coef
    return Poly(ring, terms, _trusted=True)


def _check_linear(p: Poly) -> None:
    if p and p.grade() != 1:
        raise ValueError("pow_reduced expects a homogeneous class of grade 1")


def pow_reduced(p: Poly, e: int, t: TowerModel, capped: bool = True) -> Poly:
    """reduce(p**e) by the linear chain multiply, (cap), reduce.

    With ``capped`` the base grade is truncated at n after every product;
    those terms can never reach the top fibre class of a grade-N product.
    """
    if e < 0:
        raise ValueError("negative exponent")
    p = _check_ring(p, t)
    _check_linear(p)
    cap = t.n if capped else None
    acc = Poly.const(t.ring, 1)
    for _ in range(e):
        acc = reduce(mul(acc, p, base_cap=cap), t, base_cap=cap)
    return acc


class TowerAlgebra:
    """Reduced cohomology classes of X_k as dense integer arrays.

    An element is an object array of shape ``(r,) * k + (B,)``: axis ``j-1``
    holds the exponent of u_j, the last axis indexes base monomials in
    c_1..c_n, h of grade at most ``base_cap``.  Coefficients are Python ints.
    """

    def __init__(self, tower: TowerModel, base_cap: int | None = None):
        self.tower = tower
        self.r = tower.r
        self.k = tower.k
        self.n = tower.n
        self.base_cap = tower.n if base_cap is None else base_cap
        self.base_vars = [c(s) for s in range(1, self.n + 1)] + [h]
        weights = [s for s in range(1, self.n + 1)] + [1]
        monos = []
        for exps in itertools.product(*(range(self.base_cap // w + 1) for w in weights)):
            g = sum(e * w for e, w in zip(exps, weights))
            if g <= self.base_cap:
                monos.append((g, exps))
        monos.sort(key=lambda m: (m[0], m[1]))
        self.base_monos = [m[1] for m in monos]
        self.base_grade = np.array([m[0] for m in monos])
        self.base_index = {m: i for i, m in enumerate(self.base_monos)}
        self.B = len(self.base_monos)
        self._shift = {}
        for vi, v in enumerate(self.base_vars):
            src, tgt = [], []
            for i, m in enumerate(self.base_monos):
                m2 = list(m)
                m2[vi] += 1
                j = self.base_index.get(tuple(m2))
                if j is not None:
                    src.append(i)
                    tgt.append(j)
            self._shift[v] = (np.array(src, dtype=np.intp), np.array(tgt, dtype=np.intp))
        self._coef = {
            (s, t): transition_coefficient(self.r, s, t)
            for s in range(1, self.r + 1)
            for t in range(0, s + 1)
        }

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.r,) * self.k + (self.B,)

    @property
    def size(self) -> int:
        return self.r ** self.k * self.B

    def zero(self) -> np.ndarray:
        return np.zeros(self.shape, dtype=object)

    def one(self) -> np.ndarray:
        x = self.zero()
        x[(0,) * self.k + (0,)] = 1
        return x

    # -- conversion ---------------------------------------------------------

    def from_poly(self, p: Poly) -> np.ndarray:
        t = self.tower
        p = _check_ring(p, t)
        if not is_reduced(p, t):
            p = reduce(p, t)
        x = self.zero()
        k = self.k
        for exp, coef in p.terms.items():
            if exp[-1]:
                raise ValueError("TowerAlgebra does not carry the degree variable d")
            bm = exp[k:k + self.n + 1]
            idx = self.base_index.get(bm)
            if idx is None:
                continue  # beyond base_cap
            x[exp[:k] + (idx,)] += coef
        return x

    def to_poly(self, x: np.ndarray) -> Poly:
        ring = self.tower.ring
        terms = {}
        for pos in zip(*np.nonzero(x)):
            coef = int(x[pos])
            if coef:
                terms[tuple(int(e) for e in pos[:-1]) + self.base_monos[pos[-1]] + (0,)] = coef
        return Poly(ring, terms, _trusted=True)

    def base_to_poly(self, vec: np.ndarray) -> Poly:
        ring = self.tower.ring
        terms = {}
        for i, coef in enumerate(vec):
            if coef:
                terms[(0,) * self.k + self.base_monos[i] + (0,)] = int(coef)
        return Poly(ring, terms, _trusted=True)

    # -- products -----------------------------------------------------------

    def mul_base(self, v: Variable, x: np.ndarray) -> np.ndarray:
        """Multiply by c_s or h, dropping monomials beyond the base cap."""
        src, tgt = self._shift[v]
        out = np.zeros(x.shape, dtype=object)
        out[..., tgt] = x[..., src]
        return out

    def mul_u(self, level: int, x: np.ndarray) -> np.ndarray:
        """Multiply by u_level.  Axes ``0..level-1`` of ``x`` must be tower axes."""
        r = self.r
        a = level - 1
        lead = (slice(None),) * a
        out = np.zeros(x.shape, dtype=object)
        out[lead + (slice(1, r),)] = x[lead + (slice(0, r - 1),)]
        overflow = x[lead + (r - 1,)]
        if overflow.any():
            # u^r = -sum_s c_s(V_{level-1}) u^{r-s}
            for s, z in enumerate(self.chern_mults(level - 1, overflow), start=1):
                out[lead + (r - s,)] -= z
        return out

    def chern_mults(self, level: int, x: np.ndarray) -> list[np.ndarray]:
        """``[c_s(V_level) * x for s in 1..r]``."""
        r = self.r
        if level == 0:
            return [self.mul_base(c(s), x) for s in range(1, r + 1)]
        ys = [x] + self.chern_mults(level - 1, x)
        # powers[t][i] = u_level^i * c_t(V_{level-1}) * x, filled on demand
        powers = [[y] for y in ys]
        out = []
        for s in range(1, r + 1):
            acc = None
            for t in range(0, s + 1):
                a = self._coef[(s, t)]
                if not a:
                    continue
                chain = powers[t]
                while len(chain) <= s - t:
                    chain.append(self.mul_u(level, chain[-1]))
                term = chain[s - t] if a == 1 else chain[s - t] * a
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else np.zeros(x.shape, dtype=object))
        return out

    def mul_linear(self, form: dict[Variable, int], x: np.ndarray) -> np.ndarray:
        """Multiply by a grade-1 class sum a_v v with v among u_j, c_1, h."""
        acc = None
        for v, a in form.items():
            if not a:
                continue
            if v.kind == "U":
                y = self.mul_u(v.index, x)
            elif v.kind == "H" or (v.kind == "C" and v.index == 1):
                y = self.mul_base(v, x)
            else:
                raise ValueError(f"{v} is not of grade 1")
            if a != 1:
                y = y * a
            acc = y if acc is None else acc + y
        return acc if acc is not None else self.zero()

    def integrate(self, x: np.ndarray) -> Poly:
        """Coefficient of u_1^{r-1}...u_k^{r-1}, as a class on X."""
        return self.base_to_poly(x[(self.r - 1,) * self.k])


def linear_form_of(p: Poly) -> dict[Variable, int]:
    _check_linear(p)
    form = {}
    for exp, coef in p.terms.items():
        (i,) = [i for i, e in enumerate(exp) if e]
        form[p.ring.variables[i]] = coef
    return form
