"""Chern classes of a smooth degree-d hypersurface in P^{n+1}, and evaluation
of base classes as polynomials in d.
"""

from __future__ import annotations

import re
from math import comb
from typing import Iterable, Mapping

from .polyring import Poly, Ring, Variable, c, d, h, substitute

__all__ = ["DegreePolynomial", "chern_classes_of_hypersurface", "evaluate_degree"]


class DegreePolynomial:
    """Univariate integer polynomial in the hypersurface degree ``d``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, v in items:
            e, v = int(e), int(v)
            if e < 0:
                raise ValueError("negative exponent in DegreePolynomial")
            acc[e] = acc.get(e, 0) + v
        self.coeffs = {e: v for e, v in acc.items() if v}

    @classmethod
    def from_list(cls, ascending: Iterable[int]) -> "DegreePolynomial":
        return cls(enumerate(ascending))

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    @property
    def leading(self) -> int:
        return self.coeffs.get(self.degree, 0)

    def __call__(self, x):
        acc = 0
        for e in range(self.degree, -1, -1):
            acc = acc * x + self.coeffs.get(e, 0)
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = DegreePolynomial({0: other})
        if not isinstance(other, DegreePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = DegreePolynomial({0: other})
        acc = dict(self.coeffs)
        for e, v in other.coeffs.items():
            acc[e] = acc.get(e, 0) + v
        return DegreePolynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return DegreePolynomial({e: -v for e, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return DegreePolynomial({e: v * other for e, v in self.coeffs.items()})
        acc: dict[int, int] = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + v1 * v2
        return DegreePolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = DegreePolynomial({0: 1})
        for _ in range(e):
            out = out * self
        return out

    def to_poly(self, ring: Ring | None = None) -> Poly:
        ring = ring or Ring(0, 0)
        return sum(
            (Poly.var(ring, d, e, v) for e, v in self.coeffs.items()),
            Poly.zero(ring),
        )

    def to_json(self) -> list[list]:
        """``[[exponent, "coefficient"], ...]`` in descending exponent order."""
        return [[e, str(self.coeffs[e])] for e in sorted(self.coeffs, reverse=True)]

    @classmethod
    def from_json(cls, data) -> "DegreePolynomial":
        return cls((int(e), int(v)) for e, v in data)

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = []
        for i, e in enumerate(sorted(self.coeffs, reverse=True)):
            v = self.coeffs[e]
            mag = abs(v)
            mono = "" if e == 0 else ("d" if e == 1 else f"d^{e}")
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                out.append(f"-{body}" if v < 0 else body)
            else:
                out.append(f"- {body}" if v < 0 else f"+ {body}")
        return " ".join(out)

    def __repr__(self):
        return f"DegreePolynomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "DegreePolynomial":
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        acc: dict[int, int] = {}
        for m in re.finditer(r"([+-])([^+-]+)", s):
            sign = -1 if m.group(1) == "-" else 1
            t = re.fullmatch(r"(?:(\d+)(?:\*(d)(?:\^(\d+))?)?|(d)(?:\^(\d+))?)", m.group(2))
            if not t:
                raise ValueError(f"cannot parse term {m.group(2)!r}")
            num, dv, ex, dv2, ex2 = t.groups()
            coef = int(num) if num else 1
            if dv or dv2:
                e = int(ex or ex2 or 1)
            else:
                e = 0
            acc[e] = acc.get(e, 0) + sign * coef
        if "".join(m.group(0) for m in re.finditer(r"([+-])([^+-]+)", s)) != s:
            raise ValueError(f"cannot parse {text!r}")
        return cls(acc)


def chern_classes_of_hypersurface(n: int) -> list[DegreePolynomial]:
    """Coefficients of h^s in c_s(X) for s = 1..n.

    From c(X) = (1+h)^{n+2} / (1+dh) truncated at degree n:
    c_s(X) = h^s * sum_j (-d)^j C(n+2, s-j).  Integration uses h^n = d.
    """
    if n < 1:
        raise ValueError("hypersurface dimension must be at least 1")
    return [
        DegreePolynomial({j: (-1) ** j * comb(n + 2, s - j) for j in range(s + 1)})
        for s in range(1, n + 1)
    ]


def evaluate_degree(p: Poly, n: int) -> DegreePolynomial:
    """Integrate a grade-n class in c and h over X, as a polynomial in d."""
    used = p.variables_used()
    bad = [v for v in used if v.kind in ("U", "D") or (v.kind == "C" and v.index > n)]
    if bad:
        raise ValueError(f"class involves variables outside c1..c{n}, h: {sorted(map(str, bad))}")
    if p.is_zero():
        return DegreePolynomial()
    if p.grade() != n:
        raise ValueError(f"class must be homogeneous of grade {n}, got grades {sorted(p.grades())}")
    chern = chern_classes_of_hypersurface(n)
    ring = p.ring
    assignments: dict[Variable, Poly] = {
        c(s): chern[s - 1].to_poly(ring) * Poly.var(ring, h, s) for s in range(1, n + 1) if ring.contains(c(s))
    }
    q = substitute(p, assignments)
    acc: dict[int, int] = {}
    hp, dp = q.ring.h_pos, q.ring.d_pos
    for exp, coef in q.terms.items():
        assert exp[hp] == n
        acc[exp[dp] + 1] = acc.get(exp[dp] + 1, 0) + coef
    return DegreePolynomial(acc)
