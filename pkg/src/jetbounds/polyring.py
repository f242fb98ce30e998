"""Exact sparse polynomials in the tower variables u_j, base Chern variables c_s,
the hyperplane class h and (optionally) the degree parameter d.

Coefficients are Python ints.  A polynomial is a map from dense exponent tuples
to nonzero coefficients; the layout of the tuple is fixed by a :class:`Ring`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Union

__all__ = [
    "Variable",
    "Ring",
    "Poly",
    "IntersectionPolynomial",
    "u",
    "c",
    "h",
    "d",
    "add",
    "mul",
    "coeff_of",
    "substitute",
    "parse",
]


@dataclass(frozen=True, order=True)
class Variable:
    """A ring generator: ``U`` (level j), ``C`` (index s), ``H`` or ``D``.

    ``D`` stands for the hypersurface degree; it has grade 0 and only appears
    once hypersurface Chern classes have been substituted.
    """

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in ("U", "C", "H", "D"):
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if self.kind in ("U", "C") and self.index < 1:
            raise ValueError(f"{self.kind} variables are indexed from 1")
        if self.kind in ("H", "D") and self.index != 0:
            raise ValueError(f"{self.kind} takes no index")

    @property
    def grade(self) -> int:
        if self.kind == "C":
            return self.index
        if self.kind == "D":
            return 0
        return 1

    def __str__(self):
        if self.kind == "U":
            return f"u{self.index}"
        if self.kind == "C":
            return f"c{self.index}"
        return self.kind.lower()


def u(j: int) -> Variable:
    return Variable("U", j)


def c(s: int) -> Variable:
    return Variable("C", s)


h = Variable("H")
d = Variable("D")


@dataclass(frozen=True)
class Ring:
    """Variable layout for ``k`` tower levels over ``n`` base Chern classes.

    Exponent tuples are ordered ``(u1..uk, c1..cn, h, d)``.
    """

    n: int
    k: int

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ValueError("ring sizes must be nonnegative")

    @cached_property
    def nvars(self) -> int:
        return self.k + self.n + 2

    @cached_property
    def variables(self) -> tuple[Variable, ...]:
        return (
            tuple(u(j) for j in range(1, self.k + 1))
            + tuple(c(s) for s in range(1, self.n + 1))
            + (h, d)
        )

    @cached_property
    def grades(self) -> tuple[int, ...]:
        return tuple(v.grade for v in self.variables)

    @cached_property
    def base_grades(self) -> tuple[int, ...]:
        """Grades counted by ``base_cap``: the c and h variables only."""
        return tuple(0 if v.kind in ("U", "D") else v.grade for v in self.variables)

    @cached_property
    def h_pos(self) -> int:
        return self.k + self.n

    @cached_property
    def d_pos(self) -> int:
        return self.k + self.n + 1

    def pos(self, v: Variable) -> int:
        if v.kind == "U":
            if v.index > self.k:
                raise ValueError(f"{v} outside ring with k={self.k}")
            return v.index - 1
        if v.kind == "C":
            if v.index > self.n:
                raise ValueError(f"{v} outside ring with n={self.n}")
            return self.k + v.index - 1
        return self.h_pos if v.kind == "H" else self.d_pos

    def contains(self, v: Variable) -> bool:
        if v.kind == "U":
            return v.index <= self.k
        if v.kind == "C":
            return v.index <= self.n
        return True

    @cached_property
    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * self.nvars

    @cached_property
    def _order_perm(self) -> tuple[int, ...]:
        # priority u_k > ... > u_1 > h > c_1 > ... > c_n > d
        k, n = self.k, self.n
        return tuple(range(k - 1, -1, -1)) + (self.h_pos,) + tuple(range(k, k + n)) + (self.d_pos,)

    def sort_key(self, exp: tuple[int, ...]):
        g = sum(e * w for e, w in zip(exp, self.grades))
        return (-g, tuple(-exp[i] for i in self._order_perm))

    def embed(self, exp: tuple[int, ...], src: "Ring") -> tuple[int, ...]:
        if src == self:
            return exp
        out = [0] * self.nvars
        for v, e in zip(src.variables, exp):
            if e:
                out[self.pos(v)] = e
        return tuple(out)

    def join(self, other: "Ring") -> "Ring":
        if other == self:
            return self
        return Ring(max(self.n, other.n), max(self.k, other.k))


Coefficient = int


class Poly:
    """Immutable sparse polynomial with integer coefficients over a :class:`Ring`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], int] | None = None, *, _trusted=False):
        self.ring = ring
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            clean = {}
            for exp, coef in terms.items():
                if len(exp) != ring.nvars:
                    raise ValueError("exponent tuple does not match ring layout")
                if any(e < 0 for e in exp):
                    raise ValueError("negative exponent")
                coef = int(coef)
                if coef:
                    clean[tuple(exp)] = clean.get(tuple(exp), 0) + coef
            self.terms = {e: v for e, v in clean.items() if v}
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring) -> "Poly":
        return cls(ring, {}, _trusted=True)

    @classmethod
    def const(cls, ring: Ring, value: int) -> "Poly":
        value = int(value)
        return cls(ring, {ring.zero_exp: value} if value else {}, _trusted=True)

    @classmethod
    def var(cls, ring: Ring, v: Variable, power: int = 1, coef: int = 1) -> "Poly":
        exp = [0] * ring.nvars
        exp[ring.pos(v)] = power
        return cls(ring, {tuple(exp): coef} if coef else {}, _trusted=True)

    @classmethod
    def monomial(cls, ring: Ring, powers: Mapping[Variable, int], coef: int = 1) -> "Poly":
        exp = [0] * ring.nvars
        for v, e in powers.items():
            exp[ring.pos(v)] += e
        return cls(ring, {tuple(exp): coef}) if coef else cls.zero(ring)

    def change_ring(self, ring: Ring) -> "Poly":
        if ring == self.ring:
            return self
        terms = {}
        for exp, coef in self.terms.items():
            terms[ring.embed(exp, self.ring)] = coef
        return Poly(ring, terms, _trusted=True)

    # -- inspection ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.ring, other)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ring != self.ring:
            ring = self.ring.join(other.ring)
            return self.change_ring(ring).terms == other.change_ring(ring).terms
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def grades(self) -> set[int]:
        w = self.ring.grades
        return {sum(e * g for e, g in zip(exp, w)) for exp in self.terms}

    def grade(self) -> int | None:
        """The grade if homogeneous and nonzero, else ``None``."""
        gs = self.grades()
        return gs.pop() if len(gs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def degree_in(self, v: Variable) -> int:
        if not self.ring.contains(v):
            return 0
        i = self.ring.pos(v)
        return max((exp[i] for exp in self.terms), default=0)

    def variables_used(self) -> set[Variable]:
        used = set()
        for exp in self.terms:
            for v, e in zip(self.ring.variables, exp):
                if e:
                    used.add(v)
        return used

    def constant_term(self) -> int:
        return self.terms.get(self.ring.zero_exp, 0)

    def coefficient(self, powers: Mapping[Variable, int]) -> int:
        exp = [0] * self.ring.nvars
        for v, e in powers.items():
            exp[self.ring.pos(v)] = e
        return self.terms.get(tuple(exp), 0)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> tuple["Poly", "Poly"]:
        if isinstance(other, int):
            return self, Poly.const(self.ring, other)
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.ring == self.ring:
            return self, other
        ring = self.ring.join(other.ring)
        return self.change_ring(ring), other.change_ring(ring)

    def __add__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return add(a, b)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -v for e, v in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return add(a, -b)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Poly.zero(self.ring)
            return Poly(self.ring, {e: v * other for e, v in self.terms.items()}, _trusted=True)
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return mul(a, b)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = Poly.const(self.ring, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- text ---------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.sort_key(t[0]))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


IntersectionPolynomial = Poly


def add(p: Poly, q: Poly) -> Poly:
    """Term-wise sum."""
    p, q = p._coerce(q)
    if len(q.terms) > len(p.terms):
        p, q = q, p
    terms = dict(p.terms)
    for exp, coef in q.terms.items():
        s = terms.get(exp, 0) + coef
        if s:
            terms[exp] = s
        else:
            terms.pop(exp, None)
    return Poly(p.ring, terms, _trusted=True)


def mul(p: Poly, q: Poly, base_cap: int | None = None) -> Poly:
    """Distributive product.

    With ``base_cap``, product monomials whose combined grade in the c and h
    variables exceeds the cap are dropped.
    """
    p, q = p._coerce(q)
    ring = p.ring
    if len(q.terms) > len(p.terms):
        p, q = q, p
    terms: dict[tuple[int, ...], int] = {}
    get = terms.get
    if base_cap is None:
        qitems = list(q.terms.items())
        for e1, c1 in p.terms.items():
            for e2, c2 in qitems:
                exp = tuple(map(int.__add__, e1, e2))
                terms[exp] = get(exp, 0) + c1 * c2
    else:
        bw = ring.base_grades
        qitems = [(e, v, sum(a * b for a, b in zip(e, bw))) for e, v in q.terms.items()]
        for e1, c1 in p.terms.items():
            room = base_cap - sum(a * b for a, b in zip(e1, bw))
            if room < 0:
                continue
            for e2, c2, g2 in qitems:
                if g2 > room:
                    continue
                exp = tuple(map(int.__add__, e1, e2))
                terms[exp] = get(exp, 0) + c1 * c2
    return Poly(ring, {e: v for e, v in terms.items() if v}, _trusted=True)


def truncate_base(p: Poly, base_cap: int) -> Poly:
    bw = p.ring.base_grades
    return Poly(
        p.ring,
        {e: v for e, v in p.terms.items() if sum(a * b for a, b in zip(e, bw)) <= base_cap},
        _trusted=True,
    )


def coeff_of(p: Poly, v: Variable, e: int) -> Poly:
    """Coefficient of ``v**e`` in ``p`` viewed as a univariate polynomial in ``v``."""
    if not p.ring.contains(v):
        return p if e == 0 else Poly.zero(p.ring)
    i = p.ring.pos(v)
    terms = {}
    for exp, coef in p.terms.items():
        if exp[i] == e:
            terms[exp[:i] + (0,) + exp[i + 1:]] = coef
    return Poly(p.ring, terms, _trusted=True)


Substitution = Union[Poly, int, "DegreePolynomial"]


def substitute(p: Poly, assignments: Mapping[Variable, Substitution]) -> Poly:
    """Simultaneous substitution of variables, fully expanded.

    Values may be polynomials, ints, or :class:`DegreePolynomial` (read as
    polynomials in ``d``).
    """
    from .hypersurface import DegreePolynomial

    ring = p.ring
    values: dict[int, Poly] = {}
    for v, val in assignments.items():
        if not ring.contains(v):
            continue
        if isinstance(val, DegreePolynomial):
            val = val.to_poly(ring)
        elif isinstance(val, int):
            val = Poly.const(ring, val)
        ring = ring.join(val.ring)
        values[v] = val
    p = p.change_ring(ring)
    slots = {ring.pos(v): val.change_ring(ring) for v, val in values.items()}
    if not slots:
        return p
    powers: dict[tuple[int, int], Poly] = {}

    def power(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in powers:
            powers[key] = slots[i] ** e
        return powers[key]

    result: dict[tuple[int, ...], int] = {}
    for exp, coef in p.terms.items():
        rest = list(exp)
        factors = []
        for i in slots:
            if exp[i]:
                factors.append(power(i, exp[i]))
                rest[i] = 0
        term = Poly(ring, {tuple(rest): coef}, _trusted=True)
        for f in factors:
            term = mul(term, f)
        for e, v in term.terms.items():
            result[e] = result.get(e, 0) + v
    return Poly(ring, {e: v for e, v in result.items() if v}, _trusted=True)


# -- serialization ------------------------------------------------------------


def format_monomial(ring: Ring, exp: tuple[int, ...]) -> str:
    # print order: u1..uk, c1..cn, d, h
    order = list(range(ring.k + ring.n)) + [ring.d_pos, ring.h_pos]
    parts = []
    for i in order:
        e = exp[i]
        if e == 1:
            parts.append(str(ring.variables[i]))
        elif e > 1:
            parts.append(f"{ring.variables[i]}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for idx, (exp, coef) in enumerate(p.sorted_terms()):
        mono = format_monomial(p.ring, exp)
        mag = abs(coef)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if idx == 0:
            out.append(f"-{body}" if coef < 0 else body)
        else:
            out.append(f"- {body}" if coef < 0 else f"+ {body}")
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([uc])(\d+)|([hd])|(\^)|(\*)|([+-]))")


def _tokenize(text: str):
    pos = 0
    text = text.strip()
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 20]!r}")
        pos = m.end()
        num, kind, idx, hd, caret, star, sign = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif kind is not None:
            tokens.append(("var", Variable(kind.upper(), int(idx))))
        elif hd is not None:
            tokens.append(("var", h if hd == "h" else d))
        elif caret:
            tokens.append(("^", None))
        elif star:
            tokens.append(("*", None))
        else:
            tokens.append((sign, None))
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


def parse(text: str, ring: Ring | None = None) -> Poly:
    """Parse the text form written by ``str(poly)``.

    Whitespace is free.  When ``ring`` is omitted the smallest ring holding
    every variable that occurs is used.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    terms: list[tuple[int, dict[Variable, int]]] = []
    i = 0
    sign = 1
    if tokens[0][0] in "+-":
        sign = -1 if tokens[0][0] == "-" else 1
        i = 1
    expect_factor = True
    coef, powers = sign, {}
    while i < len(tokens):
        kind, val = tokens[i]
        if expect_factor:
            if kind == "num":
                coef *= val
            elif kind == "var":
                e = 1
                if i + 1 < len(tokens) and tokens[i + 1][0] == "^":
                    if i + 2 >= len(tokens) or tokens[i + 2][0] != "num":
                        raise ValueError("expected exponent after '^'")
                    e = tokens[i + 2][1]
                    i += 2
                powers[val] = powers.get(val, 0) + e
            else:
                raise ValueError(f"unexpected token {kind!r}")
            expect_factor = False
        else:
            if kind == "*":
                expect_factor = True
            elif kind in "+-":
                terms.append((coef, powers))
                coef, powers = (-1 if kind == "-" else 1), {}
                expect_factor = True
            else:
                raise ValueError(f"unexpected token {kind!r}; missing operator")
        i += 1
    if expect_factor:
        raise ValueError("polynomial text ends with an operator")
    terms.append((coef, powers))

    if ring is None:
        n = max((v.index for _, pw in terms for v in pw if v.kind == "C"), default=0)
        k = max((v.index for _, pw in terms for v in pw if v.kind == "U"), default=0)
        ring = Ring(n, k)
    acc: dict[tuple[int, ...], int] = {}
    for coef, pw in terms:
        exp = [0] * ring.nvars
        for v, e in pw.items():
            exp[ring.pos(v)] += e
        key = tuple(exp)
        acc[key] = acc.get(key, 0) + coef
    return Poly(ring, acc)


def linear_form(ring: Ring, coefficients: Mapping[Variable, int]) -> Poly:
    terms = {}
    for v, a in coefficients.items():
        if a:
            exp = [0] * ring.nvars
            exp[ring.pos(v)] = 1
            terms[tuple(exp)] = a
    return Poly(ring, terms)


def sum_polys(polys: Iterable[Poly], ring: Ring) -> Poly:
    acc: dict[tuple[int, ...], int] = {}
    for p in polys:
        p = p.change_ring(ring)
        for e, v in p.terms.items():
            acc[e] = acc.get(e, 0) + v
    return Poly(ring, {e: v for e, v in acc.items() if v}, _trusted=True)
