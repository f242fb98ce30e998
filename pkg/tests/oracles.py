"""Independent reference computations built on sympy.

None of these touch the jetbounds reduction code: the Morse class is pushed
forward level by level with Segre classes (pi_* u^{r-1+i} = s_i(V), s = 1/c),
and normal forms come from sympy's own polynomial remainder.
"""

from __future__ import annotations

import sympy as sp

from jetbounds.polyring import Poly, Ring, c, h, u


def symbols(n, k):
    us = sp.symbols(f"u1:{k + 1}")
    cs = sp.symbols(f"c1:{n + 1}")
    return us, cs, sp.Symbol("h")


def to_sympy(p: Poly):
    ring = p.ring
    us, cs, hs = symbols(ring.n, ring.k)
    gens = list(us) + list(cs) + [hs, sp.Symbol("d")]
    expr = 0
    for exp, coef in p.terms.items():
        term = sp.Integer(coef)
        for g, e in zip(gens, exp):
            if e:
                term *= g**e
        expr += term
    return sp.expand(expr)


def from_sympy(expr, ring: Ring) -> Poly:
    us, cs, hs = symbols(ring.n, ring.k)
    gens = list(us) + list(cs) + [hs]
    expr = sp.expand(expr)
    if expr == 0:
        return Poly.zero(ring)
    sp_poly = sp.Poly(expr, *gens)
    terms = {}
    for monom, coef in sp_poly.terms():
        terms[tuple(monom) + (0,)] = int(coef)
    return Poly(ring, terms)


def chern_levels(n, k):
    """c(V_j) for j = 0..k-1 from c(V_j) = c(O(-1)) c(pi^*V_{j-1} (x) O(1)).

    The second factor is computed with the splitting principle through
    sympy's expansion of prod (1 + x_i + u) in elementary symmetric terms.
    """
    us, cs, _ = symbols(n, k)
    r = n
    xs = sp.symbols(f"x1:{r + 1}")
    t = sp.Symbol("t")
    levels = [[sp.Integer(1)] + list(cs)]
    for j in range(1, k):
        uj = us[j - 1]
        prev = levels[-1]
        # total Chern class of V (x) L with c_1(L) = uj, graded by t
        twisted = sp.expand(sp.prod([1 + t * (x + uj) for x in xs]))
        sym = sp.Poly(twisted, t)
        graded = []
        for s in range(r + 1):
            coeff = sym.coeff_monomial(t**s)
            # rewrite symmetric function of xs via elementary symmetric polys
            _, rest, red = _elementary(coeff, xs, prev)
            graded.append(red)
        total = [sp.expand(graded[s] - (uj * graded[s - 1] if s else 0)) for s in range(r + 1)]
        levels.append(total)
    return levels


def _elementary(expr, xs, prev):
    from sympy.polys.polyfuncs import symmetrize

    sym, rest, mapping = symmetrize(expr, *xs, formal=True)
    assert rest == 0
    subs = {s: prev[i + 1] for i, (s, _) in enumerate(mapping)}
    return sym, rest, sp.expand(sym.subs(subs))


def segre(chern, upto):
    """s_0..s_upto of a bundle with total Chern class sum chern[i]."""
    r = len(chern) - 1
    s = [sp.Integer(1)]
    for m in range(1, upto + 1):
        s.append(sp.expand(-sum(chern[t] * s[m - t] for t in range(1, min(m, r) + 1))))
    return s


def morse_class_segre(n, k, a, twist):
    us, cs, hs = symbols(n, k)
    r = n
    N = n + k * (r - 1)
    A = sum(aj * uj for aj, uj in zip(a, us)) + twist * hs
    expr = sp.expand((A - N * twist * hs) * A ** (N - 1))
    levels = chern_levels(n, k)
    for j in range(k, 0, -1):
        uj = us[j - 1]
        poly = sp.Poly(expr, uj)
        s = segre(levels[j - 1], poly.degree() - r + 1 if poly.degree() >= r - 1 else 0)
        out = 0
        for (e,), coef in poly.terms():
            if e >= r - 1:
                out += coef * s[e - r + 1]
        expr = sp.expand(out)
    return from_sympy(expr, Ring(n, k))


def reduce_sympy(p: Poly, relations: list[Poly]):
    """Normal form by successive univariate remainders, top level first."""
    ring = p.ring
    us, _, _ = symbols(ring.n, ring.k)
    expr = to_sympy(p)
    for j in range(ring.k, 0, -1):
        q = to_sympy(relations[j - 1])
        expr = sp.expand(sp.rem(expr, q, us[j - 1]))
    return from_sympy(expr, ring)
