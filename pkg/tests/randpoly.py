"""Seeded random polynomial generators shared by the tower and acceptance tests."""

from jetbounds.polyring import Poly


def random_poly(rng, ring, terms=4, max_exp=3, base_cap=None):
    p = Poly.zero(ring)
    bw = ring.base_grades
    while len(p) < terms:
        exp = [0] * ring.nvars
        for i in range(ring.nvars - 1):  # never the degree variable
            if rng.random() < 0.4:
                exp[i] = rng.randint(0, max_exp)
        if base_cap is not None and sum(a * b for a, b in zip(exp, bw)) > base_cap:
            continue
        p = p + Poly(ring, {tuple(exp): rng.choice([-3, -2, -1, 1, 2, 3])})
    return p


def random_homogeneous(rng, ring, grade, terms=3):
    """Sum of up to ``terms`` random monomials of the given grade (the degree variable excluded)."""
    grades = ring.grades[:-1]
    p = Poly.zero(ring)
    for _ in range(terms):
        exp = [0] * ring.nvars
        left = grade
        while left:
            i = rng.choice([i for i, g in enumerate(grades) if g <= left])
            exp[i] += 1
            left -= grades[i]
        p = p + Poly(ring, {tuple(exp): rng.randint(1, 9)})
    return p
