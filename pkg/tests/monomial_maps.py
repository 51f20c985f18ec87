"""Seeded random monomial maps."""
import math


def random_monomial_map(rng, nvars, max_deg):
    """Sorted exponent vectors of nvars or nvars + 1 distinct monomials of one degree."""
    d = rng.randint(1, max_deg)
    count = min(rng.randint(nvars, nvars + 1), math.comb(d + nvars - 1, nvars - 1))
    mons = set()
    while len(mons) < count:
        cut = sorted(rng.randint(0, d) for _ in range(nvars - 1))
        parts = [b - a for a, b in zip([0] + cut, cut + [d])]
        mons.add(tuple(parts))
    return sorted(mons)


def monomial_text(names, e):
    return "*".join(f"{v}^{k}" for v, k in zip(names, e) if k) or "1"
