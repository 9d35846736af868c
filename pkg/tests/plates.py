"""Simple roots in explicit Euclidean coordinates (Bourbaki plates), used as oracles."""

from __future__ import annotations

from fractions import Fraction as F


def _e(n, *pairs):
    v = [F(0)] * n
    for i, c in pairs:
        v[i] += F(c)
    return tuple(v)


def simple_roots(family: str, n: int) -> list[tuple]:
    if family == "A":
        return [_e(n + 1, (i, 1), (i + 1, -1)) for i in range(n)]
    if family in "BCD":
        roots = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        if family == "B":
            roots.append(_e(n, (n - 1, 1)))
        elif family == "C":
            roots.append(_e(n, (n - 1, 2)))
        else:
            roots.append(_e(n, (n - 2, 1), (n - 1, 1)))
        return roots
    if family == "G":
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))]
    if family == "F":
        h = F(1, 2)
        return [_e(4, (1, 1), (2, -1)), _e(4, (2, 1), (3, -1)), _e(4, (3, 1)),
                _e(4, (0, h), (1, -h), (2, -h), (3, -h))]
    if family == "E":
        h = F(1, 2)
        e8 = [_e(8, (0, h), (7, h), *[(k, -h) for k in range(1, 7)]),
              _e(8, (0, 1), (1, 1)),
              _e(8, (0, -1), (1, 1))]
        e8 += [_e(8, (k - 1, -1), (k, 1)) for k in range(2, 7)]
        return e8[:n]
    raise ValueError(family)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def cartan_from_roots(roots) -> list[list[int]]:
    """``A[i][j] = 2 (a_i, a_j) / (a_i, a_i)``."""
    return [[int(2 * dot(a, b) / dot(a, a)) for b in roots] for a in roots]


def positive_roots(roots) -> dict[tuple, tuple[int, ...]]:
    """All positive roots with their coefficient vectors, by closing under simple reflections."""
    n = len(roots)
    A = cartan_from_roots(roots)
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(unit)
    frontier = list(unit)
    while frontier:
        c = frontier.pop()
        for i in range(n):
            # s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
            pair = sum(A[i][j] * c[j] for j in range(n))
            d = list(c)
            d[i] -= pair
            d = tuple(d)
            if all(x >= 0 for x in d) and any(d) and d not in found:
                found.add(d)
                frontier.append(d)
    return {tuple(sum(cj * r[k] for cj, r in zip(c, roots)) for k in range(len(roots[0]))): c
            for c in found}


def highest_root_coefficients(roots) -> tuple[int, ...]:
    pos = positive_roots(roots)
    return max(pos.values(), key=sum)
