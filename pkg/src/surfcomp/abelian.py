"""Finitely generated abelian groups presented as ``Z^N / R``.

Everything here works with plain Python integers, so entries never overflow.
A group is a pair (ambient rank ``N``, relation rows spanning ``R``); elements
are integer vectors of length ``N`` and equality is decided by reduction
against the Hermite normal form of ``R``.

>>> G = FgAbelianGroup(2, ((2, 0), (0, 2)))
>>> str(G.iso_type())
'Z/2 x Z/2'
>>> str(quotient_by(G, [(1, 1)]).iso_type())
'Z/2'
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

IntMatrix = list[list[int]]
Vector = tuple[int, ...]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def vecmat(v: Sequence[int], M: Sequence[Sequence[int]], ncols: int) -> Vector:
    out = [0] * ncols
    for vi, row in zip(v, M):
        if vi:
            for j in range(ncols):
                out[j] += vi * row[j]
    return tuple(out)


def _check_rows(rows: Iterable[Sequence[int]], ncols: int) -> IntMatrix:
    out = []
    for r in rows:
        r = [int(x) for x in r]
        if len(r) != ncols:
            raise ValueError(f"dimension mismatch: row of length {len(r)}, expected {ncols}")
        out.append(r)
    return out


def smith_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None
                      ) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``D = U M V``.

    ``U`` and ``V`` are unimodular; ``D`` is diagonal with non-negative
    entries and ``D[i][i]`` divides ``D[i+1][i+1]``.  ``ncols`` is only
    needed when ``M`` has no rows.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    D = _check_rows(M, n)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return U, D, V
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> IntMatrix:
    """Row-style HNF of the lattice spanned by ``rows``; zero rows dropped.

    Pivots are positive and the entries above each pivot lie in ``[0, pivot)``.
    """
    H = [r for r in _check_rows(rows, ncols) if any(r)]
    r = 0
    for c in range(ncols):
        if r == len(H):
            break
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[k] = H[k], H[r]
            p = H[r][c]
            done = True
            for i in range(r + 1, len(H)):
                if H[i][c]:
                    q = H[i][c] // p
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    done = done and H[i][c] == 0
            if done:
                break
        if r < len(H) and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
            p = H[r][c]
            for i in range(r):
                q = H[i][c] // p
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
            r += 1
    return [row for row in H if any(row)]


def _hnf_reduce(v: Sequence[int], H: IntMatrix) -> list[int]:
    v = list(v)
    for row in H:
        c = next(j for j, x in enumerate(row) if x)
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def lattice_membership(v: Sequence[int], gens: Sequence[Sequence[int]]) -> bool:
    """True iff ``v`` is an integer combination of ``gens`` (via HNF)."""
    n = len(v)
    H = hermite_normal_form(gens, n)
    return not any(_hnf_reduce(v, H))


def solve_in_span(v: Sequence[int], gens: Sequence[Sequence[int]]) -> Vector | None:
    """Integer ``x`` with ``sum(x[i] * gens[i]) == v``, or None if impossible."""
    n = len(v)
    G = _check_rows(gens, n)
    if not G:
        return () if not any(v) else None
    U, D, V = smith_normal_form(G, n)
    w = vecmat(v, V, n)
    y = [0] * len(G)
    for i, wi in enumerate(w):
        d = D[i][i] if i < len(G) else 0
        if d == 0:
            if wi:
                return None
        elif wi % d:
            return None
        else:
            y[i] = wi // d
    return vecmat(y, U, len(G))


def left_kernel(M: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Basis of ``{x : x M = 0}`` over the integers."""
    if not M:
        return []
    U, D, _ = smith_normal_form(M, ncols)
    rank = sum(1 for i in range(min(len(M), ncols)) if D[i][i])
    return [list(row) for row in U[rank:]]


@dataclass(frozen=True)
class IsoType:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def order(self) -> int | None:
        """Group order, or None when the group is infinite."""
        return None if self.free_rank else prod(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "trivial"


@dataclass(frozen=True)
class FgAbelianGroup:
    ambient_rank: int
    relations: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        rels = tuple(tuple(r) for r in _check_rows(self.relations, self.ambient_rank))
        object.__setattr__(self, "relations", rels)

    @classmethod
    def cyclic(cls, n: int) -> "FgAbelianGroup":
        """Z/n (n = 0 gives Z)."""
        return cls(1, ((n,),) if n else ())

    @cached_property
    def _snf(self):
        return smith_normal_form(self.relations, self.ambient_rank)

    @cached_property
    def _hnf(self):
        return hermite_normal_form(self.relations, self.ambient_rank)

    @cached_property
    def _divisors(self) -> tuple[int, ...]:
        # one modulus per ambient coordinate after the change of basis V (0 = free)
        _, D, _ = self._snf
        return tuple(D[i][i] if i < len(D) else 0 for i in range(self.ambient_rank))

    def iso_type(self) -> IsoType:
        divs = self._divisors
        return IsoType(sum(1 for d in divs if d == 0), tuple(d for d in divs if d > 1))

    def order(self) -> int | None:
        return self.iso_type().order

    def _check(self, v: Sequence[int]) -> None:
        if len(v) != self.ambient_rank:
            raise ValueError(f"dimension mismatch: element of length {len(v)} "
                             f"in group of ambient rank {self.ambient_rank}")

    def is_zero(self, v: Sequence[int]) -> bool:
        self._check(v)
        return not any(_hnf_reduce(v, self._hnf))

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.is_zero([a - b for a, b in zip(u, v)])

    def normal_form(self, v: Sequence[int]) -> Vector:
        """Canonical representative coordinates in the diagonal basis."""
        self._check(v)
        _, _, V = self._snf
        w = vecmat(v, V, self.ambient_rank)
        return tuple(x % d if d else x for x, d in zip(w, self._divisors))

    def elements(self) -> list[Vector]:
        """All elements of a finite group, as ambient vectors (one per class)."""
        if self.order() is None:
            raise ValueError("group is infinite")
        _, _, V = self._snf
        Vinv = _unimodular_inverse(V)
        divs = self._divisors
        ranges = [range(d) if d > 1 else range(1) for d in divs]
        return [vecmat(c, Vinv, self.ambient_rank) for c in itertools.product(*ranges)]

    def double(self, v: Sequence[int]) -> Vector:
        return tuple(2 * x for x in v)


def _unimodular_inverse(V: IntMatrix) -> IntMatrix:
    n = len(V)
    inv = []
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        # solve x V = e
        x = solve_in_span(e, V)
        assert x is not None
        inv.append(list(x))
    return inv


def iso_type(G: FgAbelianGroup) -> IsoType:
    return G.iso_type()


def quotient_by(G: FgAbelianGroup, gens: Iterable[Sequence[int]]) -> FgAbelianGroup:
    """``G`` modulo the subgroup generated by ``gens``."""
    extra = _check_rows(gens, G.ambient_rank)
    return FgAbelianGroup(G.ambient_rank, G.relations + tuple(tuple(g) for g in extra))


def doubling_subgroup(G: FgAbelianGroup) -> list[Vector]:
    """Generators ``2 e_i`` of ``2G = {k + k}``; doubles of generators suffice since G is abelian."""
    n = G.ambient_rank
    return [tuple(2 * int(i == j) for j in range(n)) for i in range(n)]


def subgroup_presentation(gens: Sequence[Sequence[int]], ambient: FgAbelianGroup
                          ) -> FgAbelianGroup:
    """Present ``<gens>`` inside ``ambient`` as ``Z^len(gens) / relations``.

    Elements of the result are coefficient vectors with respect to ``gens``.
    """
    n = ambient.ambient_rank
    G = _check_rows(gens, n)
    k = len(G)
    stacked = G + [list(r) for r in ambient.relations]
    rels = [tuple(row[:k]) for row in left_kernel(stacked, n)] if stacked else []
    return FgAbelianGroup(k, tuple(r for r in rels if any(r)))
