"""Cartan matrices, extended Dynkin diagrams and centers of simply connected groups.

Conventions
-----------
* Nodes use Bourbaki numbering ``1..n``; the affine node is ``0``.
* ``A[i][j] = <alpha_i^vee, alpha_j>`` (row = coroot), so the marks
  ``a`` (coefficients of the highest root) satisfy ``A_ext @ a = 0``.
* A point of the fundamental alcove is written in Kac coordinates
  ``(s_0, ..., s_n)`` with ``s_i = alpha_i(x)`` for ``i >= 1`` and
  ``s_0 = 1 - theta(x)``; these satisfy ``sum(a_i * s_i) == 1``.

The center ``Z`` of the simply connected group is not tabulated.  Each
nontrivial element is ``exp(2 pi i w)`` for a minuscule coweight ``w`` (a
mark-1 node); translating a generic alcove point by ``w`` and folding it back
with affine reflections yields the induced permutation of the Kac
coordinates.  That permutation is then checked against an exhaustive search
for diagram automorphisms, and ``|Z|`` against ``|det A|``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

from .abelian import FgAbelianGroup, IntMatrix, smith_normal_form

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4, "E": 6, "F": 4, "G": 2}


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        if fam not in _MIN_RANK:
            raise ValueError(f"unknown Cartan family {self.family!r}")
        n = self.rank
        ok = {
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(fam, n >= _MIN_RANK[fam])
        if not ok:
            raise ValueError(f"invalid rank {n} for family {fam}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _gram(t: CartanType) -> tuple[list[Fraction], dict[tuple[int, int], Fraction]]:
    """Squared lengths of simple roots and nonzero inner products (1-based)."""
    n, fam = t.rank, t.family
    L = [Fraction(2)] * n
    edges: dict[tuple[int, int], Fraction] = {}
    chain = [(i, i + 1) for i in range(1, n)]
    if fam == "A":
        pairs = chain
    elif fam == "B":
        pairs = chain
        L[n - 1] = Fraction(1)
    elif fam == "C":
        pairs = chain
        L = [Fraction(1)] * (n - 1) + [Fraction(2)]
    elif fam == "D":
        pairs = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    elif fam == "E":
        pairs = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
    elif fam == "F":
        pairs = chain
        L = [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
    else:  # G2: alpha_1 short
        pairs = chain
        L = [Fraction(2, 3), Fraction(2)]
    for i, j in pairs:
        # the longer root's Cartan entry is -1
        ip = -max(L[i - 1], L[j - 1]) / 2
        edges[(i, j)] = edges[(j, i)] = ip
    return L, edges


def cartan_matrix(t: CartanType) -> IntMatrix:
    """``n x n`` Cartan matrix, Bourbaki numbering, rows indexed by coroots."""
    L, edges = _gram(t)
    n = t.rank
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            ip = L[i] if i == j else edges.get((i + 1, j + 1), Fraction(0))
            val = 2 * ip / L[i]
            assert val.denominator == 1
            A[i][j] = int(val)
    return A


def _marks(t: CartanType) -> list[int]:
    n, fam = t.rank, t.family
    if fam == "A":
        return [1] * n
    if fam == "B":
        return [1] + [2] * (n - 1)
    if fam == "C":
        return [2] * (n - 1) + [1]
    if fam == "D":
        return [1] + [2] * (n - 3) + [1, 1]
    return {
        ("E", 6): [1, 2, 2, 3, 2, 1],
        ("E", 7): [2, 2, 3, 4, 3, 2, 1],
        ("E", 8): [2, 3, 4, 6, 5, 4, 3, 2],
        ("F", 4): [2, 3, 4, 2],
        ("G", 2): [3, 2],
    }[(fam, n)]


@dataclass(frozen=True)
class ExtendedDiagram:
    type: CartanType
    extended_cartan: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]

    @property
    def nodes(self) -> range:
        return range(len(self.marks))

    @property
    def special_nodes(self) -> list[int]:
        return [i for i, a in enumerate(self.marks) if a == 1]


@lru_cache(maxsize=None)
def extended_diagram(t: CartanType) -> ExtendedDiagram:
    A = cartan_matrix(t)
    L, _ = _gram(t)
    n = t.rank
    a = _marks(t)
    Lmax = max(L)
    # theta^vee = sum a_i^vee alpha_i^vee with a_i^vee = a_i |alpha_i|^2 / |theta|^2
    comarks = []
    for ai, Li in zip(a, L):
        c = ai * Li / Lmax
        assert c.denominator == 1
        comarks.append(int(c))
    ext = [[0] * (n + 1) for _ in range(n + 1)]
    ext[0][0] = 2
    for i in range(n):
        for j in range(n):
            ext[i + 1][j + 1] = A[i][j]
    for j in range(n):
        # <alpha_0^vee, alpha_j> = -<theta^vee, alpha_j>;  <alpha_j^vee, alpha_0> = -<alpha_j^vee, theta>
        ext[0][j + 1] = -sum(comarks[i] * A[i][j] for i in range(n))
        ext[j + 1][0] = -sum(A[j][i] * a[i] for i in range(n))
    marks = (1, *a)
    for i in range(n + 1):
        if sum(ext[i][j] * marks[j] for j in range(n + 1)) != 0:
            raise AssertionError(f"mark table inconsistent for {t}")
    return ExtendedDiagram(t, tuple(map(tuple, ext)), marks, (1, *comarks))


@dataclass(frozen=True)
class SpecialAutomorphism:
    """Permutation of the extended diagram's nodes: ``perm[i]`` is the image of node ``i``."""

    perm: tuple[int, ...]

    @property
    def label(self) -> int:
        """Image of the affine node, which names the element."""
        return self.perm[0]

    def compose(self, other: "SpecialAutomorphism") -> "SpecialAutomorphism":
        """``self`` after ``other``."""
        return SpecialAutomorphism(tuple(self.perm[other.perm[i]] for i in range(len(self.perm))))

    def inverse(self) -> "SpecialAutomorphism":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return SpecialAutomorphism(tuple(inv))

    def act(self, kac: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Permute Kac coordinates: the output at ``perm[i]`` is the input at ``i``."""
        out: list = [None] * len(self.perm)
        for i, j in enumerate(self.perm):
            out[j] = kac[i]
        return tuple(out)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p = p.compose(self)
            k += 1
        return k


def diagram_automorphisms(d: ExtendedDiagram) -> list[SpecialAutomorphism]:
    """All permutations preserving the extended Cartan matrix and the marks.

    Backtracking search; images are restricted to nodes with the same mark
    and diagonal/adjacency data, which keeps E8 (9 nodes) instant.
    """
    A, marks = d.extended_cartan, d.marks
    N = len(marks)
    found = []

    def extend(partial: list[int], used: set[int]):
        i = len(partial)
        if i == N:
            found.append(SpecialAutomorphism(tuple(partial)))
            return
        for j in range(N):
            if j in used or marks[j] != marks[i]:
                continue
            if all(A[i][k] == A[j][partial[k]] and A[k][i] == A[partial[k]][j]
                   for k in range(i)):
                partial.append(j)
                used.add(j)
                extend(partial, used)
                partial.pop()
                used.discard(j)

    extend([], set())
    return found


def _generic_point(d: ExtendedDiagram) -> list[Fraction]:
    """Alcove point (coordinates alpha_i(x), i >= 1) with pairwise distinct Kac coordinates."""
    n = len(d.marks) - 1
    S = sum(d.marks[i] * i for i in range(1, n + 1))
    den = 2 * S + n + 5
    return [Fraction(i, den) for i in range(1, n + 1)]


def _kac_of(d: ExtendedDiagram, f: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return (1 - sum(a * x for a, x in zip(d.marks[1:], f)), *f)


def fold_to_alcove(d: ExtendedDiagram, f: Sequence[Fraction]) -> list[Fraction]:
    """Move ``x`` (given by ``alpha_i(x)``) into the fundamental alcove.

    Uses the affine Weyl group generated by the simple reflections and the
    reflection in ``theta = 1``; both moves strictly decrease the distance to
    the alcove, so the loop terminates.
    """
    A = d.extended_cartan
    n = len(d.marks) - 1
    f = list(f)
    theta_check = [-A[0][j] for j in range(1, n + 1)]  # alpha_j(theta^vee)
    for _ in range(10_000):
        i = next((i for i in range(n) if f[i] < 0), None)
        if i is not None:
            c = f[i]
            # s_i x = x - alpha_i(x) alpha_i^vee
            f = [f[j] - c * A[i + 1][j + 1] for j in range(n)]
            continue
        th = sum(a * x for a, x in zip(d.marks[1:], f))
        if th > 1:
            c = th - 1
            f = [f[j] - c * theta_check[j] for j in range(n)]
            continue
        return f
    raise RuntimeError("alcove folding did not terminate")


def translation_automorphism(d: ExtendedDiagram, node: int) -> SpecialAutomorphism:
    """Permutation of Kac coordinates induced by the central element for ``node``.

    ``node`` must carry mark 1; node 0 gives the identity.
    """
    if d.marks[node] != 1:
        raise ValueError(f"node {node} has mark {d.marks[node]}, not a central element")
    f = _generic_point(d)
    before = _kac_of(d, f)
    g = list(f)
    if node:
        g[node - 1] += 1
    after = _kac_of(d, fold_to_alcove(d, g))
    perm = tuple(after.index(v) for v in before)
    return SpecialAutomorphism(perm)


class Center(NamedTuple):
    """Center of the simply connected group of one type.

    ``group`` presents the center as ``Z^k / R`` on the generator list
    ``generators``; ``elements`` lists every element, identity first.
    """

    group: FgAbelianGroup
    elements: list[SpecialAutomorphism]
    generators: tuple[SpecialAutomorphism, ...]
    table: dict  # coordinate vector (reduced box) -> element

    def element(self, coords: Sequence[int]) -> SpecialAutomorphism:
        n = len(self.elements[0].perm)
        out = SpecialAutomorphism(tuple(range(n)))
        for g, e in zip(self.generators, coords):
            for _ in range(e % g.order()):
                out = g.compose(out)
        return out

    def coords(self, z: SpecialAutomorphism) -> tuple[int, ...]:
        for vec, el in self.table.items():
            if el == z:
                return vec
        raise ValueError(f"{z} is not a central element")

    def by_label(self, label: int) -> SpecialAutomorphism:
        for z in self.elements:
            if z.label == label:
                return z
        raise ValueError(f"no central element sends node 0 to node {label}")

    @property
    def identity(self) -> SpecialAutomorphism:
        return self.elements[0]


def _close(gens: Sequence[SpecialAutomorphism], n: int) -> set[SpecialAutomorphism]:
    out = {SpecialAutomorphism(tuple(range(n)))}
    frontier = list(out)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g.compose(x)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return out


def present_permutation_group(elements: Sequence[SpecialAutomorphism]
                              ) -> tuple[FgAbelianGroup, tuple, dict]:
    """Abelian presentation of a finite abelian permutation group."""
    n = len(elements[0].perm)
    gens: list[SpecialAutomorphism] = []
    span = _close(gens, n)
    for z in sorted(elements, key=lambda z: (-z.order(), z.label)):
        if z not in span:
            gens.append(z)
            span = _close(gens, n)
    orders = [g.order() for g in gens]
    k = len(gens)
    rels = [tuple(o * int(i == j) for j in range(k)) for i, o in enumerate(orders)]
    table: dict = {}
    ident = SpecialAutomorphism(tuple(range(n)))
    for exps in itertools.product(*(range(o) for o in orders)):
        z = ident
        for g, e in zip(gens, exps):
            for _ in range(e):
                z = g.compose(z)
        if z in table.values():
            if any(exps):
                # a relation: exps ~ the earlier vector giving the same element
                prev = next(v for v, el in table.items() if el == z)
                rels.append(tuple(a - b for a, b in zip(exps, prev)))
        else:
            table[exps] = z
    return FgAbelianGroup(k, tuple(rels)), tuple(gens), table


@lru_cache(maxsize=None)
def center_group(t: CartanType) -> Center:
    """Center of the simply connected compact group of type ``t``.

    Raises AssertionError if the derived center disagrees with the diagram
    automorphisms or with ``|det(cartan_matrix(t))|``.
    """
    d = extended_diagram(t)
    auts = set(diagram_automorphisms(d))
    special = d.special_nodes
    omega = [translation_automorphism(d, k) for k in special]
    for z in omega:
        if z not in auts:
            raise AssertionError(f"{t}: translation by node {z.label} is not a diagram automorphism")
    if set(omega) != _close(omega, len(d.marks)):
        raise AssertionError(f"{t}: special automorphisms do not form a group")
    for k in special:
        hits = [z for z in omega if z.perm[k] == 0]
        if len(hits) != 1:
            raise AssertionError(f"{t}: action on mark-1 nodes is not simply transitive")
    _, D, _ = smith_normal_form(cartan_matrix(t))
    det = 1
    for i in range(t.rank):
        det *= D[i][i]
    if len(omega) != det:
        raise AssertionError(f"{t}: |center| = {len(omega)} but |det| = {det}")
    omega.sort(key=lambda z: z.label)
    group, gens, table = present_permutation_group(omega)
    return Center(group, omega, gens, table)
