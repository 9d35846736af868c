"""Compact connected Lie groups as ``(R^t x G_ss~) / ker(rho)``.

A group is specified by its simple factors (simply connected cover of the
semisimple part), the rank ``t`` of the central torus, and generators of the
central kernel.  Each kernel generator is a lattice vector in ``Z^t`` paired
with a central element of the simply connected factor product.

From this we derive ``pi_1(G)`` (the kernel itself), ``pi_1(G_ss)`` (its
elements with zero lattice part), the lattice ``Lambda`` of lattice parts,
and the order of ``D = H cap G_ss``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .abelian import (
    FgAbelianGroup,
    IsoType,
    hermite_normal_form,
    left_kernel,
    smith_normal_form,
    solve_in_span,
    subgroup_presentation,
)
from .rootdata import CartanType, Center, SpecialAutomorphism, center_group


@dataclass(frozen=True)
class CenterElement:
    """An element of the center of the product of simply connected factors."""

    parts: tuple[SpecialAutomorphism, ...]

    @classmethod
    def from_labels(cls, factors: Sequence[CartanType], labels: Sequence[int]) -> "CenterElement":
        if len(labels) != len(factors):
            raise ValueError(f"center element needs {len(factors)} labels, got {len(labels)}")
        return cls(tuple(center_group(t).by_label(int(k)) for t, k in zip(factors, labels)))

    @classmethod
    def identity(cls, factors: Sequence[CartanType]) -> "CenterElement":
        return cls(tuple(center_group(t).identity for t in factors))

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(p.label for p in self.parts)

    def compose(self, other: "CenterElement") -> "CenterElement":
        return CenterElement(tuple(a.compose(b) for a, b in zip(self.parts, other.parts)))

    def is_identity(self) -> bool:
        return all(p.is_identity() for p in self.parts)


class ProductCenter:
    """``Z(G_ss~)`` as a product of the factor centers, with integer coordinates."""

    def __init__(self, factors: Sequence[CartanType]):
        self.factors = tuple(factors)
        self.centers: tuple[Center, ...] = tuple(center_group(t) for t in self.factors)
        self._offsets = []
        rels = []
        k = 0
        for c in self.centers:
            self._offsets.append(k)
            k += c.group.ambient_rank
        self.rank = k
        for off, c in zip(self._offsets, self.centers):
            for r in c.group.relations:
                row = [0] * k
                row[off:off + len(r)] = r
                rels.append(tuple(row))
        self.group = FgAbelianGroup(k, tuple(rels))

    def coords(self, z: CenterElement) -> tuple[int, ...]:
        self.check(z)
        out: list[int] = []
        for c, p in zip(self.centers, z.parts):
            out.extend(c.coords(p))
        return tuple(out)

    def element(self, vec: Sequence[int]) -> CenterElement:
        parts = []
        for off, c in zip(self._offsets, self.centers):
            parts.append(c.element(vec[off:off + c.group.ambient_rank]))
        return CenterElement(tuple(parts))

    def elements(self) -> list[CenterElement]:
        return [CenterElement(tuple(ps)) for ps in itertools.product(*(c.elements for c in self.centers))]

    def check(self, z: CenterElement) -> None:
        if len(z.parts) != len(self.factors):
            raise ValueError(f"central element has {len(z.parts)} factors, group has {len(self.factors)}")
        for t, c, p in zip(self.factors, self.centers, z.parts):
            if p not in c.elements:
                raise ValueError(f"{p.perm} is not a special automorphism of {t}")


@dataclass(frozen=True)
class KernelGen:
    lattice: tuple[int, ...]
    central: CenterElement


@dataclass(frozen=True)
class CompactGroupSpec:
    factors: tuple[CartanType, ...] = ()
    torus_rank: int = 0
    kernel_gens: tuple[KernelGen, ...] = ()
    name: str | None = field(default=None, compare=False)

    def __str__(self) -> str:
        if self.name:
            return self.name
        fs = " x ".join(map(str, self.factors)) or "1"
        return f"({fs} x R^{self.torus_rank}) / <{len(self.kernel_gens)} gens>"


class CompactGroupModel:
    """Derived fundamental-group data of a :class:`CompactGroupSpec`.

    Attributes
    ----------
    pi1_G : FgAbelianGroup
        ``ker(rho)``; elements are coefficient vectors on ``spec.kernel_gens``.
    pi1_Gss : FgAbelianGroup
        ``ker(rho_ss)``; elements are coefficient vectors on ``ker_rho_ss``.
    ker_rho_ss : list[CenterElement]
        Every element of ``ker(rho_ss)``, identity first.
    lambda_check : list[tuple[int, ...]]
        HNF basis of the lattice parts' span.
    D_order : int
        ``|H cap G_ss|``.
    """

    def __init__(self, spec: CompactGroupSpec):
        self.spec = spec
        t = spec.torus_rank
        self.center = ProductCenter(spec.factors)
        c = self.center.rank
        for g in spec.kernel_gens:
            if len(g.lattice) != t:
                raise ValueError(f"kernel lattice part {g.lattice} has length {len(g.lattice)}, "
                                 f"torus rank is {t}")
            self.center.check(g.central)
        self._L = [list(g.lattice) for g in spec.kernel_gens]
        self.lambda_check = [tuple(r) for r in hermite_normal_form(self._L, t)]
        if len(self.lambda_check) != t:
            raise ValueError("group not compact: lattice parts of the kernel do not span a "
                             f"rank-{t} lattice")
        # ambient A = Z^t x Z(G_ss~), kernel generators as rows of A
        self._A = FgAbelianGroup(t + c, tuple((0,) * t + r for r in self.center.group.relations))
        self._K = [tuple(g.lattice) + self.center.coords(g.central) for g in spec.kernel_gens]
        self.pi1_G = subgroup_presentation(self._K, self._A)

        self.ker_rho_ss = [z for z in self.center.elements()
                           if self._solve((0,) * t + self.center.coords(z)) is not None]
        self.ker_rho_ss.sort(key=lambda z: (not z.is_identity(), z.labels))
        self.pi1_Gss = subgroup_presentation([self.center.coords(z) for z in self.ker_rho_ss],
                                             self.center.group)

        # D = Lambda / p(ker rho cap (Z^t x {e}))
        cen = [list(self.center.coords(g.central)) for g in spec.kernel_gens]
        stacked = cen + [list(r) for r in self.center.group.relations]
        pure = [row[:len(cen)] for row in left_kernel(stacked, c)] if cen else []
        sub = [[sum(x * l[j] for x, l in zip(row, self._L)) for j in range(t)] for row in pure]
        self.D_order = _lattice_index(sub, t) // _lattice_index(self._L, t)

    def _solve(self, v: Sequence[int]):
        rows = self._K + [tuple(r) for r in self._A.relations]
        x = solve_in_span(v, rows)
        return None if x is None else x[:len(self._K)]

    @property
    def torus_rank(self) -> int:
        return self.spec.torus_rank

    @property
    def factors(self) -> tuple[CartanType, ...]:
        return self.spec.factors

    def in_ker_rho_ss(self, z: CenterElement) -> bool:
        return z in self.ker_rho_ss

    def pi1_Gss_coords(self, z: CenterElement) -> tuple[int, ...]:
        """Coordinates of ``z`` in the ``pi1_Gss`` presentation (a unit vector)."""
        i = self.ker_rho_ss.index(z)
        return tuple(int(i == j) for j in range(len(self.ker_rho_ss)))

    def embed_in_pi1_G(self, z: CenterElement) -> tuple[int, ...]:
        """Image of ``z`` in ``ker(rho_ss)`` under the inclusion into ``pi1_G``."""
        x = self._solve((0,) * self.torus_rank + self.center.coords(z))
        if x is None:
            raise ValueError(f"central element {z.labels} is not in ker(rho_ss)")
        return tuple(x)

    def project_p(self, x: Sequence[int]) -> tuple[int, ...]:
        """Lattice part of the ``pi1_G`` element with coefficients ``x``."""
        if len(x) != len(self._L):
            raise ValueError("dimension mismatch")
        t = self.torus_rank
        return tuple(sum(xi * row[j] for xi, row in zip(x, self._L)) for j in range(t))

    def kernel_of_p(self) -> list[tuple[int, ...]]:
        """Generators of ``ker(p)`` inside ``pi1_G``, computed from the lattice parts alone."""
        if not self._L:
            return []
        return [tuple(r) for r in left_kernel(self._L, self.torus_rank)]

    @cached_property
    def pi1_G_type(self) -> IsoType:
        return self.pi1_G.iso_type()

    @cached_property
    def pi1_Gss_type(self) -> IsoType:
        return self.pi1_Gss.iso_type()

    def exact_sequence_holds(self) -> bool:
        """``pi1_G`` has free rank ``t`` and torsion isomorphic to ``pi1_Gss``."""
        g, s = self.pi1_G_type, self.pi1_Gss_type
        return g.free_rank == self.torus_rank and s.free_rank == 0 and g.torsion == s.torsion


def _lattice_index(rows: Sequence[Sequence[int]], t: int) -> int:
    if t == 0:
        return 1
    _, D, _ = smith_normal_form(rows, t)
    idx = 1
    for i in range(t):
        d = D[i][i] if i < len(D) else 0
        if d == 0:
            raise ValueError("sublattice is not of full rank")
        idx *= d
    return idx


def build_model(spec: CompactGroupSpec) -> CompactGroupModel:
    return CompactGroupModel(spec)


# ---------------------------------------------------------------------------
# named groups

def _spin_factors(n: int) -> tuple[list[CartanType], int]:
    """Factors of Spin(n) and the label of the vector central element (per factor)."""
    if n == 3:
        return [CartanType("A", 1)], [1]
    if n == 4:
        return [CartanType("A", 1), CartanType("A", 1)], [1, 1]
    if n == 5:
        return [CartanType("B", 2)], [1]
    if n == 6:
        return [CartanType("A", 3)], [2]
    if n % 2:
        return [CartanType("B", n // 2)], [1]
    return [CartanType("D", n // 2)], [1]


def _single(name: str) -> CompactGroupSpec:
    s = name.strip()
    m = re.fullmatch(r"(SU|Spin|Sp|SO|U|PSU)\s*\(\s*(\d+)\s*\)", s, flags=re.IGNORECASE)
    if m:
        kind, n = m.group(1).upper(), int(m.group(2))
        if kind == "SU":
            if n < 2:
                raise ValueError(f"invalid rank in {name!r}: need n >= 2")
            return CompactGroupSpec((CartanType("A", n - 1),), 0, (), s)
        if kind == "PSU":
            if n < 2:
                raise ValueError(f"invalid rank in {name!r}: need n >= 2")
            t = CartanType("A", n - 1)
            gens = tuple(KernelGen((), CenterElement((g,))) for g in center_group(t).generators)
            return CompactGroupSpec((t,), 0, gens, s)
        if kind == "SPIN":
            if n < 3:
                raise ValueError(f"invalid rank in {name!r}: need n >= 3")
            fs, _ = _spin_factors(n)
            return CompactGroupSpec(tuple(fs), 0, (), s)
        if kind == "SO":
            if n < 3:
                raise ValueError(f"invalid rank in {name!r}: need n >= 3")
            fs, labels = _spin_factors(n)
            z = CenterElement.from_labels(fs, labels)
            return CompactGroupSpec(tuple(fs), 0, (KernelGen((), z),), s)
        if kind == "SP":
            if n < 1:
                raise ValueError(f"invalid rank in {name!r}: need n >= 1")
            t = {1: CartanType("A", 1), 2: CartanType("B", 2)}.get(n) or CartanType("C", n)
            return CompactGroupSpec((t,), 0, (), s)
        if kind == "U":
            if n < 1:
                raise ValueError(f"invalid rank in {name!r}: need n >= 1")
            if n == 1:
                return CompactGroupSpec((), 1, (KernelGen((1,), CenterElement(())),), s)
            t = CartanType("A", n - 1)
            # (k, g) -> exp(2 pi i k / n) g; node 1 is exp(-2 pi i / n) in SU(n)
            z = center_group(t).by_label(1)
            return CompactGroupSpec((t,), 1, (KernelGen((1,), CenterElement((z,))),), s)
    m = re.fullmatch(r"T\s*\^?\s*(\d+)", s, flags=re.IGNORECASE)
    if m:
        k = int(m.group(1))
        gens = tuple(KernelGen(tuple(int(i == j) for j in range(k)), CenterElement(()))
                     for i in range(k))
        return CompactGroupSpec((), k, gens, s)
    raise ValueError(f"unknown group name {name!r}")


def product_spec(specs: Iterable[CompactGroupSpec], name: str | None = None) -> CompactGroupSpec:
    specs = list(specs)
    factors: list[CartanType] = []
    for sp in specs:
        factors.extend(sp.factors)
    t = sum(sp.torus_rank for sp in specs)
    gens = []
    f_off = t_off = 0
    for sp in specs:
        for g in sp.kernel_gens:
            lat = [0] * t
            lat[t_off:t_off + sp.torus_rank] = g.lattice
            parts = [center_group(f).identity for f in factors]
            parts[f_off:f_off + len(sp.factors)] = g.central.parts
            gens.append(KernelGen(tuple(lat), CenterElement(tuple(parts))))
        f_off += len(sp.factors)
        t_off += sp.torus_rank
    return CompactGroupSpec(tuple(factors), t, tuple(gens), name)


def named_group(name: str) -> CompactGroupSpec:
    """Spec for ``SU(n)``, ``Spin(n)``, ``Sp(n)``, ``SO(n)``, ``U(n)``, ``PSU(n)``, ``T^k``
    or a product such as ``SU(2) x U(1)`` (``x``, ``*`` or ``×``)."""
    pieces = [p for p in re.split(r"\s*(?:×|\*|(?<=\))\s*x\s*|\s+x\s+)\s*", name.strip()) if p]
    if not pieces:
        raise ValueError("empty group name")
    if len(pieces) == 1:
        return _single(pieces[0])
    return product_spec([_single(p) for p in pieces], name.strip())


def spec_from_dict(data: dict) -> CompactGroupSpec:
    """Parse ``{"factors": [...], "torus_rank": t, "kernel": [...]}`` or ``{"name": ...}``."""
    if not isinstance(data, dict):
        raise ValueError("group: expected a JSON object")
    if "name" in data:
        return named_group(str(data["name"]))
    try:
        factors = tuple(CartanType.parse(str(f)) for f in data.get("factors", []))
    except ValueError as e:
        raise ValueError(f"group.factors: {e}") from None
    t = data.get("torus_rank", 0)
    if not isinstance(t, int) or t < 0:
        raise ValueError("group.torus_rank: expected a non-negative integer")
    gens = []
    for idx, item in enumerate(data.get("kernel", [])):
        where = f"group.kernel[{idx}]"
        if not isinstance(item, dict):
            raise ValueError(f"{where}: expected an object")
        lat = item.get("lattice", [0] * t)
        if not isinstance(lat, list) or not all(isinstance(x, int) for x in lat) or len(lat) != t:
            raise ValueError(f"{where}.lattice: expected {t} integers")
        labels = _center_labels(item.get("center", [0] * len(factors)), len(factors))
        if labels is None:
            raise ValueError(f"{where}.center: expected one node label per factor")
        try:
            z = CenterElement.from_labels(factors, labels)
        except ValueError as e:
            raise ValueError(f"{where}.center: {e}") from None
        gens.append(KernelGen(tuple(lat), z))
    return CompactGroupSpec(factors, t, tuple(gens), data.get("label"))


def _center_labels(raw, nfactors: int):
    if not isinstance(raw, list):
        return None
    if raw and all(isinstance(x, list) for x in raw):
        if len(raw) == 1 and len(raw[0]) == nfactors:
            raw = raw[0]
        elif all(len(x) == 1 for x in raw):
            raw = [x[0] for x in raw]
        else:
            return None
    if len(raw) != nfactors or not all(isinstance(x, int) for x in raw):
        return None
    return raw


def spec_to_dict(spec: CompactGroupSpec) -> dict:
    return {
        "factors": [str(f) for f in spec.factors],
        "torus_rank": spec.torus_rank,
        "kernel": [{"lattice": list(g.lattice), "center": list(g.central.labels)}
                   for g in spec.kernel_gens],
    }
