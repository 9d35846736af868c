"""Conjugacy classes of the universal cover, center actions and the subgroup J.

A conjugacy class of the cover ``R^t x G_ss~`` is a torus coordinate ``X``
together with one Kac-coordinate vector per simple factor.  All arithmetic
is exact (``fractions.Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groups import CenterElement, CompactGroupModel
from .rootdata import CartanType, extended_diagram


def parse_rational(x) -> Fraction:
    """Accept ``"p/q"`` strings and integers; floats are rejected on purpose."""
    if isinstance(x, bool) or isinstance(x, float):
        raise ValueError(f"rational expected as 'p/q' string, got {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ValueError(f"cannot parse rational {x!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class KacPoint:
    coords: tuple[tuple[Fraction, ...], ...]

    def validate(self, factors: Sequence[CartanType]) -> None:
        if len(self.coords) != len(factors):
            raise ValueError(f"kac: expected {len(factors)} factor vectors, got {len(self.coords)}")
        for k, (t, s) in enumerate(zip(factors, self.coords)):
            marks = extended_diagram(t).marks
            if len(s) != len(marks):
                raise ValueError(f"kac[{k}]: type {t} needs {len(marks)} coordinates, got {len(s)}")
            if any(x < 0 for x in s):
                raise ValueError(f"kac[{k}]: coordinates must be non-negative")
            if sum(a * x for a, x in zip(marks, s)) != 1:
                raise ValueError(f"kac[{k}]: sum of marks * coordinates must equal 1")

    @classmethod
    def identity(cls, factors: Sequence[CartanType]) -> "KacPoint":
        return cls(tuple((Fraction(1),) + (Fraction(0),) * t.rank for t in factors))


@dataclass(frozen=True)
class MarkingSpec:
    torus: tuple[Fraction, ...]
    alcove: KacPoint

    def validate(self, model: CompactGroupModel) -> None:
        if len(self.torus) != model.torus_rank:
            raise ValueError(f"torus: expected {model.torus_rank} entries, got {len(self.torus)}")
        self.alcove.validate(model.factors)

    @classmethod
    def identity(cls, model: CompactGroupModel) -> "MarkingSpec":
        return cls((Fraction(0),) * model.torus_rank, KacPoint.identity(model.factors))

    @classmethod
    def from_dict(cls, data: dict, where: str = "marking") -> "MarkingSpec":
        if not isinstance(data, dict):
            raise ValueError(f"{where}: expected an object")
        try:
            torus = tuple(parse_rational(x) for x in data.get("torus", []))
        except ValueError as e:
            raise ValueError(f"{where}.torus: {e}") from None
        kac = data.get("kac")
        if not isinstance(kac, list) or not all(isinstance(v, list) for v in kac):
            raise ValueError(f"{where}.kac: expected a list of coordinate lists")
        try:
            coords = tuple(tuple(parse_rational(x) for x in v) for v in kac)
        except ValueError as e:
            raise ValueError(f"{where}.kac: {e}") from None
        return cls(torus, KacPoint(coords))

    def to_dict(self) -> dict:
        return {"torus": [format_rational(x) for x in self.torus],
                "kac": [[format_rational(x) for x in v] for v in self.alcove.coords]}


def act_center(z: CenterElement, p: KacPoint) -> KacPoint:
    """The class ``z * D`` for ``D`` the class with Kac coordinates ``p``."""
    if len(z.parts) != len(p.coords):
        raise ValueError("center element and Kac point have different factor structure")
    out = []
    for aut, s in zip(z.parts, p.coords):
        if len(aut.perm) != len(s):
            raise ValueError("center element and Kac point have different factor structure")
        out.append(aut.act(s))
    return KacPoint(tuple(out))


def stabilizer(p: KacPoint, S: Sequence[CenterElement]) -> list[CenterElement]:
    return [z for z in S if act_center(z, p) == p]


@dataclass(frozen=True)
class PreimageInfo:
    count: int
    degree: int
    K_D: tuple[CenterElement, ...]


def preimage_components(m: MarkingSpec, model: CompactGroupModel) -> PreimageInfo:
    """Components of the preimage of ``C = rho(D)`` lying over the torus coordinate of ``D``.

    ``degree`` is the degree of ``D -> C``, i.e. ``|K_D|``; ``count`` is
    ``|ker(rho_ss)| / |K_D|``, the number of classes ``zD`` with ``z`` in
    ``ker(rho_ss)``.
    """
    m.validate(model)
    K = stabilizer(m.alcove, model.ker_rho_ss)
    n = len(model.ker_rho_ss)
    assert n % len(K) == 0
    return PreimageInfo(n // len(K), len(K), tuple(K))


def compute_J(markings: Sequence[MarkingSpec], model: CompactGroupModel) -> list[CenterElement]:
    """Generators of ``J``: the union of the stabilizers ``K_{D_j}`` (identity omitted)."""
    gens: list[CenterElement] = []
    for m in markings:
        for z in preimage_components(m, model).K_D:
            if not z.is_identity() and z not in gens:
                gens.append(z)
    return gens
