"""Connected components of marked representation spaces of surface groups.

For a compact connected ``G`` and the surface ``Sigma^{l,r}_i`` (``l``
handles, ``r`` boundary circles, plus nothing / a projective plane / a Klein
bottle for ``i = 0, 1, 2``), the component set of
``Hom_{C_1..C_r}(pi_1(Sigma), G) / G`` is in bijection with

* ``pi_1(G_ss) / J``  when ``i = 0`` and ``l >= 1``,
* ``pi_1(G) / J'``     when ``i in {1, 2}`` and ``l >= i``,

where ``J`` is generated by the stabilizers of the markings and ``J'`` by
``J`` together with ``2 pi_1(G)``.  Outside those ranges nothing is claimed
and the answer is ``OUT_OF_RANGE``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .abelian import IsoType, doubling_subgroup, lattice_membership, quotient_by
from .conjugacy import MarkingSpec, compute_J
from .groups import CompactGroupModel


class Status(str, enum.Enum):
    OK = "OK"
    EMPTY = "EMPTY"
    OUT_OF_RANGE = "OUT_OF_RANGE"


@dataclass(frozen=True)
class SurfaceSpec:
    handles: int
    boundary: int = 0
    kind: int = 0

    def __post_init__(self):
        if self.handles < 0 or self.boundary < 0:
            raise ValueError("surface: l and r must be non-negative")
        if self.kind not in (0, 1, 2):
            raise ValueError("surface: kind must be 0, 1 or 2")

    @property
    def orientable(self) -> bool:
        return self.kind == 0

    @property
    def crosscaps(self) -> int | None:
        """``m`` for nonorientable surfaces, None otherwise."""
        return 2 * self.handles + self.kind if self.kind else None

    @classmethod
    def parse(cls, text: str) -> "SurfaceSpec":
        """Parse ``"l=1,r=0,kind=2"`` (``kind`` may also be written ``i``)."""
        vals = {"l": 0, "r": 0, "kind": 0}
        for item in filter(None, (p.strip() for p in text.split(","))):
            key, sep, val = item.partition("=")
            key = {"i": "kind", "ell": "l"}.get(key.strip(), key.strip())
            if not sep or key not in vals:
                raise ValueError(f"surface: cannot parse {item!r} (expected l=,r=,kind=)")
            try:
                vals[key] = int(val)
            except ValueError:
                raise ValueError(f"surface.{key}: expected an integer, got {val.strip()!r}") from None
        return cls(vals["l"], vals["r"], vals["kind"])

    def to_dict(self) -> dict:
        return {"l": self.handles, "r": self.boundary, "kind": self.kind}


@dataclass(frozen=True)
class Applicability:
    ok: bool
    reason: str | None = None
    trivial: bool = False


def applicability(s: SurfaceSpec) -> Applicability:
    l, r, i = s.handles, s.boundary, s.kind
    if i == 0:
        if l >= 1:
            return Applicability(True)
        if r == 0:
            return Applicability(True, "sphere: the representation space is a point", trivial=True)
        return Applicability(False, f"genus 0 with r={r} boundary components is not covered")
    if l >= i:
        return Applicability(True)
    m = 2 * l + i
    return Applicability(False, f"m={m} excluded (results need m not in {{1, 2, 4}})")


def check_nonempty(s: SurfaceSpec, markings: Sequence[MarkingSpec], model: CompactGroupModel) -> bool:
    """Whether the marked representation space is nonempty.

    Orientable: the torus parts must sum into the lattice ``Lambda`` (so the
    product of boundary holonomies lies in ``G_ss``).  Nonorientable: always.
    """
    if s.kind != 0 or s.boundary == 0:
        return True
    t = model.torus_rank
    total = [sum((m.torus[j] for m in markings), Fraction(0)) for j in range(t)]
    if any(x.denominator != 1 for x in total):
        return False
    return lattice_membership([int(x) for x in total], model.lambda_check)


@dataclass(frozen=True)
class FlatBundleSummary:
    h2: IsoType
    flat_classes: int
    all_classes_flat: bool
    moduli_connected: bool

    def to_dict(self) -> dict:
        return {"H2": str(self.h2), "flat_classes": self.flat_classes,
                "all_classes_flat": self.all_classes_flat,
                "moduli_connected": self.moduli_connected}


@dataclass(frozen=True)
class ComponentReport:
    status: Status
    component_group: IsoType | None = None
    target_name: str | None = None
    reason: str | None = None
    trivial: bool = False
    flat_bundle: FlatBundleSummary | None = None

    @property
    def count(self) -> int | None:
        return None if self.component_group is None else self.component_group.order

    def to_dict(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.status is Status.OK:
            out["count"] = self.count
            out["group"] = str(self.component_group)
            out["target"] = self.target_name
        if self.trivial:
            out["trivial"] = True
        if self.reason and not self.trivial:
            out["reason"] = self.reason
        if self.flat_bundle is not None:
            out["flat_bundle"] = self.flat_bundle.to_dict()
        return out


def _check_markings(s: SurfaceSpec, markings: Sequence[MarkingSpec], model: CompactGroupModel):
    if len(markings) != s.boundary:
        raise ValueError(f"markings: surface has r={s.boundary} boundary components "
                         f"but {len(markings)} markings were given")
    for m in markings:
        m.validate(model)


def component_group(s: SurfaceSpec, markings: Sequence[MarkingSpec],
                    model: CompactGroupModel) -> ComponentReport:
    app = applicability(s)
    if not app.ok:
        return ComponentReport(Status.OUT_OF_RANGE, reason=app.reason)
    if app.trivial:
        return ComponentReport(Status.OK, IsoType(0), None, app.reason, trivial=True)
    _check_markings(s, markings, model)
    if not check_nonempty(s, markings, model):
        return ComponentReport(Status.EMPTY,
                               reason="product of boundary holonomies is not in [G, G]")
    J = compute_J(markings, model)
    if s.kind == 0:
        gss = model.pi1_Gss
        if s.boundary == 0:
            return ComponentReport(Status.OK, gss.iso_type(), "pi1Gss")
        q = quotient_by(gss, [model.pi1_Gss_coords(z) for z in J])
        return ComponentReport(Status.OK, q.iso_type(), "pi1Gss_mod_J")
    g = model.pi1_G
    gens = doubling_subgroup(g) + [model.embed_in_pi1_G(z) for z in J]
    q = quotient_by(g, gens)
    target = "pi1G_mod_2pi1G" if s.boundary == 0 else "pi1G_mod_Jprime"
    return ComponentReport(Status.OK, q.iso_type(), target)


def flat_bundle_report(s: SurfaceSpec, model: CompactGroupModel) -> FlatBundleSummary:
    """Which topological bundles over a closed surface carry flat connections.

    Orientable: bundle classes are ``H^2 = pi_1(G)``; exactly the torsion
    classes (the image of ``pi_1(G_ss)``) admit flat connections, each with
    connected moduli.  Nonorientable: ``H^2 = pi_1(G) / 2 pi_1(G)`` and every
    class admits flat connections with connected moduli.
    """
    if s.boundary:
        raise ValueError("flat bundle report needs a closed surface (r = 0); with boundary "
                         "the moduli space is the marked representation space")
    app = applicability(s)
    if not app.ok or app.trivial:
        raise ValueError(f"surface out of range: {app.reason}")
    if s.kind == 0:
        tors = model.pi1_Gss.iso_type().order
        return FlatBundleSummary(model.pi1_G.iso_type(), tors, model.torus_rank == 0, True)
    h2 = quotient_by(model.pi1_G, doubling_subgroup(model.pi1_G)).iso_type()
    return FlatBundleSummary(h2, h2.order, True, True)
