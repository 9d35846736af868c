"""Numerical obstruction evaluation for ``G = SO(3)`` via unit quaternions.

``Spin(3)`` is modelled by unit quaternions ``(w, x, y, z)``; the covering
map sends ``q`` to the rotation ``v -> q v q*``.  The quaternion
``(cos phi, 0, 0, sin phi)`` maps to the rotation by ``2 phi`` about the
z-axis, so class angles ``phi`` in ``[0, pi]`` parametrize conjugacy classes
of the cover exactly as the A1 Kac coordinate ``s_1 = phi / pi``.

A solution tuple for ``Sigma^{l,r}_i`` is ``(a_k, b_k)_{k<=l}``,
``(d_j)_{j<=r}``, ``(c_k)_{k<=i}`` with
``prod [a_k, b_k] * prod d_j * prod c_k^2 = I``.  Lifting every entry and
evaluating the same word upstairs gives ``+1`` or ``-1``: the obstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .components import SurfaceSpec

UNIT_TOL = 1e-12
ROT_TOL = 1e-9
RESIDUAL_TOL = 1e-8
SNAP_TOL = 1e-7
CLASS_TOL = 1e-6


@dataclass(frozen=True)
class UnitQuaternion:
    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2
        if abs(n - 1.0) > UNIT_TOL * 1e3:
            raise ValueError(f"quaternion not of unit norm (|q|^2 = {n})")

    def __mul__(self, o: "UnitQuaternion") -> "UnitQuaternion":
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = o.w, o.x, o.y, o.z
        return _unchecked(
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    def __neg__(self) -> "UnitQuaternion":
        return _unchecked(-self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> "UnitQuaternion":
        return _unchecked(self.w, -self.x, -self.y, -self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @classmethod
    def one(cls) -> "UnitQuaternion":
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def eta(cls, phi: float) -> "UnitQuaternion":
        """Torus element of the cover covering the z-rotation by ``2 phi``."""
        return cls(math.cos(phi), 0.0, 0.0, math.sin(phi))


def _unchecked(w, x, y, z) -> UnitQuaternion:
    q = object.__new__(UnitQuaternion)
    object.__setattr__(q, "w", w)
    object.__setattr__(q, "x", x)
    object.__setattr__(q, "y", y)
    object.__setattr__(q, "z", z)
    return q


def commutator(a, b):
    return a * b * a.inverse() * b.inverse()


def rotation_of(q: UnitQuaternion) -> np.ndarray:
    w, x, y, z = q.w, q.x, q.y, q.z
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def check_rotation(R) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3):
        raise ValueError(f"rotation must be 3x3, got shape {R.shape}")
    if np.linalg.norm(R @ R.T - np.eye(3)) > ROT_TOL or abs(np.linalg.det(R) - 1) > ROT_TOL:
        raise ValueError("matrix is not a rotation (orthogonal with determinant 1)")
    return R


def rot_x(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[1.0, 0, 0], [0, c, -s], [0, s, c]])


def rot_y(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, 0, s], [0, 1.0, 0], [-s, 0, c]])


def rot_z(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1.0]])


def rotation_angle(R) -> float:
    """Rotation angle in ``[0, pi]``."""
    return math.acos(max(-1.0, min(1.0, (np.trace(R) - 1) / 2)))


def lift(R) -> UnitQuaternion:
    """The preimage of ``R`` whose first nonzero component is positive."""
    R = check_rotation(R)
    tr = np.trace(R)
    # Shepperd: divide by the largest of the four squared components
    cands = [1 + tr, 1 + R[0, 0] - R[1, 1] - R[2, 2],
             1 - R[0, 0] + R[1, 1] - R[2, 2], 1 - R[0, 0] - R[1, 1] + R[2, 2]]
    k = int(np.argmax(cands))
    s = 2 * math.sqrt(max(cands[k], 0.0))
    if k == 0:
        q = [s / 4, (R[2, 1] - R[1, 2]) / s, (R[0, 2] - R[2, 0]) / s, (R[1, 0] - R[0, 1]) / s]
    elif k == 1:
        q = [(R[2, 1] - R[1, 2]) / s, s / 4, (R[0, 1] + R[1, 0]) / s, (R[0, 2] + R[2, 0]) / s]
    elif k == 2:
        q = [(R[0, 2] - R[2, 0]) / s, (R[0, 1] + R[1, 0]) / s, s / 4, (R[1, 2] + R[2, 1]) / s]
    else:
        q = [(R[1, 0] - R[0, 1]) / s, (R[0, 2] + R[2, 0]) / s, (R[1, 2] + R[2, 1]) / s, s / 4]
    q = np.array(q)
    q /= np.linalg.norm(q)
    lead = next((c for c in q if abs(c) > 1e-12), 1.0)
    if lead < 0:
        q = -q
    return UnitQuaternion(*map(float, q))


def lift_in_class(R, phi: float) -> tuple[UnitQuaternion, bool]:
    """Lift of ``R`` lying in the cover's class ``D_phi``.

    Returns ``(q, ambiguous)``; ``ambiguous`` is True when both lifts lie in
    the class (``phi = pi/2``: the stabilizer is the whole kernel), in which
    case the sign-convention lift is returned.
    """
    R = check_rotation(R)
    if not -CLASS_TOL <= phi <= math.pi + CLASS_TOL:
        raise ValueError(f"class angle {phi} outside [0, pi]")
    ang = rotation_angle(R)
    if abs(ang - min(2 * phi, 2 * math.pi - 2 * phi)) > CLASS_TOL:
        raise ValueError(f"rotation angle {ang:.9f} does not match class angle {phi:.9f}")
    q = lift(R)
    c = math.cos(phi)
    fits = [abs(q.w - c) <= CLASS_TOL, abs(-q.w - c) <= CLASS_TOL]
    if all(fits):
        return q, True
    if fits[0]:
        return q, False
    if fits[1]:
        return -q, False
    raise ValueError(f"no lift of the rotation lies in the class phi = {phi}")


@dataclass
class SolutionTuple:
    """A point of the representation space of ``Sigma^{l,r}_i`` with target ``e``.

    ``phis`` are the declared cover class angles divided by ``pi``.
    """

    a: list[np.ndarray]
    b: list[np.ndarray]
    d: list[np.ndarray] = field(default_factory=list)
    phis: list[Fraction] = field(default_factory=list)
    c: list[np.ndarray] = field(default_factory=list)

    @property
    def surface(self) -> SurfaceSpec:
        return SurfaceSpec(len(self.a), len(self.d), len(self.c))

    def word(self) -> np.ndarray:
        P = np.eye(3)
        for x, y in zip(self.a, self.b):
            P = P @ x @ y @ x.T @ y.T
        for x in self.d:
            P = P @ x
        for x in self.c:
            P = P @ x @ x
        return P

    def residual(self) -> float:
        return float(np.linalg.norm(self.word() - np.eye(3)))

    def conjugated(self, g) -> "SolutionTuple":
        g = np.asarray(g)
        f = lambda xs: [g @ x @ g.T for x in xs]
        return SolutionTuple(f(self.a), f(self.b), f(self.d), list(self.phis), f(self.c))

    def to_dict(self) -> dict:
        mat = lambda xs: [[float(v) for v in np.asarray(x).reshape(-1)] for x in xs]
        return {"surface": self.surface.to_dict(), "a": mat(self.a), "b": mat(self.b),
                "d": mat(self.d), "phi_over_pi": [str(p) for p in self.phis], "c": mat(self.c)}

    @classmethod
    def from_dict(cls, data: dict) -> "SolutionTuple":
        def mats(key):
            vals = data.get(key, [])
            out = []
            for k, v in enumerate(vals):
                if not isinstance(v, list) or len(v) != 9:
                    raise ValueError(f"{key}[{k}]: expected 9 row-major entries")
                out.append(np.array(v, dtype=float).reshape(3, 3))
            return out
        a, b = mats("a"), mats("b")
        if len(a) != len(b):
            raise ValueError("a and b must have the same length")
        d = mats("d")
        phis = [Fraction(str(p)) for p in data.get("phi_over_pi", [])]
        if len(phis) != len(d):
            raise ValueError("phi_over_pi: one class angle per d is required")
        return cls(a, b, d, phis, mats("c"))


@dataclass(frozen=True)
class Obstruction:
    sign: int
    residual: float
    ambiguous: tuple[bool, ...]


def _lifted_word(a, b, d, c) -> UnitQuaternion:
    q = UnitQuaternion.one()
    for x, y in zip(a, b):
        q = q * commutator(x, y)
    for x in d:
        q = q * x
    for x in c:
        q = q * x * x
    return q


def _lifts(t: SolutionTuple):
    for x in (*t.a, *t.b, *t.d, *t.c):
        check_rotation(x)
    res = t.residual()
    if res >= RESIDUAL_TOL:
        raise ValueError(f"tuple is not a solution (relation residual {res:.3e})")
    dl = [lift_in_class(x, float(p) * math.pi) for x, p in zip(t.d, t.phis)]
    return res, [lift(x) for x in t.a], [lift(x) for x in t.b], dl, [lift(x) for x in t.c]


def _snap(q: UnitQuaternion) -> int:
    v = q.as_array()
    for sign in (1, -1):
        if np.max(np.abs(v - sign * np.array([1.0, 0, 0, 0]))) <= SNAP_TOL:
            return sign
    raise AssertionError(f"lifted relator {v} is not central")


def evaluate_obstruction(t: SolutionTuple) -> Obstruction:
    """Sign of the lifted relator, the value of the obstruction in ``{+1, -1}``."""
    res, a, b, dl, c = _lifts(t)
    q = _lifted_word(a, b, [x for x, _ in dl], c)
    return Obstruction(_snap(q), res, tuple(amb for _, amb in dl))


def obstruction_values(t: SolutionTuple) -> set[int]:
    """All values over the admissible in-class lifts of the ``d_j``.

    A ``d_j`` with ambiguous lift contributes both signs, so the set has two
    elements exactly when the obstruction is only defined modulo ``J``.
    """
    _, a, b, dl, c = _lifts(t)
    base = _snap(_lifted_word(a, b, [x for x, _ in dl], c))
    return {base, -base} if any(amb for _, amb in dl) else {base}


def construct_witness(s: SurfaceSpec, phis: Sequence, target: int,
                      rng: np.random.Generator | None = None) -> SolutionTuple:
    """Solution tuple on ``s`` with boundary classes ``phis`` (multiples of pi) and obstruction ``target``.

    ``d_j`` is the z-rotation by ``2 pi phi_j``.  The first handle is
    ``(R_x(pi), R_z(beta))``: conjugation by ``R_x(pi)`` inverts the torus, so
    its lifted commutator is ``eta(-beta)``, and ``beta`` is chosen to cancel
    the torus angle of the other lifts, shifted by ``pi`` for ``target = -1``.
    Extra handles are commuting torus pairs and the ``c_k`` are identity
    unless ``rng`` is given, in which case they are random torus elements
    (absorbed into ``beta``) and the whole tuple is conjugated by a random
    rotation.  When a ``d_j`` sits at ``phi = pi/2`` the raw sign depends on
    which in-class lift the convention picks, so ``beta`` is shifted by ``pi``
    if needed to make ``evaluate_obstruction`` return ``target``.
    """
    if target not in (1, -1):
        raise ValueError("target must be +1 or -1")
    if s.handles < max(1, s.kind):
        raise ValueError("witness construction needs l >= max(1, i)")
    phis = [Fraction(p) for p in phis]
    if len(phis) != s.boundary:
        raise ValueError(f"need {s.boundary} class angles, got {len(phis)}")
    if any(not 0 <= p <= 1 for p in phis):
        raise ValueError("class angles must lie in [0, pi]")
    total = sum(float(p) * math.pi for p in phis)   # lifted d-product is eta(total)
    # draw every random ingredient up front so the tuple is a function of beta alone
    cg = [float(rng.uniform(-math.pi, math.pi)) if rng is not None else 0.0 for _ in range(s.kind)]
    extra = [tuple(map(float, rng.uniform(-math.pi, math.pi, size=2))) if rng is not None
             else (0.0, 0.0) for _ in range(s.handles - 1)]
    g = random_rotation(rng) if rng is not None else None
    total += sum(cg)                                 # each c lifts to eta(g/2), squared

    def build(beta: float) -> SolutionTuple:
        a = [rot_x(math.pi)] + [rot_z(u) for u, _ in extra]
        b = [rot_z(beta)] + [rot_z(v) for _, v in extra]
        d = [rot_z(2 * math.pi * float(p)) for p in phis]
        t = SolutionTuple(a, b, d, list(phis), [rot_z(x) for x in cg])
        return t if g is None else t.conjugated(g)

    beta = total + (0.0 if target == 1 else math.pi)
    t = build(beta)
    ob = evaluate_obstruction(t)
    if ob.sign != target:
        # only possible when some d_j sits at phi = pi/2 and its lift convention picked -eta
        assert any(ob.ambiguous)
        t = build(beta + math.pi)
    return t


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return rotation_of(UnitQuaternion(*map(float, v)))
