import random
from fractions import Fraction as F

import pytest

from oracles import random_kac, random_spec
from surfcomp.abelian import IsoType
from surfcomp.components import (
    Status,
    SurfaceSpec,
    applicability,
    check_nonempty,
    component_group,
    flat_bundle_report,
)
from surfcomp.conjugacy import KacPoint, MarkingSpec, act_center
from surfcomp.groups import CenterElement, build_model, named_group

SO3 = build_model(named_group("SO(3)"))


def so3(p):
    p = F(p)
    return MarkingSpec((), KacPoint(((1 - p, p),)))


def random_marking(rng, model, zero_torus=True):
    torus = tuple(F(0) if zero_torus else F(rng.randint(-3, 3), rng.randint(1, 3))
                  for _ in range(model.torus_rank))
    return MarkingSpec(torus, KacPoint(tuple(random_kac(rng, t, den=4) for t in model.factors)))


def symmetric_marking(rng, model):
    """Random marking averaged with its translate by a kernel element, so K_D is nontrivial."""
    mk = random_marking(rng, model)
    z = rng.choice(model.ker_rho_ss)
    moved = act_center(z, mk.alcove)
    avg = tuple(tuple((a + b) / 2 for a, b in zip(u, v))
                for u, v in zip(mk.alcove.coords, moved.coords))
    return MarkingSpec(mk.torus, KacPoint(avg))


def closure(gens, factors):
    ident = CenterElement.identity(factors)
    seen, frontier = {ident}, [ident]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g.compose(x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def test_applicability_examples():
    a = applicability(SurfaceSpec(1, 0, 2))
    assert not a.ok and "m=4" in a.reason
    assert applicability(SurfaceSpec(2, 3, 1)).ok
    s = applicability(SurfaceSpec(0, 0, 0))
    assert s.ok and s.trivial
    assert not applicability(SurfaceSpec(0, 2, 0)).ok
    assert not applicability(SurfaceSpec(0, 0, 1)).ok
    assert not applicability(SurfaceSpec(0, 3, 2)).ok


@pytest.mark.parametrize("l", range(0, 4))
@pytest.mark.parametrize("r", range(0, 3))
@pytest.mark.parametrize("i", range(0, 3))
def test_applicability_rule(l, r, i):
    a = applicability(SurfaceSpec(l, r, i))
    if i == 0:
        assert a.ok == (l >= 1 or r == 0)
        assert a.trivial == (l == 0 and r == 0)
    else:
        assert a.ok == (l >= i)
        assert a.ok == (2 * l + i not in (1, 2, 4))


def test_surface_parse():
    assert SurfaceSpec.parse("l=1,r=0,kind=2") == SurfaceSpec(1, 0, 2)
    assert SurfaceSpec.parse("l=2, i=1") == SurfaceSpec(2, 0, 1)
    assert SurfaceSpec(2, 0, 1).crosscaps == 5 and SurfaceSpec(2).crosscaps is None
    for bad in ("l=x", "q=1", "l=1,kind=3", "l=-1"):
        with pytest.raises(ValueError, match="surface"):
            SurfaceSpec.parse(bad)


def test_nonempty_examples():
    u1 = build_model(named_group("U(1)"))
    half = MarkingSpec((F(1, 2),), KacPoint(()))
    assert not check_nonempty(SurfaceSpec(1, 1, 0), [half], u1)
    assert check_nonempty(SurfaceSpec(1, 1, 1), [half], u1)
    assert check_nonempty(SurfaceSpec(1, 2, 0), [half, half], u1)
    assert check_nonempty(SurfaceSpec(2, 2, 0), [so3("1/3"), so3("1/5")], SO3)


def test_nonempty_respects_lambda_check():
    # U(2) x U(2) / diagonal-ish: lattice spanned by (1,1),(0,2)
    from surfcomp.groups import spec_from_dict
    spec = spec_from_dict({"factors": [], "torus_rank": 2,
                           "kernel": [{"lattice": [1, 1], "center": []},
                                      {"lattice": [0, 2], "center": []}]})
    m = build_model(spec)
    mk = lambda a, b: MarkingSpec((F(a), F(b)), KacPoint(()))
    s = SurfaceSpec(1, 1, 0)
    assert check_nonempty(s, [mk(1, 1)], m)
    assert not check_nonempty(s, [mk(1, 0)], m)
    assert check_nonempty(SurfaceSpec(1, 2, 0), [mk("1/2", "1/2"), mk("1/2", "5/2")], m)
    assert not check_nonempty(SurfaceSpec(1, 2, 0), [mk("1/2", "1/2"), mk("1/2", "3/2")], m)


def test_component_group_examples():
    r = component_group(SurfaceSpec(2), [], SO3)
    assert r.status is Status.OK and r.count == 2 and str(r.component_group) == "Z/2"
    assert r.target_name == "pi1Gss"
    r = component_group(SurfaceSpec(1, 2, 0), [so3("1/2"), so3("1/3")], SO3)
    assert r.count == 1 and r.target_name == "pi1Gss_mod_J"
    r = component_group(SurfaceSpec(1, 0, 1), [], build_model(named_group("U(2)")))
    assert r.count == 2 and str(r.component_group) == "Z/2" and r.target_name == "pi1G_mod_2pi1G"
    su2 = build_model(named_group("SU(2)"))
    rng = random.Random(1)
    for s in (SurfaceSpec(1), SurfaceSpec(2, 2, 0), SurfaceSpec(1, 1, 1), SurfaceSpec(2, 3, 2)):
        marks = [random_marking(rng, su2) for _ in range(s.boundary)]
        assert component_group(s, marks, su2).count == 1
    r = component_group(SurfaceSpec(1, 1, 1), [so3("1/4")], SO3)
    assert r.count == 2 and r.target_name == "pi1G_mod_Jprime"


def test_status_paths():
    assert component_group(SurfaceSpec(1, 0, 2), [], SO3).status is Status.OUT_OF_RANGE
    sphere = component_group(SurfaceSpec(0), [], SO3)
    assert sphere.status is Status.OK and sphere.trivial and sphere.count == 1
    u1 = build_model(named_group("U(1)"))
    empty = component_group(SurfaceSpec(1, 1, 0), [MarkingSpec((F(1, 2),), KacPoint(()))], u1)
    assert empty.status is Status.EMPTY and empty.count is None
    assert empty.to_dict() == {"status": "EMPTY", "reason": empty.reason}


def test_marking_count_must_match_boundary():
    with pytest.raises(ValueError, match="markings"):
        component_group(SurfaceSpec(1, 2, 0), [so3("1/3")], SO3)


NAMED = ["SO(3)", "SU(2)", "U(2)", "PSU(3)", "PSU(4)", "SO(4)", "SO(5)", "SO(6)", "SO(8)",
         "U(1) x SO(3)", "T^2", "Sp(2)", "U(3) x PSU(2)"]


def models():
    rng = random.Random(99)
    out = [build_model(named_group(n)) for n in NAMED]
    out += [build_model(random_spec(rng)) for _ in range(30)]
    return out


MODELS = models()


@pytest.mark.parametrize("m", MODELS, ids=lambda m: str(m.spec))
def test_closed_orientable_count_is_torsion(m):
    for l in (1, 2, 3):
        r = component_group(SurfaceSpec(l), [], m)
        assert r.count == m.pi1_G_type.order if m.torus_rank == 0 else r.count == len(m.ker_rho_ss)
        assert r.component_group.torsion == m.pi1_G_type.torsion


@pytest.mark.parametrize("m", MODELS, ids=lambda m: str(m.spec))
def test_counts_against_closure_oracle(m):
    rng = random.Random(str(m.spec))
    for _ in range(10):
        r = rng.randint(1, 3)
        marks = [symmetric_marking(rng, m) if rng.random() < 0.4 else random_marking(rng, m)
                 for _ in range(r)]
        K = m.ker_rho_ss
        Jgens = [z for mk in marks for z in K if act_center(z, mk.alcove) == mk.alcove]
        J = closure(Jgens, m.factors)
        rep = component_group(SurfaceSpec(1, r, 0), marks, m)
        assert rep.count == len(K) // len(J)
        if m.torus_rank == 0:
            # pi1_G = ker rho_ss, J' = <J, squares>
            squares = [z.compose(z) for z in K]
            Jp = closure(Jgens + squares, m.factors)
            for i in (1, 2):
                rep = component_group(SurfaceSpec(i, r, i), marks, m)
                assert rep.count == len(K) // len(Jp)


@pytest.mark.parametrize("m", MODELS, ids=lambda m: str(m.spec))
def test_monotone_and_identity_marking(m):
    rng = random.Random(17)
    for kind, l in ((0, 1), (1, 1), (2, 2)):
        marks = []
        prev = component_group(SurfaceSpec(l, 0, kind), [], m).count
        for r in range(1, 4):
            with_id = component_group(SurfaceSpec(l, r, kind), marks + [MarkingSpec.identity(m)], m)
            assert with_id.count == prev
            marks.append(random_marking(rng, m))
            cur = component_group(SurfaceSpec(l, r, kind), marks, m)
            assert cur.count <= prev
            prev = cur.count


@pytest.mark.parametrize("m", MODELS, ids=lambda m: str(m.spec))
def test_nonorientable_count_divides_closed(m):
    rng = random.Random(23)
    for kind in (1, 2):
        closed = component_group(SurfaceSpec(kind, 0, kind), [], m).count
        for r in range(0, 3):
            marks = [random_marking(rng, m, zero_torus=False) for _ in range(r)]
            rep = component_group(SurfaceSpec(kind, r, kind), marks, m)
            assert rep.status is Status.OK
            assert closed % rep.count == 0


@pytest.mark.parametrize("n", range(3, 9))
def test_so_n_orientable_equals_nonorientable(n):
    m = build_model(named_group(f"SO({n})"))
    rng = random.Random(n)
    seen = set()
    for _ in range(40):
        r = rng.randint(0, 3)
        marks = [symmetric_marking(rng, m) if rng.random() < 0.3 else random_marking(rng, m)
                 for _ in range(r)]
        a = component_group(SurfaceSpec(1, r, 0), marks, m)
        b = component_group(SurfaceSpec(1, r, 1), marks, m)
        c = component_group(SurfaceSpec(2, r, 2), marks, m)
        assert a.component_group == b.component_group == c.component_group
        seen.add(a.count)
    assert seen == {1, 2}


@pytest.mark.parametrize("m", MODELS, ids=lambda m: str(m.spec))
def test_choice_independence(m):
    rng = random.Random(31)
    S = m.center.elements()
    for _ in range(10):
        r = rng.randint(1, 3)
        marks = [random_marking(rng, m) for _ in range(r)]
        moved = [MarkingSpec(mk.torus, act_center(rng.choice(S), mk.alcove)) for mk in marks]
        for s in (SurfaceSpec(1, r, 0), SurfaceSpec(2, r, 1)):
            assert component_group(s, marks, m) == component_group(s, moved, m)


@pytest.mark.parametrize("m", MODELS, ids=lambda m: str(m.spec))
def test_closed_equals_identity_marked(m):
    for l, i in ((1, 0), (2, 0), (1, 1), (2, 2), (3, 1)):
        closed = component_group(SurfaceSpec(l, 0, i), [], m)
        marked = component_group(SurfaceSpec(l, 1, i), [MarkingSpec.identity(m)], m)
        assert closed.component_group == marked.component_group


def test_flat_bundle_examples():
    u1 = build_model(named_group("U(1)"))
    fb = flat_bundle_report(SurfaceSpec(1), u1)
    assert fb.h2 == IsoType(1) and fb.flat_classes == 1 and not fb.all_classes_flat
    assert fb.moduli_connected
    fb = flat_bundle_report(SurfaceSpec(2), SO3)
    assert str(fb.h2) == "Z/2" and fb.flat_classes == 2 and fb.all_classes_flat
    fb = flat_bundle_report(SurfaceSpec(1, 0, 1), SO3)
    assert str(fb.h2) == "Z/2" and fb.flat_classes == 2 and fb.all_classes_flat
    fb = flat_bundle_report(SurfaceSpec(1, 0, 1), u1)
    assert str(fb.h2) == "Z/2" and fb.flat_classes == 2


def test_flat_bundle_rejects_boundary_and_out_of_range():
    with pytest.raises(ValueError, match="closed"):
        flat_bundle_report(SurfaceSpec(1, 1, 0), SO3)
    with pytest.raises(ValueError, match="out of range"):
        flat_bundle_report(SurfaceSpec(1, 0, 2), SO3)


def test_report_dict():
    r = component_group(SurfaceSpec(1), [], SO3)
    assert r.to_dict() == {"status": "OK", "count": 2, "group": "Z/2", "target": "pi1Gss"}
    s = component_group(SurfaceSpec(0), [], SO3)
    assert s.to_dict() == {"status": "OK", "count": 1, "group": "trivial", "target": None,
                           "trivial": True}
