import pytest

from hallalg.catalog import ALGEBRA_IDS, SPEC_CLASSES, make_spec
from hallalg.engine import normalize
from hallalg.quiver import Quiver, QuiverCategory
from hallalg.relations import Window, relation_families

A1 = QuiverCategory(Quiver.linear(1), 2, (2,))
A2 = QuiverCategory(Quiver.linear(2), 3, (1, 1))


def test_window_helpers():
    w = Window((1, 1), -2, 3, 1)
    assert list(w.degrees()) == [-2, -1, 0, 1, 2, 3]
    assert len(w.k0_grid(2)) == 9
    s1, s2, p = A2.by_name("S1"), A2.by_name("S2"), A2.by_name("M1_1")
    assert w.fits(s1, s2)
    assert not w.fits(s1, p)
    assert all(not c.is_zero for c in w.classes(A2))
    assert w.to_json() == {"bound": [1, 1], "degrees": [-2, 3], "k0_radius": 1}


@pytest.mark.parametrize("algebra", sorted(SPEC_CLASSES))
def test_every_family_holds_on_a1(algebra):
    spec = make_spec(algebra, A1)
    window = Window((2,), -2, 3, 2)
    seen = set()
    for fam, lhs, rhs in relation_families(algebra, A1, window):
        seen.add(fam)
        assert normalize(lhs, spec) == normalize(rhs, spec), fam
    assert len(seen) >= 3


@pytest.mark.parametrize("algebra", ["MH_ctw", "DH_tw", "L_star", "H_tw_e"])
def test_every_family_holds_on_a2_q3(algebra):
    spec = make_spec(algebra, A2)
    window = Window((1, 1), -1, 2, 1)
    for fam, lhs, rhs in relation_families(algebra, A2, window):
        assert normalize(lhs, spec) == normalize(rhs, spec), fam


def test_stalks_only_drops_torus_letters():
    window = Window((2,), -1, 2, 1)
    for _, lhs, rhs in relation_families("DH_tw", A1, window, stalks_only=True):
        for w, _ in list(lhs) + list(rhs):
            assert all(g.kind == "Z" for g in w)


def test_family_names_cover_derived_relations():
    names = {f for f, _, _ in relation_families("DH", A1, Window((2,), -2, 3, 1))}
    assert {"same-degree product", "adjacent-degree objects", "distant-degree objects"} <= names


def test_unknown_algebra():
    with pytest.raises(KeyError):
        list(relation_families("nope", A1, Window((2,), 0, 1, 1)))


def test_all_cli_ids_have_families():
    for internal in ALGEBRA_IDS.values():
        assert next(iter(relation_families(internal, A1, Window((2,), 0, 1, 1))), None) is not None
