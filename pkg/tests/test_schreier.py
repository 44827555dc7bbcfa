"""Schreier points and special Schreier morphisms."""

from preordgrp.cones import explicit_cone, generator_cone
from preordgrp.groups import cyclic_group, make_fgab_group, make_hom
from preordgrp.schreier import ConeMonoid, is_schreier_point, is_special_schreier

Z = make_fgab_group(1, [])
Zmod2 = make_fgab_group(0, [2])
N = generator_cone(Z, [Z.elem([1])])


def test_identity_point():
    rep = is_schreier_point(ConeMonoid(N), p=lambda x: x, s=lambda x: x)
    assert rep.holds


def test_cone_level_of_z4_half_cone():
    # the kernel pair of {0, 2} -> {0} is all four pairs; each splits
    G = cyclic_group(4)
    H = cyclic_group(2)
    half = explicit_cone(G, [G.elem(0), G.elem(2)])
    h = make_hom(G, H, [H.elem(i % 2) for i in range(4)])
    rep = is_special_schreier(half, h)
    assert rep.holds and rep.exhaustive
    assert rep.checked == 4


def test_mod2_on_naturals_fails():
    mod2 = make_hom(Z, Zmod2, [Zmod2.elem([1])])
    rep = is_special_schreier(N, mod2)
    assert not rep.holds
    a, b = rep.witness
    # the witness pair has no kernel-part decomposition inside the naturals
    assert mod2(a) == mod2(b)
    assert (b - a).coords[0] < 0


def test_identity_on_any_cone():
    rep = is_special_schreier(N, make_hom(Z, Z, [Z.elem([1])]), width=5)
    assert rep.holds
    assert rep.window == 5 and not rep.exhaustive


def test_total_cone_quotient_is_special_schreier():
    # total cone on Z/4 mapped onto Z/4 / {0, 2}
    G = cyclic_group(4)
    H = cyclic_group(2)
    h = make_hom(G, H, [H.elem(i % 2) for i in range(4)])
    rep = is_special_schreier(explicit_cone(G, G.elements()), h)
    assert rep.holds and rep.exhaustive


def test_torsion_sequence_cone_rows_over_corpus():
    """The cone-level extension of every corpus torsion sequence is special
    Schreier: exhaustively on finite objects, on the window for fgab."""
    from preordgrp.corpus import corpus_objects
    from preordgrp.torsion import torsion_sequence
    for name, P in corpus_objects().items():
        dec = torsion_sequence(P)
        rep = is_special_schreier(P.cone, dec.unit.hom, width=4)
        assert rep.holds, name
        if P.group.backend == "finite":
            assert rep.exhaustive
