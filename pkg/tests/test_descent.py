"""Canonical covers, kernel pairs, discrete fibrations, coverings."""

import pytest

from preordgrp.cones import (
    cone_contains,
    explicit_cone,
    generator_cone,
    total_cone,
    transport_product,
)
from preordgrp.descent import (
    canonical_cover,
    is_covering,
    is_covering_along,
    is_discrete_fibration,
    kernel_pair,
)
from preordgrp.factor import in_class, induced_into_pullback
from preordgrp.groups import (
    cyclic_group,
    direct_product,
    make_fgab_group,
    make_hom,
)
from preordgrp.pog import (
    classify,
    compose_pog,
    identity_morphism,
    make_pog,
    make_pog_morphism,
    morphism_class,
    pog_pullback,
    structural_morphism,
    zero_morphism,
    zero_object,
)

Z = make_fgab_group(1, [])
Zmod2 = make_fgab_group(0, [2])
ZN = make_pog(Z, generator_cone(Z, [Z.elem([1])]))
Z2tot = make_pog(Zmod2, total_cone(Zmod2))


def mod2():
    return make_pog_morphism(make_hom(Z, Zmod2, [Zmod2.elem([1])]), ZN, Z2tot)


class TestCanonicalCover:
    def test_predicate_on_z2_total(self):
        cover = canonical_cover(Z2tot)
        v = cover.virtual
        one = Zmod2.elem([1])
        assert v.positive(1, one)
        assert not v.positive(0, one)
        assert not v.positive(-1, Zmod2.zero)
        assert v.positive(0, Zmod2.zero)

    def test_reducedness_window_scan(self):
        cover = canonical_cover(Z2tot)
        assert cover.scan.reducedness_violations == 0
        assert cover.scan.clean

    def test_projection_cone_surjectivity(self):
        cover = canonical_cover(ZN)
        H = cover.realized.group
        # 7 in the naturals lifts to (1, 7)
        assert cone_contains(cover.realized.cone, H.elem([1, 7]))
        rep = morphism_class(cover.projection)
        assert rep.normal_epi and rep.effective_descent

    def test_cover_is_partially_ordered(self):
        for P in (ZN, Z2tot):
            cover = canonical_cover(P)
            cls = classify(cover.realized)
            assert "partially_ordered" in cls
            assert "total" not in cls

    def test_corpus_covers_clean_and_normal_epi(self):
        from preordgrp.corpus import corpus_objects
        for name, P in corpus_objects().items():
            cover = canonical_cover(P, width=3)
            assert cover.scan.clean, name
            if cover.realized is not None:
                assert morphism_class(cover.projection).normal_epi, name

    def test_nonabelian_base_stays_virtual(self):
        from preordgrp.corpus import symmetric_group_3
        S3 = symmetric_group_3()
        P = make_pog(S3, explicit_cone(S3, [S3.zero]))
        cover = canonical_cover(P, width=3)
        assert cover.realized is None
        assert cover.scan.clean


class TestKernelPairs:
    def test_identity_gives_diagonal(self):
        R = kernel_pair(identity_morphism(ZN))
        assert all(R.verify_identities().values())
        # diagonal relation: projections agree everywhere
        for a in range(-2, 3):
            x = R.carrier.group.elem([a])
            assert R.r1.hom(x) == R.r2.hom(x)

    def test_mod2_pairs(self):
        R = kernel_pair(mod2())
        assert all(R.verify_identities().values())
        assert R.carrier.group.rank == 2

    def test_zero_map_total_relation(self):
        R = kernel_pair(zero_morphism(ZN, zero_object()))
        assert R.carrier.group.rank == 2
        assert all(R.verify_identities().values())

    def test_finite_kernel_pair(self):
        G = cyclic_group(4)
        H = cyclic_group(2)
        P = make_pog(G, explicit_cone(G, [G.elem(0), G.elem(2)]))
        Q = make_pog(H, explicit_cone(H, [H.zero]))
        m = make_pog_morphism(
            make_hom(G, H, [H.elem(i % 2) for i in range(4)]), P, Q)
        R = kernel_pair(m)
        assert R.carrier.group.order() == 8
        assert all(R.verify_identities().values())


class TestDiscreteFibrations:
    def test_identity_fibration(self):
        R = kernel_pair(mod2())
        rep = is_discrete_fibration(identity_morphism(R.carrier),
                                    identity_morphism(ZN), R, R)
        assert rep.holds

    def test_canonical_fibration_of_pullback(self):
        # pulling a morphism back along itself induces a discrete fibration
        # between the kernel pairs of the projections
        m = mod2()
        lim = pog_pullback(m, m)
        Eq = kernel_pair(m)
        pairs2 = kernel_pair(lim.legs[1])
        f1_hom = induced_into_pullback(
            pog_pullback(m, m),
            compose_pog(lim.legs[0], pairs2.r1),
            compose_pog(lim.legs[0], pairs2.r2))
        f1 = structural_morphism(f1_hom, pairs2.carrier, Eq.carrier, "induced")
        rep = is_discrete_fibration(f1, lim.legs[0], pairs2, Eq)
        assert rep.holds

    def test_collapse_fails(self):
        Rz = kernel_pair(zero_morphism(ZN, zero_object()))
        Rid = kernel_pair(identity_morphism(ZN))
        f1_hom = induced_into_pullback(
            pog_pullback(identity_morphism(ZN), identity_morphism(ZN)),
            Rz.r1, Rz.r1)
        f1 = structural_morphism(f1_hom, Rz.carrier, Rid.carrier, "collapse")
        rep = is_discrete_fibration(f1, identity_morphism(ZN), Rz, Rid)
        assert not rep.holds

    def test_galois_relation_of_cover_is_partially_ordered(self):
        # the kernel pair of the realized cover projection lies in the
        # partially ordered subcategory
        cover = canonical_cover(ZN)
        R = kernel_pair(cover.projection)
        assert "partially_ordered" in classify(R.carrier)


class TestCoverings:
    def test_mod2_is_covering(self):
        assert is_covering(mod2())

    def test_projection_is_not(self):
        pr = direct_product(Z, Z)
        cone = transport_product(total_cone(Z),
                                 generator_cone(Z, [Z.elem([1])]),
                                 pr.group, pr.proj1, pr.proj2,
                                 pr.inj1, pr.inj2)
        dom = make_pog(pr.group, cone)
        m = make_pog_morphism(
            make_hom(pr.group, Z, [Z.elem([0]), Z.elem([1])]), dom, ZN)
        assert not is_covering(m)

    def test_identity_is_covering(self):
        assert is_covering(identity_morphism(ZN))

    def test_agreement_with_mstar_on_corpus(self):
        from preordgrp.corpus import finite_corpus_objects_up_to
        from preordgrp.oracle import enumerate_pog_morphisms
        objs = list(finite_corpus_objects_up_to(4).values())
        for P in objs:
            for Q in objs:
                for m in enumerate_pog_morphisms(P, Q):
                    assert is_covering(m) == in_class(m, "Mstar").holds


class TestCoveringAlong:
    def test_mod2_along_cover_of_its_codomain(self):
        cover = canonical_cover(Z2tot)
        assert is_covering_along(mod2(), cover.projection)

    def test_identity_along_any_normal_epi(self):
        cover = canonical_cover(Z2tot)
        assert is_covering_along(identity_morphism(Z2tot), cover.projection)

    def test_non_covering_detected(self):
        pr = direct_product(Z, Z)
        cone = transport_product(total_cone(Z),
                                 generator_cone(Z, [Z.elem([1])]),
                                 pr.group, pr.proj1, pr.proj2,
                                 pr.inj1, pr.inj2)
        dom = make_pog(pr.group, cone)
        m = make_pog_morphism(
            make_hom(pr.group, Z, [Z.elem([0]), Z.elem([1])]), dom, ZN)
        coverN = canonical_cover(ZN)
        assert not is_covering_along(m, coverN.projection)

    def test_rejects_non_normal_epi(self):
        with pytest.raises(ValueError):
            is_covering_along(identity_morphism(ZN),
                              make_pog_morphism(
                                  make_hom(Z, Z, [Z.elem([2])]), ZN, ZN))


class TestImageOfKFibrations:
    def test_corpus_pullback_diagrams_are_fibrations(self):
        """For normal epis p and arbitrary f with the same codomain, the
        induced map between the kernel pairs of pi2 and of p is a discrete
        fibration over the first projection."""
        from preordgrp.corpus import finite_corpus_objects_up_to
        from preordgrp.oracle import enumerate_pog_morphisms
        from preordgrp.pog import morphism_class
        objs = sorted(finite_corpus_objects_up_to(4).items())[:6]
        checked = 0
        for pn, P in objs:
            for qn, Q in objs:
                for p in enumerate_pog_morphisms(P, Q):
                    if not morphism_class(p).normal_epi:
                        continue
                    for an, A in objs[:3]:
                        for f in enumerate_pog_morphisms(A, Q)[:2]:
                            lim = pog_pullback(p, f)
                            Eq_p = kernel_pair(p)
                            Eq_pi2 = kernel_pair(lim.legs[1])
                            f1_hom = induced_into_pullback(
                                pog_pullback(p, p),
                                compose_pog(lim.legs[0], Eq_pi2.r1),
                                compose_pog(lim.legs[0], Eq_pi2.r2))
                            f1 = structural_morphism(
                                f1_hom, Eq_pi2.carrier, Eq_p.carrier, "induced")
                            rep = is_discrete_fibration(
                                f1, lim.legs[0], Eq_pi2, Eq_p)
                            assert rep.holds, (pn, qn, an)
                            checked += 1
                    if checked > 40:
                        return
        assert checked > 0
