"""Objects and morphisms of the category, limits, colimits, classification."""

import pytest

from preordgrp.cones import (
    cone_contains,
    explicit_cone,
    generator_cone,
    total_cone,
)
from preordgrp.errors import ConeAxiomViolation, ConeNotPreserved
from preordgrp.groups import (
    cyclic_group,
    identity_hom,
    make_fgab_group,
    make_hom,
)
from preordgrp.pog import (
    classify,
    compose_pog,
    identity_morphism,
    is_short_exact,
    make_pog,
    make_pog_morphism,
    morphism_class,
    pog_coequalizer,
    pog_cokernel,
    pog_kernel,
    pog_limit,
    pog_product,
    zero_morphism,
    zero_object,
)

Z = make_fgab_group(1, [])
Z2 = make_fgab_group(2, [])
Zmod2 = make_fgab_group(0, [2])
Zmod4 = make_fgab_group(0, [4])

ZN = make_pog(Z, generator_cone(Z, [Z.elem([1])]))
ZZ = make_pog(Z, total_cone(Z))
Zdisc = make_pog(Z, generator_cone(Z, []))
Z2tot = make_pog(Zmod2, total_cone(Zmod2))


def mod2():
    return make_pog_morphism(make_hom(Z, Zmod2, [Zmod2.elem([1])]), ZN, Z2tot)


class TestMakePog:
    def test_valid(self):
        assert make_pog(Z, generator_cone(Z, [Z.elem([1])])).group == Z

    def test_s3_closure_failure(self):
        from preordgrp.corpus import symmetric_group_3
        S3 = symmetric_group_3()
        r = next(x for x in S3.elements()
                 if x + x != S3.zero and x + x + x == S3.zero)
        with pytest.raises(ConeAxiomViolation) as exc:
            make_pog(S3, explicit_cone(S3, [S3.zero, r]))
        assert exc.value.witness is not None

    def test_z4_half_cone_valid(self):
        G = cyclic_group(4)
        P = make_pog(G, explicit_cone(G, [G.elem(0), G.elem(2)]))
        assert P.group.order() == 4


class TestClassify:
    def test_naturals(self):
        assert classify(ZN) == {"partially_ordered"}

    def test_total(self):
        assert classify(ZZ) == {"total", "protomodular"}

    def test_discrete(self):
        assert classify(Zdisc) == {"partially_ordered", "protomodular",
                                   "discrete"}

    def test_half_cone(self):
        P = make_pog(Zmod4, generator_cone(Zmod4, [Zmod4.elem([2])]))
        cls = classify(P)
        assert "protomodular" in cls
        assert "partially_ordered" not in cls and "total" not in cls

    def test_discrete_implies_both(self):
        from preordgrp.corpus import corpus_objects
        for name, P in corpus_objects().items():
            cls = classify(P)
            if "discrete" in cls:
                assert "protomodular" in cls and "partially_ordered" in cls


class TestMorphisms:
    def test_identity_valid(self):
        m = make_pog_morphism(identity_hom(Z), ZN, ZN)
        assert m.certificate.kind == "generators"

    def test_cone_not_preserved(self):
        with pytest.raises(ConeNotPreserved) as exc:
            make_pog_morphism(identity_hom(Z), ZZ, ZN)
        assert exc.value.generator is not None

    def test_mod2_valid(self):
        assert mod2().certificate.kind == "generators"

    def test_composition_certificates(self):
        m = mod2()
        comp = compose_pog(identity_morphism(Z2tot), m)
        assert comp.hom.images == m.hom.images
        assert comp.certificate.kind == "generators"


class TestKernelCokernel:
    def test_kernel_of_mod2(self):
        K, inj = pog_kernel(mod2())
        assert K.group.rank == 1
        assert classify(K) == {"partially_ordered"}
        rep = morphism_class(inj)
        assert rep.mono and rep.normal_mono

    def test_kernel_of_identity(self):
        K, _ = pog_kernel(identity_morphism(ZN))
        assert K.group.order() == 1

    def test_kernel_of_projection_is_total(self):
        lim = pog_product(ZZ, ZN)
        K, inj = pog_kernel(lim.legs[1])
        assert "total" in classify(K)
        assert K.group.rank == 1

    def test_cokernel_of_even_inclusion(self):
        K, inj = pog_kernel(mod2())
        Q, proj = pog_cokernel(inj)
        assert Q.group.torsion == (2,)
        assert classify(Q) == {"total", "protomodular"}
        assert morphism_class(proj).normal_epi

    def test_cokernel_of_zero(self):
        z = zero_morphism(zero_object(), ZN)
        Q, _ = pog_cokernel(z)
        assert Q.group.rank == 1
        assert classify(Q) == {"partially_ordered"}

    def test_finite_cokernel_coset(self):
        # ({0,2} total) into (Z/4, {0,2}): cokernel is (Z/2, {0})
        G = cyclic_group(4)
        P = make_pog(G, explicit_cone(G, [G.elem(0), G.elem(2)]))
        K, inj = pog_kernel(make_pog_morphism(
            make_hom(G, cyclic_group(2),
                     [cyclic_group(2).elem(i % 2) for i in range(4)]),
            P, make_pog(cyclic_group(2),
                        explicit_cone(cyclic_group(2), [cyclic_group(2).zero]))))
        Q, proj = pog_cokernel(inj)
        assert Q.group.order() == 2
        assert classify(Q) == {"partially_ordered", "protomodular", "discrete"}


class TestLimits:
    def test_product(self):
        lim = pog_limit("product", ZN, ZN)
        assert lim.obj.group.rank == 2
        assert cone_contains(lim.obj.cone, lim.obj.group.elem([1, 2]))
        assert not cone_contains(lim.obj.cone, lim.obj.group.elem([1, -2]))

    def test_equalizer_of_id_and_negation(self):
        neg = make_pog_morphism(make_hom(Z, Z, [Z.elem([-1])]), ZZ, ZZ)
        lim = pog_limit("equalizer", identity_morphism(ZZ), neg)
        assert lim.obj.group.order() == 1

    def test_pullback_of_mod2_pair(self):
        m = mod2()
        lim = pog_limit("pullback", m, m)
        P = lim.obj
        assert P.group.rank == 2
        # cone = pairs of naturals with matching parity
        for a in range(-2, 3):
            for b in range(-2, 3):
                x = P.group.elem([a, b])
                p, q = lim.legs[0].hom(x), lim.legs[1].hom(x)
                expected = p.coords[0] >= 0 and q.coords[0] >= 0
                assert bool(cone_contains(P.cone, x)) == expected

    def test_projections_jointly_monic(self):
        lim = pog_product(ZN, Z2tot)
        seen = set()
        for a in range(-2, 3):
            for t in range(2):
                x = lim.obj.group.elem([a, t])
                key = (lim.legs[0].hom(x).coords, lim.legs[1].hom(x).coords)
                assert key not in seen
                seen.add(key)


class TestCoequalizer:
    def test_coeq_id_id(self):
        Q, proj = pog_coequalizer(identity_morphism(ZN), identity_morphism(ZN))
        assert Q.group == Z
        assert classify(Q) == {"partially_ordered"}

    def test_coeq_zero_and_double(self):
        dbl = make_pog_morphism(make_hom(Z, Z, [Z.elem([2])]), ZN, ZN)
        Q, proj = pog_coequalizer(zero_morphism(ZN, ZN), dbl)
        assert Q.group.torsion == (2,)
        assert classify(Q) == {"total", "protomodular"}

    def test_coeq_zero_zero(self):
        Q, _ = pog_coequalizer(zero_morphism(ZN, ZN), zero_morphism(ZN, ZN))
        assert Q.group == Z


class TestMorphismClass:
    def test_mod2_normal_epi(self):
        rep = morphism_class(mod2())
        assert rep.epi and rep.normal_epi and rep.effective_descent
        assert not rep.mono and rep.exact

    def test_even_inclusion_normal_mono(self):
        K, inj = pog_kernel(mod2())
        rep = morphism_class(inj)
        assert rep.mono and rep.normal_mono and not rep.epi

    def test_discrete_inclusion_not_normal_mono(self):
        m = make_pog_morphism(identity_hom(Z), Zdisc, ZN)
        rep = morphism_class(m)
        assert rep.mono and not rep.normal_mono

    def test_effective_descent_equals_normal_epi_everywhere(self):
        from preordgrp.corpus import finite_corpus_objects_up_to
        from preordgrp.oracle import enumerate_pog_morphisms
        objs = list(finite_corpus_objects_up_to(4).values())
        for P in objs:
            for Q in objs:
                for m in enumerate_pog_morphisms(P, Q):
                    rep = morphism_class(m)
                    assert rep.effective_descent == rep.normal_epi
                    if rep.normal_epi:
                        assert rep.epi
                    if rep.normal_mono:
                        assert rep.mono


class TestShortExact:
    def test_canonical_even_sequence(self):
        K, inj = pog_kernel(mod2())
        cert = is_short_exact(inj, mod2())
        assert cert.holds and cert.exact_checks

    def test_failing_cone_square(self):
        # (Z, {0}) -> (Z, N) -> 0: group-exactness holds downstairs but the
        # kernel cone square is not a pullback
        zinc = make_pog_morphism(identity_hom(Z), Zdisc, ZN)
        cert = is_short_exact(zinc, zero_morphism(ZN, zero_object()))
        assert not cert.holds
        assert "pullback" in " ".join(cert.reasons)

    def test_trivial_sequence(self):
        cert = is_short_exact(zero_morphism(zero_object(), ZN),
                              identity_morphism(ZN))
        assert cert.holds


def test_zero_object_unique_flags():
    P = zero_object()
    assert classify(P) == {"total", "protomodular", "partially_ordered",
                           "discrete"}


def test_sequence_certificate_reverifies():
    m = mod2()
    K, inj = pog_kernel(m)
    cert = is_short_exact(inj, m)
    again = cert.reverify()
    assert again.holds == cert.holds and again.reasons == cert.reasons
