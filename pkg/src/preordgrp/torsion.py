"""The torsion theory (groups-with-total-order, partially ordered groups)
and the pretorsion theory (protomodular objects, partially ordered groups)
on preordered groups.

For an object (G, P) the unit group N of the cone is a normal subgroup of
G, and

    (N, N)  >-->  (G, P)  -->>  (G/N, P/N)

is the canonical short exact sequence: its kernel carries the total order,
its cokernel the reduced (partial) order.  Replacing the kernel by
(G, N) and "zero" by the class of discretely ordered objects turns the same
quotient construction into a short preexact sequence for the pretorsion
theory, whose torsion part is the subcategory of protomodular objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cones import (
    cone_contains,
    explicit_cone,
    extract_generators,
    generator_cone,
    total_cone,
    transport_image,
    trivial_cone,
    units,
)
from .errors import NotComparable
from .groups import (
    enumerate_group_homs,
    make_hom,
    identity_hom,
    preimage_element,
    quotient,
    subgroup_to_group,
)
from .pog import (
    DEFAULT_WINDOW,
    POGMorphism,
    PreorderedGroup,
    SequenceCertificate,
    classify,
    compose_pog,
    is_short_exact,
    make_pog_morphism,
    pog_is_iso,
    structural_morphism,
)

DEFAULT_HOM_BOUND = 10


@dataclass(frozen=True)
class TorsionDecomposition:
    obj: PreorderedGroup
    torsion_part: PreorderedGroup
    free_part: PreorderedGroup
    counit: POGMorphism        # torsion part -> object
    unit: POGMorphism          # object -> torsion-free part
    certificate: SequenceCertificate
    kind: str                  # "torsion" | "pretorsion"


def subgroup_as_cone(S):
    """The total cone a subgroup carries when viewed inside its ambient group."""
    G = S.group
    if G.backend == "finite":
        return explicit_cone(G, S.elements)
    gens = []
    for g in S.generators:
        gens.extend([g, -g])
    return generator_cone(G, gens)


@lru_cache(maxsize=None)
def torsion_sequence(P, width=DEFAULT_WINDOW):
    """Canonical short exact sequence of the torsion theory.

    >>> from .groups import make_fgab_group
    >>> from .cones import generator_cone
    >>> Z = make_fgab_group(1, [])
    >>> ZN = PreorderedGroup(Z, generator_cone(Z, [Z.elem([1])]))
    >>> d = torsion_sequence(ZN)
    >>> d.torsion_part.group.order(), d.free_part.group.rank
    (1, 1)
    """
    N = units(P.cone)
    NG, inj = subgroup_to_group(N)
    T = PreorderedGroup(NG, total_cone(NG))
    counit = make_pog_morphism(inj, T, P, width)
    Q, proj = quotient(P.group, N)
    qcone = transport_image(proj, P.cone)
    F = PreorderedGroup(Q, qcone)
    unit = make_pog_morphism(proj, P, F, width) \
        if extract_generators(P.cone) is not None \
        else structural_morphism(proj, P, F, "quotient pushes the cone forward")
    cert = is_short_exact(counit, unit, width)
    return TorsionDecomposition(P, T, F, counit, unit, cert, "torsion")


def _induced_on_quotients(m, dec_dom, dec_cod):
    """Group map F(dom) -> F(cod) induced by m between the quotients."""
    Qd, Qc = dec_dom.free_part.group, dec_cod.free_part.group
    eta_d, eta_c = dec_dom.unit.hom, dec_cod.unit.hom
    if Qd.backend == "finite":
        images = []
        for x in Qd.elements():
            pre = preimage_element(eta_d, x)
            images.append(eta_c(m.hom(pre)))
        return make_hom(Qd, Qc, images)
    images = []
    for gen in Qd.generators():
        pre = preimage_element(eta_d, gen)
        images.append(eta_c(m.hom(pre)))
    return make_hom(Qd, Qc, images)


def reflect_F(m, width=DEFAULT_WINDOW):
    """Image of a morphism under the torsion-free reflector."""
    dec_dom = torsion_sequence(m.dom, width)
    dec_cod = torsion_sequence(m.cod, width)
    h = _induced_on_quotients(m, dec_dom, dec_cod)
    src, dst = dec_dom.free_part, dec_cod.free_part
    gens = extract_generators(src.cone)
    if gens is not None:
        return make_pog_morphism(h, src, dst, width)
    return structural_morphism(h, src, dst,
                               "induced between quotients of a certified map")


def coreflect_T(m, width=DEFAULT_WINDOW):
    """Restriction of a morphism to the torsion parts (unit groups)."""
    dec_dom = torsion_sequence(m.dom, width)
    dec_cod = torsion_sequence(m.cod, width)
    Td, Tc = dec_dom.torsion_part, dec_cod.torsion_part
    eps_d, eps_c = dec_dom.counit.hom, dec_cod.counit.hom
    gens = (Td.group.elements() if Td.group.backend == "finite"
            else Td.group.generators())
    images = []
    for gen in gens:
        y = m.hom(eps_d(gen))
        pre = preimage_element(eps_c, y)
        if pre is None:
            raise ValueError("morphism does not map units to units")
        images.append(pre)
    h = make_hom(Td.group, Tc.group, images)
    return make_pog_morphism(h, Td, Tc, width)


@dataclass(frozen=True)
class ZeroHomReport:
    holds: bool
    morphisms_found: int
    bound: int = None          # None when the enumeration was exhaustive
    witness: object = None

    def __bool__(self):
        return self.holds


def hom_torsion_to_free_is_zero(src, dst, bound=DEFAULT_HOM_BOUND):
    """Only the zero morphism is order preserving from a totally ordered
    object to a partially ordered one.

    Exhaustive on finite groups.  On fgab groups a homomorphism from a
    total object preserves cones iff every generator image is a unit of the
    target cone, so the per-generator candidate count multiplies out to the
    number of cone-preserving homs within the bound.
    """
    if "total" not in classify(src):
        raise ValueError("source must be totally ordered")
    if "partially_ordered" not in classify(dst):
        raise ValueError("target must be partially ordered")
    G, H = src.group, dst.group
    if G.backend == "finite" and H.backend == "finite":
        found = []
        for h in enumerate_group_homs(G, H):
            if all(cone_contains(dst.cone, h(x)) for x in G.elements()):
                found.append(h)
        nonzero = [h for h in found
                   if any(not img.is_zero() for img in h.images)]
        return ZeroHomReport(not nonzero, len(found),
                             witness=nonzero[0] if nonzero else None)
    Ndst = units(dst.cone)
    from .groups import _bounded_elements
    candidates = _bounded_elements(H, bound)
    count = 1
    witness_img = None
    for i in range(G.ncoords):
        if i >= G.rank:
            d = G.torsion[i - G.rank]
            pool = [h for h in candidates if H.scale(h, d).is_zero()]
        else:
            pool = candidates
        good = [h for h in pool if Ndst.contains(h)]
        bad = [h for h in good if not h.is_zero()]
        if bad and witness_img is None:
            witness_img = bad[0]
        count *= len(good)
    return ZeroHomReport(witness_img is None, count, bound=bound,
                         witness=witness_img)


def uniqueness_check(P, alt_k, alt_f, width=DEFAULT_WINDOW):
    """Comparison isomorphisms between the canonical torsion sequence of P
    and an alternative one (kernel total, cokernel partially ordered).

    Returns (t, f) with t between the torsion parts and f between the
    torsion-free parts, both verified isomorphisms.
    """
    cert = is_short_exact(alt_k, alt_f, width)
    if not cert:
        raise NotComparable("alternative sequence is not short exact: "
                            + "; ".join(cert.reasons))
    if "total" not in classify(alt_k.dom):
        raise NotComparable("alternative kernel is not totally ordered")
    if "partially_ordered" not in classify(alt_f.cod):
        raise NotComparable("alternative cokernel is not partially ordered")
    if alt_k.cod != P or alt_f.dom != P:
        raise NotComparable("alternative sequence is not over this object")
    dec = torsion_sequence(P, width)
    # f with f . eta = eta_alt, induced by the cokernel property of eta
    Q = dec.free_part.group
    gens = Q.elements() if Q.backend == "finite" else Q.generators()
    t_imgs, f_imgs = [], []
    for gen in gens:
        pre = preimage_element(dec.unit.hom, gen)
        f_imgs.append(alt_f.hom(pre))
    f_hom = make_hom(Q, alt_f.cod.group, f_imgs)
    f = make_pog_morphism(f_hom, dec.free_part, alt_f.cod, width) \
        if extract_generators(dec.free_part.cone) is not None \
        else structural_morphism(f_hom, dec.free_part, alt_f.cod, "induced")
    # t with eps_alt . t = eps, induced by the kernel property of eps_alt
    T = dec.torsion_part.group
    tgens = T.elements() if T.backend == "finite" else T.generators()
    for gen in tgens:
        y = dec.counit.hom(gen)
        pre = preimage_element(alt_k.hom, y)
        if pre is None:
            raise NotComparable("canonical torsion part does not factor "
                                "through the alternative kernel")
        t_imgs.append(pre)
    t_hom = make_hom(T, alt_k.dom.group, t_imgs)
    t = make_pog_morphism(t_hom, dec.torsion_part, alt_k.dom, width)
    t_iso, t_exact = pog_is_iso(t, width)
    f_iso, f_exact = pog_is_iso(f, width)
    if not (t_iso and f_iso):
        raise NotComparable("comparison maps are not isomorphisms")
    return t, f


# ---------------------------------------------------------------------------
# the pretorsion theory
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZTrivialReport:
    holds: bool
    through: PreorderedGroup = None
    left: POGMorphism = None   # dom -> through
    right: POGMorphism = None  # through -> cod
    witness: object = None

    def __bool__(self):
        return self.holds


def is_z_trivial(m, width=DEFAULT_WINDOW):
    """A morphism is trivial for the pretorsion theory iff its cone map is
    zero; it then factors through its image carrying the discrete order."""
    gens = extract_generators(m.dom.cone)
    if gens is not None:
        bad = [g for g in gens if not m.hom(g).is_zero()]
    else:
        from .cones import cone_window
        bad = [g for g in cone_window(m.dom.cone, width)
               if not m.hom(g).is_zero()]
    if bad:
        return ZTrivialReport(False, witness=bad[0])
    from .groups import image_subgroup
    I, inj = subgroup_to_group(image_subgroup(m.hom))
    mid = PreorderedGroup(I, trivial_cone(I))
    gens_dom = (m.dom.group.elements() if m.dom.group.backend == "finite"
                else m.dom.group.generators())
    a_imgs = []
    for g in gens_dom:
        pre = preimage_element(inj, m.hom(g))
        a_imgs.append(pre)
    a_hom = make_hom(m.dom.group, I, a_imgs)
    left = structural_morphism(a_hom, m.dom, mid, "cone map is zero")
    right = make_pog_morphism(inj, mid, m.cod, width)
    return ZTrivialReport(True, mid, left, right)


@lru_cache(maxsize=None)
def proto_coreflect(P, width=DEFAULT_WINDOW):
    """Pretorsion torsion part (G, N) with its counit into (G, P)."""
    N = units(P.cone)
    TP = PreorderedGroup(P.group, subgroup_as_cone(N))
    counit = make_pog_morphism(identity_hom(P.group), TP, P, width)
    return TP, counit


@lru_cache(maxsize=None)
def proto_reflect(P, width=DEFAULT_WINDOW):
    """Protomodular reflection (G, M) with its unit from (G, P); M is the
    subgroup generated by the cone and its negatives."""
    from .cones import generated_subgroup
    M = generated_subgroup(P.cone)
    EP = PreorderedGroup(P.group, subgroup_as_cone(M))
    unit = make_pog_morphism(identity_hom(P.group), P, EP, width)
    return EP, unit


@lru_cache(maxsize=None)
def pretorsion_sequence(P, width=DEFAULT_WINDOW):
    """Short preexact sequence (G, N) >--> (G, P) -->> (G/N, P/N).

    The composite has zero cone map, the left arrow is the prekernel of the
    right one and the right arrow its precokernel; those universal
    properties are verified against enumerated morphisms by the oracle.
    """
    TP, counit = proto_coreflect(P, width)
    dec = torsion_sequence(P, width)
    composite = compose_pog(dec.unit, counit)
    zrep = is_z_trivial(composite, width)
    cert = SequenceCertificate(
        "ZPreexact", counit, dec.unit, bool(zrep), True,
        reasons=() if zrep else ("composite is not trivial",))
    return TorsionDecomposition(P, TP, dec.free_part, counit, dec.unit,
                                cert, "pretorsion")
