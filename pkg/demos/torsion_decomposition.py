"""Walk through the canonical decompositions of a few preordered groups.

Every object (G, P) sits in a short exact sequence whose kernel carries
the total order on the unit group of the cone and whose cokernel is the
largest partially ordered quotient.  Replacing the kernel by (G, N) gives
the preexact sequence of the pretorsion theory, whose torsion part is
protomodular (the cone is a group).

Run:  python demos/torsion_decomposition.py
"""

from preordgrp import (
    classify,
    cyclic_group,
    explicit_cone,
    generator_cone,
    make_fgab_group,
    make_pog,
    pretorsion_sequence,
    proto_reflect,
    torsion_sequence,
)


def show(name, P):
    print(f"== {name}")
    print(f"   classification: {sorted(classify(P).flags)}")
    dec = torsion_sequence(P)
    print(f"   torsion part:   {dec.torsion_part.group!r}  "
          f"{sorted(classify(dec.torsion_part).flags)}")
    print(f"   torsion-free:   {dec.free_part.group!r}  "
          f"{sorted(classify(dec.free_part).flags)}")
    print(f"   short exact:    {dec.certificate.holds}")
    pre = pretorsion_sequence(P)
    print(f"   pretorsion part: cone is a group on {pre.torsion_part.group!r}"
          f" -> preexact: {pre.certificate.holds}")
    EP, _ = proto_reflect(P)
    print(f"   protomodular reflection flags: {sorted(classify(EP).flags)}")
    print()


def main():
    Z = make_fgab_group(1, [])
    Z2 = make_fgab_group(2, [])

    show("(Z, naturals)", make_pog(Z, generator_cone(Z, [Z.elem([1])])))

    # a cone with a one-dimensional unit line inside the plane
    halfplane = generator_cone(Z2, [Z2.elem([2, 0]), Z2.elem([-1, 0]),
                                    Z2.elem([0, 1])])
    show("(Z^2, halfplane with unit line)", make_pog(Z2, halfplane))

    # a finite example: Z/4 ordered by its two-element subgroup
    C4 = cyclic_group(4)
    show("(Z/4, {0, 2})",
         make_pog(C4, explicit_cone(C4, [C4.elem(0), C4.elem(2)])))


if __name__ == "__main__":
    main()
