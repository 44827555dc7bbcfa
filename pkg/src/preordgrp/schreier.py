"""Schreier points and special Schreier morphisms at the monoid level.

A point (R, A, p, s) is Schreier when every r in R splits uniquely as a
kernel element plus s(p(r)).  Our monoids always live inside groups, so the
candidate kernel part is forced: x = r - s(p(r)); uniqueness is automatic
and the check reduces to membership of x.

On infinite carriers the quantifier runs over a rectangular coordinate
window and the report says so; a counterexample found inside the window is
definitive either way.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cones import cone_window


@dataclass(frozen=True)
class SchreierReport:
    holds: bool
    witness: object = None
    window: int = None          # None when the scan was exhaustive
    checked: int = 0

    @property
    def exhaustive(self):
        return self.window is None

    def __bool__(self):
        return self.holds


class ConeMonoid:
    """A cone viewed as a bare monoid."""

    def __init__(self, cone):
        self.cone = cone

    def members(self, width):
        return cone_window(self.cone, width)

    def contains(self, x):
        return self.cone.contains(x)

    @staticmethod
    def sub(a, b):
        return a - b

    def is_finite(self):
        return self.cone.group.backend == "finite"


class KernelPairMonoid:
    """Eq(f) = {(a, b) : f(a) = f(b)} of a cone map, as explicit pairs."""

    def __init__(self, cone, hom):
        self.cone = cone
        self.hom = hom

    def members(self, width):
        by_image = {}
        for a in cone_window(self.cone, width):
            by_image.setdefault(self.hom(a), []).append(a)
        out = []
        for bucket in by_image.values():
            for a in bucket:
                for b in bucket:
                    out.append((a, b))
        return out

    def contains(self, pair):
        a, b = pair
        return (self.hom(a) == self.hom(b)
                and self.cone.contains(a) and self.cone.contains(b))

    @staticmethod
    def sub(x, y):
        return (x[0] - y[0], x[1] - y[1])

    def is_finite(self):
        return self.cone.group.backend == "finite"


def is_schreier_point(dom, p, s, width=8):
    """Check the Schreier condition for a point over ``dom``.

    ``p`` and ``s`` are callables with p(s(a)) = a; the domain object
    supplies ``members``, ``contains`` and componentwise subtraction.

    >>> from .groups import make_fgab_group
    >>> from .cones import generator_cone
    >>> Z = make_fgab_group(1, [])
    >>> N = generator_cone(Z, [Z.elem([1])])
    >>> bool(is_schreier_point(ConeMonoid(N), lambda x: x, lambda x: x))
    True
    """
    checked = 0
    for r in dom.members(width):
        checked += 1
        x = dom.sub(r, s(p(r)))
        if not dom.contains(x):
            return SchreierReport(False, witness=r,
                                  window=None if dom.is_finite() else width,
                                  checked=checked)
    return SchreierReport(True, window=None if dom.is_finite() else width,
                          checked=checked)


def is_special_schreier(cone, hom, width=8):
    """Special Schreier test for the restriction of ``hom`` to ``cone``.

    Builds the kernel pair with its first projection and diagonal section
    and delegates to :func:`is_schreier_point`.

    >>> from .groups import make_fgab_group, make_hom
    >>> from .cones import generator_cone
    >>> Z = make_fgab_group(1, [])
    >>> Z2 = make_fgab_group(0, [2])
    >>> N = generator_cone(Z, [Z.elem([1])])
    >>> mod2 = make_hom(Z, Z2, [Z2.elem([1])])
    >>> bool(is_special_schreier(N, mod2))
    False
    """
    dom = KernelPairMonoid(cone, hom)
    return is_schreier_point(dom, p=lambda pair: pair[0],
                             s=lambda a: (a, a), width=width)
