"""Groups, homomorphisms and the constructions every other module consumes.

Two backends share one element interface:

* ``FiniteGroup`` -- an explicit Cayley table, possibly non-abelian;
* ``FgAbGroup``   -- a finitely generated abelian group in invariant-factor
  normal form Z^r + Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2.

Elements are immutable coordinate tuples; all arithmetic is exact.  Groups
are written additively throughout (conjugation of x by g is g + x - g),
which matches the usual convention for preordered groups even when the
group is non-abelian.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import BackendMismatch, BadInvariantFactors, NotAGroup, NotNormal
from .intlinalg import (
    from_columns,
    invariant_factors_of_diagonal,
    lattice_basis,
    lattice_intersection,
    lattice_member,
    lattice_preimage,
    mat_vec,
    smith_normal_form,
    solve,
)


@dataclass(frozen=True)
class GroupElement:
    group: "GroupObject"
    coords: tuple

    def __add__(self, other):
        if other.group != self.group:
            raise ValueError("elements of different groups")
        return self.group.add(self, other)

    def __neg__(self):
        return self.group.neg(self)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        return self.group.scale(self, n)

    def is_zero(self):
        return self == self.group.zero

    def __repr__(self):
        return f"<{self.group.describe_element(self)}>"


class GroupObject:
    """Shared interface of the two backends."""

    backend = None

    @property
    def zero(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def scale(self, a, n):
        if n < 0:
            return self.neg(self.scale(a, -n))
        out = self.zero
        acc = a
        while n:
            if n & 1:
                out = self.add(out, acc)
            acc = self.add(acc, acc)
            n >>= 1
        return out

    def conjugate(self, g, x):
        """g + x - g."""
        return self.add(self.add(g, x), self.neg(g))

    def order(self):
        """Number of elements, or None when infinite."""
        raise NotImplementedError

    def elements(self):
        raise NotImplementedError

    def generators(self):
        """Canonical generating elements."""
        raise NotImplementedError

    def is_abelian(self):
        raise NotImplementedError


class FiniteGroup(GroupObject):
    backend = "finite"

    def __init__(self, element_names, table, identity_index, inverse):
        self.element_names = tuple(element_names)
        self.table = tuple(tuple(row) for row in table)
        self.identity_index = identity_index
        self.inverse = tuple(inverse)
        self._abelian = all(
            self.table[i][j] == self.table[j][i]
            for i in range(len(table)) for j in range(i))

    def __eq__(self, other):
        return (isinstance(other, FiniteGroup)
                and self.element_names == other.element_names
                and self.table == other.table)

    def __hash__(self):
        return hash((self.element_names, self.table))

    @property
    def zero(self):
        return GroupElement(self, (self.identity_index,))

    def elem(self, key):
        """Element by index or by name."""
        if isinstance(key, str):
            key = self.element_names.index(key)
        if not 0 <= key < len(self.element_names):
            raise ValueError(f"no element {key}")
        return GroupElement(self, (key,))

    def add(self, a, b):
        return GroupElement(self, (self.table[a.coords[0]][b.coords[0]],))

    def neg(self, a):
        return GroupElement(self, (self.inverse[a.coords[0]],))

    def order(self):
        return len(self.element_names)

    def elements(self):
        return [GroupElement(self, (i,)) for i in range(len(self.element_names))]

    def generators(self):
        """A small generating set, greedily grown; deterministic."""
        gens = []
        reached = {self.identity_index}
        while len(reached) < len(self.element_names):
            nxt = min(i for i in range(len(self.element_names)) if i not in reached)
            gens.append(nxt)
            frontier = set(reached) | {nxt}
            while True:
                new = {self.table[a][b] for a in frontier for b in frontier} | frontier
                if new == frontier:
                    break
                frontier = new
            reached = frontier
        return [GroupElement(self, (i,)) for i in gens]

    def is_abelian(self):
        return self._abelian

    def describe_element(self, x):
        return self.element_names[x.coords[0]]

    def __repr__(self):
        return f"FiniteGroup(order {len(self.element_names)})"


class FgAbGroup(GroupObject):
    backend = "fgab"

    def __init__(self, rank, torsion):
        self.rank = rank
        self.torsion = tuple(torsion)
        self.ncoords = rank + len(self.torsion)

    def __eq__(self, other):
        return (isinstance(other, FgAbGroup)
                and self.rank == other.rank and self.torsion == other.torsion)

    def __hash__(self):
        return hash(("fgab", self.rank, self.torsion))

    def reduce(self, coords):
        out = list(coords[: self.rank])
        for j, d in enumerate(self.torsion):
            out.append(coords[self.rank + j] % d)
        return tuple(out)

    @property
    def zero(self):
        return GroupElement(self, (0,) * self.ncoords)

    def elem(self, coords):
        coords = tuple(int(v) for v in coords)
        if len(coords) != self.ncoords:
            raise ValueError(f"expected {self.ncoords} coordinates")
        return GroupElement(self, self.reduce(coords))

    def add(self, a, b):
        return GroupElement(self, self.reduce(
            tuple(x + y for x, y in zip(a.coords, b.coords))))

    def neg(self, a):
        return GroupElement(self, self.reduce(tuple(-x for x in a.coords)))

    def scale(self, a, n):
        return GroupElement(self, self.reduce(tuple(n * x for x in a.coords)))

    def order(self):
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def elements(self):
        if self.rank:
            raise ValueError("infinite group has no element list")
        return [GroupElement(self, c)
                for c in itertools.product(*[range(d) for d in self.torsion])]

    def generators(self):
        out = []
        for i in range(self.ncoords):
            c = [0] * self.ncoords
            c[i] = 1
            out.append(GroupElement(self, tuple(c)))
        return out

    def is_abelian(self):
        return True

    def relation_columns(self):
        """Columns spanning the lattice identified with zero in Z^ncoords."""
        cols = []
        for j, d in enumerate(self.torsion):
            c = [0] * self.ncoords
            c[self.rank + j] = d
            cols.append(c)
        return cols

    def describe_element(self, x):
        return "(" + ",".join(str(v) for v in x.coords) + ")"

    def describe(self):
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FgAbGroup({self.describe()})"


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------

def make_finite_group(element_names, table):
    """Validated finite group from a Cayley table of element indices.

    >>> make_finite_group(["0", "1"], [[0, 1], [1, 0]]).order()
    2
    """
    n = len(element_names)
    if len(set(element_names)) != n:
        raise NotAGroup("duplicate element names")
    if len(table) != n or any(len(row) != n for row in table):
        raise NotAGroup("table is not square")
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise NotAGroup(f"entry ({i},{j}) is not an element index",
                                witness=(i, j))
    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no identity element")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAGroup("associativity fails", witness=(a, b, c))
    inverse = [None] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == identity and table[b][a] == identity:
                inverse[a] = b
                break
        if inverse[a] is None:
            raise NotAGroup(f"element {a} has no inverse", witness=a)
    return FiniteGroup(element_names, table, identity, inverse)


def _finite_group_unchecked(element_names, table):
    """Finite group from a table known to satisfy the axioms by construction
    (quotients, products, pullbacks of validated groups); locates identity
    and inverses without the cubic associativity scan."""
    n = len(element_names)
    identity = next(e for e in range(n)
                    if all(table[e][x] == x and table[x][e] == x
                           for x in range(n)))
    inverse = [None] * n
    for a in range(n):
        inverse[a] = next(b for b in range(n)
                          if table[a][b] == identity and table[b][a] == identity)
    return FiniteGroup(element_names, table, identity, inverse)


@dataclass(frozen=True)
class Presentation:
    """Quotient of Z^ncoords by a relation lattice, in normal form.

    ``project`` sends a coordinate vector to its class; ``gen_lifts[k]`` is
    a preimage vector of the k-th canonical generator of ``group``.
    """

    group: FgAbGroup
    ncoords: int
    _U: tuple
    _free_idx: tuple
    _tor_idx: tuple
    _lifts: tuple

    def project(self, vec):
        y = mat_vec([list(r) for r in self._U], list(vec))
        coords = [y[i] for i in self._free_idx]
        coords += [y[i] % d for i, d in self._tor_idx]
        return GroupElement(self.group, tuple(coords))

    @property
    def gen_lifts(self):
        return [list(v) for v in self._lifts]


def fgab_presentation(ncoords, relation_columns):
    """Normal form of Z^ncoords modulo the given relation columns."""
    if relation_columns:
        R = from_columns([list(c) for c in relation_columns], nrows=ncoords)
    else:
        R = [[0] for _ in range(ncoords)] if ncoords else []
    if ncoords == 0:
        return Presentation(FgAbGroup(0, ()), 0, (), (), (), ())
    s = smith_normal_form(R)
    diag = s.diagonal
    free_idx, tor_idx = [], []
    for i in range(ncoords):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            free_idx.append(i)
        elif d >= 2:
            tor_idx.append((i, d))
    group = FgAbGroup(len(free_idx), tuple(d for _, d in tor_idx))
    ui_cols = [[s.U_inv[r][i] for r in range(ncoords)]
               for i in free_idx + [i for i, _ in tor_idx]]
    return Presentation(group, ncoords, tuple(tuple(r) for r in s.U),
                        tuple(free_idx), tuple(tor_idx),
                        tuple(tuple(c) for c in ui_cols))


def make_fgab_group(rank, torsion):
    """F.g. abelian group, normalizing the torsion part.

    >>> make_fgab_group(0, [4, 2]).torsion
    (2, 4)
    """
    if rank < 0:
        raise BadInvariantFactors("rank must be non-negative")
    for d in torsion:
        if not isinstance(d, int) or d <= 0:
            raise BadInvariantFactors(f"torsion coefficient {d} is not positive")
    return FgAbGroup(rank, tuple(invariant_factors_of_diagonal(list(torsion))))


def make_group(kind, **data):
    """Backend dispatcher used by the JSON loader.

    ``kind='finite'`` wants ``elements`` and ``table``; ``kind='fgab'``
    wants ``rank`` and ``torsion``.
    """
    if kind == "finite":
        return make_finite_group(data["elements"], data["table"])
    if kind == "fgab":
        return make_fgab_group(data["rank"], data.get("torsion", []))
    raise NotAGroup(f"unknown backend {kind!r}")


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by images: one per element for a finite domain,
    one per canonical generator for an fgab domain."""

    dom: GroupObject
    cod: GroupObject
    images: tuple

    def __call__(self, x):
        if x.group != self.dom:
            raise ValueError("element not in the domain")
        if self.dom.backend == "finite":
            return self.images[x.coords[0]]
        out = self.cod.zero
        for c, img in zip(x.coords, self.images):
            if c:
                out = out + self.cod.scale(img, c)
        return out

    def matrix_columns(self):
        """Image coordinates per domain generator (fgab -> fgab only)."""
        if self.dom.backend != "fgab" or self.cod.backend != "fgab":
            raise BackendMismatch("matrix form needs fgab on both sides")
        return [list(img.coords) for img in self.images]

    def describe(self):
        return f"hom {self.dom!r} -> {self.cod!r}"


def make_hom(dom, cod, images, _validate=True):
    images = tuple(images)
    for img in images:
        if img.group != cod:
            raise ValueError("image outside the codomain")
    if dom.backend == "finite":
        if len(images) != dom.order():
            raise ValueError("finite domain needs one image per element")
        h = GroupHom(dom, cod, images)
        if _validate:
            for a in dom.elements():
                for b in dom.elements():
                    if h(a + b) != h(a) + h(b):
                        raise ValueError(f"not a homomorphism at {a}, {b}")
        return h
    if len(images) != dom.ncoords:
        raise ValueError("fgab domain needs one image per canonical generator")
    h = GroupHom(dom, cod, images)
    if _validate:
        if not cod.is_abelian():
            for i in range(len(images)):
                for j in range(i):
                    lhs = images[i] + images[j]
                    if lhs != images[j] + images[i]:
                        raise ValueError("generator images do not commute")
        for j, d in enumerate(dom.torsion):
            if not cod.scale(images[dom.rank + j], d).is_zero():
                raise ValueError(f"torsion generator {j} image has wrong order")
    return h


def hom_from_matrix(dom, cod, matrix):
    """fgab -> fgab hom from a (cod.ncoords x dom.ncoords) integer matrix."""
    cols = [[matrix[i][j] for i in range(cod.ncoords)] for j in range(dom.ncoords)]
    return make_hom(dom, cod, [cod.elem(c) for c in cols])


def identity_hom(G):
    if G.backend == "finite":
        return GroupHom(G, G, tuple(G.elements()))
    return GroupHom(G, G, tuple(G.generators()))


def zero_hom(dom, cod):
    if dom.backend == "finite":
        return GroupHom(dom, cod, tuple(cod.zero for _ in range(dom.order())))
    return GroupHom(dom, cod, tuple(cod.zero for _ in range(dom.ncoords)))


def compose(g, f):
    """g after f; validity is inherited, no re-validation."""
    if f.cod != g.dom:
        raise ValueError("homs do not compose")
    return GroupHom(f.dom, g.cod, tuple(g(img) for img in f.images))


def hom_sub(f, g):
    """Pointwise difference (abelian codomain)."""
    if not f.cod.is_abelian():
        raise BackendMismatch("difference needs an abelian codomain")
    return GroupHom(f.dom, f.cod,
                    tuple(a - b for a, b in zip(f.images, g.images)))


def is_injective(h):
    return kernel_subgroup(h).is_trivial()


def is_surjective(h):
    return image_subgroup(h).is_whole()


def is_isomorphism(h):
    return is_injective(h) and is_surjective(h)


def inverse_hom(h):
    """Inverse of an isomorphism."""
    if h.dom.backend == "finite" and h.cod.backend == "finite":
        images = [None] * h.cod.order()
        for x in h.dom.elements():
            images[h(x).coords[0]] = x
        return GroupHom(h.cod, h.dom, tuple(images))
    images = []
    for g in (h.cod.generators() if h.cod.backend == "fgab"
              else h.cod.elements()):
        pre = preimage_element(h, g)
        if pre is None:
            raise ValueError("not surjective")
        images.append(pre)
    return GroupHom(h.cod, h.dom, tuple(images))


def preimage_element(h, y):
    """Some x with h(x) = y, or None."""
    if h.dom.backend == "finite":
        for x in h.dom.elements():
            if h(x) == y:
                return x
        return None
    if h.cod.backend == "fgab":
        M = from_columns([list(i.coords) for i in h.images]
                         + h.cod.relation_columns(), nrows=h.cod.ncoords)
        z = solve(M, list(y.coords))
        if z is None:
            return None
        return h.dom.elem(z[: h.dom.ncoords])
    # fgab domain, finite codomain: search residues modulo image orders
    orders = []
    for img in h.images:
        o, acc = 1, img
        while not acc.is_zero():
            acc = acc + img
            o += 1
        orders.append(o)
    for combo in itertools.product(*[range(o) for o in orders]):
        x = h.dom.elem(combo) if h.dom.ncoords else h.dom.zero
        if h(x) == y:
            return x
    return None


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    group: GroupObject
    generators: tuple
    elements: frozenset = None  # materialized on the finite backend

    def contains(self, x):
        if x.group != self.group:
            raise ValueError("element of a different group")
        if self.elements is not None:
            return x in self.elements
        return lattice_member(_subgroup_lattice(self), list(x.coords),
                              self.group.ncoords) is not None

    def is_trivial(self):
        if self.elements is not None:
            return len(self.elements) == 1
        return all(g.is_zero() for g in self.generators)

    def is_whole(self):
        if self.elements is not None:
            return len(self.elements) == self.group.order()
        return all(self.contains(g) for g in self.group.generators())

    def is_normal(self):
        if self.elements is None:
            return True
        G = self.group
        return all(G.conjugate(g, x) in self.elements
                   for g in G.elements() for x in self.elements)

    def sorted_elements(self):
        return sorted(self.elements, key=lambda e: e.coords)


@lru_cache(maxsize=None)
def _subgroup_lattice(S):
    """Columns spanning { coords of members } in Z^ncoords (fgab)."""
    cols = [list(g.coords) for g in S.generators]
    cols += S.group.relation_columns()
    return tuple(tuple(c) for c in cols)


def subgroup(group, generators):
    """Subgroup generated by the listed elements."""
    gens = tuple(g for g in generators if not g.is_zero())
    if group.backend == "finite":
        closure = {group.zero}
        frontier = set(gens) | {group.zero}
        while True:
            new = {a + b for a in frontier for b in frontier}
            new |= {-a for a in frontier}
            new |= frontier
            if new == frontier:
                break
            frontier = new
        return Subgroup(group, gens, frozenset(frontier))
    return Subgroup(group, gens)


def subgroup_from_elements(group, elements):
    """Finite-backend subgroup from an explicit element set (must be closed)."""
    els = frozenset(elements)
    return Subgroup(group, tuple(sorted(els, key=lambda e: e.coords)), els)


def whole_subgroup(group):
    if group.backend == "finite":
        return subgroup_from_elements(group, group.elements())
    return subgroup(group, group.generators())


def trivial_subgroup(group):
    if group.backend == "finite":
        return subgroup_from_elements(group, [group.zero])
    return Subgroup(group, ())


def subgroup_image(h, S):
    return subgroup(h.cod, [h(g) for g in S.generators])


def subgroup_preimage(h, S):
    """{ x : h(x) in S } as a subgroup of the domain."""
    if h.dom.backend == "finite":
        els = [x for x in h.dom.elements() if S.contains(h(x))]
        return subgroup_from_elements(h.dom, els)
    if h.cod.backend != "fgab":
        if not h.cod.is_abelian():
            raise BackendMismatch("preimage across a non-abelian codomain")
        _, to_b, _ = _fgab_conversion(h.cod)
        converted = subgroup(to_b.cod, [to_b(x) for x in S.generators])
        return subgroup_preimage(compose(to_b, h), converted)
    M = from_columns([list(i.coords) for i in h.images], nrows=h.cod.ncoords) \
        if h.dom.ncoords else [[] for _ in range(h.cod.ncoords)]
    target = [list(c) for c in _subgroup_lattice(S)]
    gens = lattice_preimage(M, target, h.dom.ncoords, h.cod.ncoords)
    return subgroup(h.dom, [h.dom.elem(g) for g in gens])


def subgroup_intersection(S1, S2):
    if S1.group != S2.group:
        raise ValueError("subgroups of different groups")
    if S1.elements is not None:
        return subgroup_from_elements(S1.group, S1.elements & S2.elements)
    dim = S1.group.ncoords
    gens = lattice_intersection([list(c) for c in _subgroup_lattice(S1)],
                                [list(c) for c in _subgroup_lattice(S2)], dim)
    return subgroup(S1.group, [S1.group.elem(g) for g in gens])


def subgroup_sum(S1, S2):
    return subgroup(S1.group, list(S1.generators) + list(S2.generators))


def subgroup_equal(S1, S2):
    if S1.group != S2.group:
        return False
    if S1.elements is not None:
        return S1.elements == S2.elements
    return (all(S2.contains(g) for g in S1.generators)
            and all(S1.contains(g) for g in S2.generators))


def normal_closure(group, elements):
    """Smallest normal subgroup containing the elements (finite backend)."""
    if group.backend == "fgab":
        return subgroup(group, elements)
    seed = set(elements)
    while True:
        new = set(seed)
        for g in group.elements():
            for x in seed:
                new.add(group.conjugate(g, x))
        S = subgroup(group, new)
        if frozenset(new) <= S.elements and all(
                group.conjugate(g, x) in S.elements
                for g in group.elements() for x in S.elements):
            return S
        seed = set(S.elements)


# ---------------------------------------------------------------------------
# kernels, quotients, subgroup presentation
# ---------------------------------------------------------------------------

def kernel_subgroup(h):
    if h.dom.backend == "finite":
        zero = h.cod.zero
        return subgroup_from_elements(
            h.dom, [x for x in h.dom.elements() if h(x) == zero])
    if h.cod.backend == "fgab":
        M = from_columns([list(i.coords) for i in h.images],
                         nrows=h.cod.ncoords) if h.dom.ncoords else None
        if M is None or h.cod.ncoords == 0:
            return whole_subgroup(h.dom)
        gens = lattice_preimage(M, h.cod.relation_columns(),
                                h.dom.ncoords, h.cod.ncoords)
        return subgroup(h.dom, [h.dom.elem(g) for g in gens])
    # fgab -> finite: kernel of the composite through the (abelian) image
    raise BackendMismatch("kernel of an fgab -> finite hom is unsupported")


def image_subgroup(h):
    if h.dom.backend == "finite":
        return subgroup(h.cod, sorted({h(x) for x in h.dom.elements()},
                                      key=lambda e: e.coords))
    return subgroup(h.cod, list(h.images))


def subgroup_to_group(S):
    """Present a subgroup as a group in its own right, with the injection.

    >>> Z = make_fgab_group(1, [])
    >>> K, inj = subgroup_to_group(subgroup(Z, [Z.elem([2])]))
    >>> K.describe(), inj(K.generators()[0]).coords
    ('Z', (2,))
    """
    G = S.group
    if G.backend == "finite":
        els = S.sorted_elements()
        index = {e: i for i, e in enumerate(els)}
        table = [[index[a + b] for b in els] for a in els]
        K = _finite_group_unchecked([G.describe_element(e) for e in els], table)
        return K, GroupHom(K, G, tuple(els))
    dim = G.ncoords
    basis = lattice_basis([list(c) for c in _subgroup_lattice(S)], dim)
    if not basis:
        K = FgAbGroup(0, ())
        return K, GroupHom(K, G, ())
    B = from_columns(basis, nrows=dim)
    rel_in_basis = []
    for r in G.relation_columns():
        w = solve(B, r)
        rel_in_basis.append(w)
    pres = fgab_presentation(len(basis), rel_in_basis)
    K = pres.group
    images = []
    for lift in pres.gen_lifts:
        images.append(G.elem(mat_vec(B, lift)))
    return K, GroupHom(K, G, tuple(images))


def quotient(G, S):
    """Quotient group with the projection; S must be normal.

    >>> Z2xZ = quotient(make_fgab_group(2, []),
    ...     subgroup(make_fgab_group(2, []), [make_fgab_group(2, []).elem([2, 0])]))[0]
    >>> Z2xZ.rank, Z2xZ.torsion
    (1, (2,))
    """
    if G.backend == "finite":
        if not S.is_normal():
            bad = next((g, x) for g in G.elements() for x in S.elements
                       if G.conjugate(g, x) not in S.elements)
            raise NotNormal("subgroup is not normal", witness=bad)
        cosets = {}
        reps = []
        for x in sorted(G.elements(), key=lambda e: e.coords):
            if x in cosets:
                continue
            rep = len(reps)
            for s in S.elements:
                cosets[x + s] = rep
            reps.append(x)
        table = [[cosets[a + b] for b in reps] for a in reps]
        names = [f"[{G.describe_element(r)}]" for r in reps]
        Q = _finite_group_unchecked(names, table)
        proj = GroupHom(G, Q, tuple(
            GroupElement(Q, (cosets[x],)) for x in G.elements()))
        return Q, proj
    pres = fgab_presentation(G.ncoords,
                             [list(c) for c in _subgroup_lattice(S)])
    Q = pres.group
    images = [pres.project(list(g.coords)) for g in G.generators()]
    return Q, GroupHom(G, Q, tuple(images))


def group_kernel(h):
    """Kernel as a group plus its injection into the domain."""
    return subgroup_to_group(kernel_subgroup(h))


def group_cokernel(h):
    """Cokernel: quotient of the codomain by the (normalized) image."""
    img = image_subgroup(h)
    if h.cod.backend == "finite" and not img.is_normal():
        raise NotNormal("image is not a normal subgroup")
    return quotient(h.cod, img)


# ---------------------------------------------------------------------------
# products and pullbacks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductResult:
    group: GroupObject
    inj1: GroupHom
    inj2: GroupHom
    proj1: GroupHom
    proj2: GroupHom


def direct_product(A, B):
    if A.backend != B.backend:
        raise BackendMismatch("mixed-backend product; convert first")
    if A.backend == "finite":
        pairs = [(a, b) for a in A.elements() for b in B.elements()]
        index = {p: i for i, p in enumerate(pairs)}
        table = [[index[(a1 + a2, b1 + b2)] for (a2, b2) in pairs]
                 for (a1, b1) in pairs]
        names = [f"({A.describe_element(a)}|{B.describe_element(b)})"
                 for a, b in pairs]
        P = _finite_group_unchecked(names, table)
        els = [GroupElement(P, (i,)) for i in range(len(pairs))]
        inj1 = GroupHom(A, P, tuple(els[index[(a, B.zero)]] for a in A.elements()))
        inj2 = GroupHom(B, P, tuple(els[index[(A.zero, b)]] for b in B.elements()))
        proj1 = GroupHom(P, A, tuple(p[0] for p in pairs))
        proj2 = GroupHom(P, B, tuple(p[1] for p in pairs))
        return ProductResult(P, inj1, inj2, proj1, proj2)
    n = A.ncoords + B.ncoords
    rels = [c + [0] * B.ncoords for c in A.relation_columns()]
    rels += [[0] * A.ncoords + c for c in B.relation_columns()]
    pres = fgab_presentation(n, rels)
    P = pres.group
    inj1 = GroupHom(A, P, tuple(
        pres.project(list(g.coords) + [0] * B.ncoords) for g in A.generators()))
    inj2 = GroupHom(B, P, tuple(
        pres.project([0] * A.ncoords + list(g.coords)) for g in B.generators()))
    proj1 = GroupHom(P, A, tuple(
        A.elem(lift[: A.ncoords]) for lift in pres.gen_lifts))
    proj2 = GroupHom(P, B, tuple(
        B.elem(lift[A.ncoords:]) for lift in pres.gen_lifts))
    return ProductResult(P, inj1, inj2, proj1, proj2)


def group_pullback(f, g):
    """P = {(a, c) : f(a) = g(c)} with its two projections.

    A finite abelian participant in a mixed-backend pullback is converted
    to fgab normal form behind the scenes; the projections still target
    the original groups.  Mixing a finite non-abelian group with an fgab
    one is unsupported.
    """
    if f.cod != g.cod:
        raise ValueError("pullback needs a common codomain")
    A, C = f.dom, g.dom
    if A.backend == "finite" and C.backend == "finite" \
            and f.cod.backend == "finite":
        pairs = [(a, c) for a in A.elements() for c in C.elements()
                 if f(a) == g(c)]
        index = {p: i for i, p in enumerate(pairs)}
        table = [[index[(a1 + a2, c1 + c2)] for (a2, c2) in pairs]
                 for (a1, c1) in pairs]
        names = [f"({A.describe_element(a)}|{C.describe_element(c)})"
                 for a, c in pairs]
        P = _finite_group_unchecked(names, table)
        proj1 = GroupHom(P, A, tuple(p[0] for p in pairs))
        proj2 = GroupHom(P, C, tuple(p[1] for p in pairs))
        return P, proj1, proj2
    if A.backend != "fgab" or C.backend != "fgab" or f.cod.backend != "fgab":
        # the conversion cache hands both homs the same codomain copy
        f, back_f = _fgabized_hom(f)
        g, back_g = _fgabized_hom(g)
        A, C = f.dom, g.dom
    else:
        back_f = back_g = None
    prod = direct_product(A, C)
    delta = hom_sub(compose(f, prod.proj1), compose(g, prod.proj2))
    K, inj = group_kernel(delta)
    proj1 = compose(prod.proj1, inj)
    proj2 = compose(prod.proj2, inj)
    if back_f is not None:
        proj1 = compose(back_f, proj1)
    if back_g is not None:
        proj2 = compose(back_g, proj2)
    return K, proj1, proj2


@lru_cache(maxsize=None)
def _fgab_conversion(G):
    return fgab_from_finite_abelian(G)


def _fgabized_hom(h):
    """(equivalent fgab -> fgab hom, iso back onto the original domain).

    The iso is None when the domain was already fgab.
    """
    if h.cod.backend == "finite":
        if not h.cod.is_abelian():
            raise BackendMismatch("cannot mix a finite non-abelian group "
                                  "with an fgab one")
        _, to_b, _ = _fgab_conversion(h.cod)
        h = compose(to_b, h)
    if h.dom.backend == "finite":
        if not h.dom.is_abelian():
            raise BackendMismatch("cannot mix a finite non-abelian group "
                                  "with an fgab one")
        _, _, from_a = _fgab_conversion(h.dom)
        return compose(h, from_a), from_a
    return h, None


# ---------------------------------------------------------------------------
# finite abelian -> fgab conversion
# ---------------------------------------------------------------------------

def fgab_from_finite_abelian(G):
    """Invariant-factor form of a finite abelian group with both isos.

    >>> Z4 = make_finite_group([str(i) for i in range(4)],
    ...     [[(i + j) % 4 for j in range(4)] for i in range(4)])
    >>> H, to_h, from_h = fgab_from_finite_abelian(Z4)
    >>> H.torsion
    (4,)
    """
    if not G.is_abelian():
        raise BackendMismatch("only abelian groups convert to fgab form")
    n = G.order()
    rels = []
    for i in range(n):
        for j in range(i, n):
            k = G.table[i][j]
            col = [0] * n
            col[i] += 1
            col[j] += 1
            col[k] -= 1
            rels.append(col)
    pres = fgab_presentation(n, rels)
    H = pres.group
    to_h = GroupHom(G, H, tuple(
        pres.project([1 if t == i else 0 for t in range(n)])
        for i in range(n)))
    from_images = []
    for lift in pres.gen_lifts:
        acc = G.zero
        for i, mult in enumerate(lift):
            if mult:
                acc = acc + G.scale(G.elem(i), mult)
        from_images.append(acc)
    from_h = GroupHom(H, G, tuple(from_images))
    return H, to_h, from_h


def cyclic_group(n, name_prefix=""):
    """Z/n as a finite group with elements named 0..n-1."""
    names = [f"{name_prefix}{i}" for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return make_finite_group(names, table)


# ---------------------------------------------------------------------------
# hom enumeration
# ---------------------------------------------------------------------------

def _element_words(G):
    """Express every element as a word in the canonical generating set."""
    gens = G.generators()
    words = {G.zero: ()}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = x + g
                if y not in words:
                    words[y] = words[x] + (i,)
                    nxt.append(y)
        frontier = nxt
    return gens, words


def enumerate_group_homs(G, H):
    """All homomorphisms between two finite groups, deterministically ordered.

    Generator images range over H; each candidate extends along generator
    words and is kept iff the full homomorphism law holds.
    """
    gens, words = _element_words(G)
    targets = H.elements()
    out = []
    for combo in itertools.product(targets, repeat=len(gens)):
        images = []
        ok = True
        for x in G.elements():
            acc = H.zero
            for gi in words[x]:
                acc = acc + combo[gi]
            images.append(acc)
        cand = GroupHom(G, H, tuple(images))
        for a in G.elements():
            if not ok:
                break
            for b in G.elements():
                if cand(a + b) != cand(a) + cand(b):
                    ok = False
                    break
        if ok:
            out.append(cand)
    return out


def _bounded_elements(H, bound):
    ranges = [range(-bound, bound + 1)] * H.rank + [range(d) for d in H.torsion]
    return [H.elem(c) for c in itertools.product(*ranges)]


def enumerate_homs_bounded(G, H, bound):
    """All fgab -> fgab homs whose free-part coordinates lie in [-bound, bound].

    Torsion generators only range over images of compatible order, so the
    list is exactly the set of homs representable within the bound.
    """
    free_candidates = _bounded_elements(H, bound)
    per_gen = []
    for i in range(G.rank):
        per_gen.append(free_candidates)
    for j, d in enumerate(G.torsion):
        per_gen.append([h for h in free_candidates if H.scale(h, d).is_zero()])
    out = []
    for combo in itertools.product(*per_gen):
        out.append(GroupHom(G, H, tuple(combo)))
    return out
