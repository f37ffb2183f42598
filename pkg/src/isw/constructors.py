"""Standard inverse semigroups: partial bijections, groups, Brandt and Clifford semigroups."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .config import DEFAULT_MAX_ORDER
from .errors import (
    DegreeTooLarge,
    EmptyGeneratorSet,
    LinksNotFunctorial,
    NotAGroup,
    OrderTooLarge,
)
from .semigroup import InverseSemigroup, is_group, is_semilattice

MAX_SYMMETRIC_DEGREE = 4


@dataclass(frozen=True)
class PartialBijection:
    """Injective partial map on ``range(degree)``; ``image[i] is None`` where undefined.

    Composition acts left to right: ``(f * g)(i) = g(f(i))``.
    """

    degree: int
    image: tuple[Optional[int], ...]

    def __post_init__(self):
        if len(self.image) != self.degree:
            raise ValueError("image length must equal degree")
        defined = [v for v in self.image if v is not None]
        if len(set(defined)) != len(defined):
            raise ValueError(f"not injective: {self.image}")
        if any(not 0 <= v < self.degree for v in defined):
            raise ValueError(f"image out of range: {self.image}")

    @classmethod
    def of(cls, *image) -> "PartialBijection":
        return cls(len(image), tuple(image))

    def __call__(self, i):
        return self.image[i]

    def __mul__(self, other: "PartialBijection") -> "PartialBijection":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return PartialBijection(
            self.degree,
            tuple(None if v is None else other.image[v] for v in self.image),
        )

    def inverse(self) -> "PartialBijection":
        out: list[Optional[int]] = [None] * self.degree
        for i, v in enumerate(self.image):
            if v is not None:
                out[v] = i
        return PartialBijection(self.degree, tuple(out))

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.image) if v is not None)

    @property
    def rank(self) -> int:
        return len(self.domain)

    def sort_key(self):
        return tuple(-1 if v is None else v for v in self.image)

    def __str__(self):
        return "[" + ",".join("-" if v is None else str(v) for v in self.image) + "]"


def all_partial_bijections(n: int) -> list[PartialBijection]:
    out = []
    for k in range(n + 1):
        for dom in combinations(range(n), k):
            for img in permutations(range(n), k):
                image: list[Optional[int]] = [None] * n
                for i, v in zip(dom, img):
                    image[i] = v
                out.append(PartialBijection(n, tuple(image)))
    return sorted(out, key=PartialBijection.sort_key)


def close_partial_bijections(gens: Sequence[PartialBijection], name=None,
                             max_order=DEFAULT_MAX_ORDER):
    """Inverse subsemigroup of IS(n) generated by ``gens``.

    Elements are numbered breadth-first: first the generators and their
    inverses, then each new layer of right multiples, every layer sorted
    by image array.  Returns ``(S, embedding)`` where ``embedding[x]`` is the
    partial bijection of element ``x``.
    """
    gens = list(gens)
    if not gens:
        raise EmptyGeneratorSet("at least one generator is required")
    if len({g.degree for g in gens}) != 1:
        raise ValueError("generators must share one degree")
    base = sorted(set(gens) | {g.inverse() for g in gens}, key=PartialBijection.sort_key)
    elements = list(base)
    index = {x: k for k, x in enumerate(elements)}
    frontier = list(base)
    while frontier:
        layer = set()
        for x in frontier:
            for g in base:
                y = x * g
                if y not in index and y not in layer:
                    layer.add(y)
        frontier = sorted(layer, key=PartialBijection.sort_key)
        for y in frontier:
            index[y] = len(elements)
            elements.append(y)
        if len(elements) > max_order:
            raise OrderTooLarge(f"generated semigroup exceeds {max_order} elements")
    table = [[index[x * y] for y in elements] for x in elements]
    S = InverseSemigroup.from_cayley_table(table, name=name, labels=[str(x) for x in elements],
                                           max_order=max_order)
    return S, tuple(elements)


def symmetric_inverse_monoid(n: int) -> InverseSemigroup:
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise DegreeTooLarge(f"IS({n}) is outside 1..{MAX_SYMMETRIC_DEGREE}")
    S, _ = close_partial_bijections(all_partial_bijections(n), name=f"IS{n}")
    return S


def from_operation(elements: Sequence, op: Callable, name=None, labels=None) -> InverseSemigroup:
    """Tabulate ``op`` on ``elements`` (which must be closed under it)."""
    index = {x: k for k, x in enumerate(elements)}
    table = [[index[op(x, y)] for y in elements] for x in elements]
    if labels is None:
        labels = [str(x) for x in elements]
    return InverseSemigroup.from_cayley_table(table, name=name, labels=labels)


def trivial() -> InverseSemigroup:
    return InverseSemigroup.from_cayley_table([[0]], name="trivial", labels=["1"])


def chain(n: int) -> InverseSemigroup:
    """The n-element chain semilattice; element 0 is the bottom."""
    return InverseSemigroup.from_cayley_table(
        [[min(i, j) for j in range(n)] for i in range(n)], name=f"chain{n}"
    )


def cyclic_group(n: int) -> InverseSemigroup:
    return InverseSemigroup.from_cayley_table(
        [[(i + j) % n for j in range(n)] for i in range(n)], name=f"Z{n}"
    )


def _permutation_group(gens, name):
    pbs = [PartialBijection(len(g), tuple(g)) for g in gens]
    S, _ = close_partial_bijections(pbs, name=name)
    return S


def symmetric_group_s3() -> InverseSemigroup:
    return _permutation_group([(1, 0, 2), (1, 2, 0)], "S3")


def dihedral_group_d4() -> InverseSemigroup:
    """Symmetries of a square (order 8) acting on its vertices."""
    return _permutation_group([(1, 2, 3, 0), (0, 3, 2, 1)], "D4")


def quaternion_group() -> InverseSemigroup:
    # units as (sign, axis) with axis in 1, i, j, k
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elements = [(s, u) for s in (1, -1) for u in "1ijk"]

    def op(x, y):
        sign, unit = mult[x[1], y[1]]
        return (x[0] * y[0] * sign, unit)

    labels = [("" if s > 0 else "-") + u for s, u in elements]
    return from_operation(elements, op, name="Q8", labels=labels)


def group_identity(G: InverseSemigroup) -> int:
    if not is_group(G):
        raise NotAGroup(f"{G!r} has {len(G.idempotents)} idempotents")
    return G.idempotents[0]


def brandt(G: InverseSemigroup, n: int, name=None) -> InverseSemigroup:
    """Brandt semigroup B(G, n): triples (i, g, j) and a zero, which is element 0."""
    group_identity(G)
    m = G.order
    triples = list(product(range(n), range(m), range(n)))
    pos = {t: 1 + k for k, t in enumerate(triples)}
    size = len(triples) + 1
    table = np.zeros((size, size), dtype=np.int64)
    for (i, g, j), x in pos.items():
        for (k, h, l), y in pos.items():
            if j == k:
                table[x, y] = pos[(i, int(G.table[g, h]), l)]
    labels = ["0"] + [f"({i},{G.element_name(g)},{j})" for i, g, j in triples]
    return InverseSemigroup.from_cayley_table(
        table, name=name or f"B({G.name or 'G'},{n})", labels=labels
    )


def _leq(L, f, e):
    return int(L.table[e, f]) == f


def _covers(L, e):
    below = [f for f in L.elements if f != e and _leq(L, f, e)]
    return [f for f in below if not any(g != f and _leq(L, f, g) for g in below)]


def strong_semilattice_of_groups(lattice: InverseSemigroup, groups: Sequence[InverseSemigroup],
                                 links: Mapping[tuple[int, int], Sequence[int]], name=None):
    """Clifford semigroup from a semilattice, a group per vertex and linking homomorphisms.

    ``links[(e, f)]`` maps the elements of ``groups[e]`` into ``groups[f]`` for
    ``f < e``.  Links are needed on covering pairs only (and may be omitted
    when the target group is trivial); the rest are composed and every
    triangle is checked.
    """
    L = lattice
    if not is_semilattice(L) or not np.array_equal(L.table, L.table.T):
        raise ValueError("lattice must be a semilattice")
    if len(groups) != L.order:
        raise ValueError("one group per semilattice element expected")
    ids = [group_identity(G) for G in groups]

    phi: dict[tuple[int, int], np.ndarray] = {}
    for e in L.elements:
        phi[(e, e)] = np.arange(groups[e].order)
    for (e, f), m in links.items():
        if not (f != e and _leq(L, f, e)):
            raise ValueError(f"link ({e},{f}) is not along f < e")
        m = np.asarray(m, dtype=np.int64)
        if m.shape != (groups[e].order,) or m.min() < 0 or m.max() >= groups[f].order:
            raise ValueError(f"link ({e},{f}) has the wrong shape or range")
        Ge, Gf = groups[e].table, groups[f].table
        if not np.array_equal(m[Ge], Gf[np.ix_(m, m)]):
            raise LinksNotFunctorial(f"link ({e},{f}) is not a homomorphism", witness=[e, f])
        phi[(e, f)] = m
    for e in L.elements:
        for f in _covers(L, e):
            if (e, f) not in phi:
                if groups[f].order != 1:
                    raise ValueError(f"missing link for covering pair ({e},{f})")
                phi[(e, f)] = np.zeros(groups[e].order, dtype=np.int64)

    # fill non-covering pairs top-down along covers
    def link(e, f):
        if (e, f) not in phi:
            c = next(c for c in _covers(L, e) if _leq(L, f, c))
            phi[(e, f)] = link(c, f)[link(e, c)]
        return phi[(e, f)]

    for e in L.elements:
        for f in L.elements:
            if _leq(L, f, e):
                link(e, f)
    for e, f, g in product(L.elements, repeat=3):
        if _leq(L, f, e) and _leq(L, g, f):
            if not np.array_equal(phi[(f, g)][phi[(e, f)]], phi[(e, g)]):
                raise LinksNotFunctorial(f"links do not compose along {e} > {f} > {g}",
                                         witness=[e, f, g])
    if any(int(phi[(e, f)][ids[e]]) != ids[f] for (e, f) in phi):
        raise LinksNotFunctorial("a link does not preserve identities")

    offset = np.cumsum([0] + [G.order for G in groups])
    elements = [(e, g) for e in L.elements for g in range(groups[e].order)]
    size = len(elements)
    table = np.zeros((size, size), dtype=np.int64)
    for x, (e, a) in enumerate(elements):
        for y, (f, b) in enumerate(elements):
            h = int(L.table[e, f])
            table[x, y] = offset[h] + groups[h].table[phi[(e, h)][a], phi[(f, h)][b]]
    labels = [f"{e}:{groups[e].element_name(a)}" for e, a in elements]
    return InverseSemigroup.from_cayley_table(table, name=name, labels=labels)


def direct_product(S: InverseSemigroup, T: InverseSemigroup, name=None) -> InverseSemigroup:
    m = T.order
    idx = np.arange(S.order * m)
    s, t = idx // m, idx % m
    table = S.table[np.ix_(s, s)] * m + T.table[np.ix_(t, t)]
    labels = [f"({S.element_name(a)},{T.element_name(b)})" for a, b in zip(s, t)]
    if name is None and S.name and T.name:
        name = f"{S.name}x{T.name}"
    return InverseSemigroup.from_cayley_table(table, name=name, labels=labels)


def relabel(S: InverseSemigroup, perm: Sequence[int], name=None) -> InverseSemigroup:
    """Isomorphic copy in which old element ``x`` becomes ``perm[x]``."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.argsort(perm)
    table = perm[S.table[np.ix_(inv, inv)]]
    return InverseSemigroup.from_cayley_table(table, name=name or S.name)
