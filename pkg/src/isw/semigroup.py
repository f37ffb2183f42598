"""Finite inverse semigroups given by Cayley tables."""
from __future__ import annotations

from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .config import DEFAULT_MAX_ORDER
from .errors import (
    IdempotentsDoNotCommute,
    MalformedTable,
    NonUniqueInverse,
    NotAssociative,
    NotRegular,
    OrderTooLarge,
)
from .relations import Partition


class InverseSemigroup:
    """A validated finite inverse semigroup on the elements ``0 .. order-1``.

    Build instances with :meth:`from_cayley_table`; the constructor itself
    trusts its arguments.
    """

    def __init__(self, table: np.ndarray, inv: np.ndarray, name: Optional[str] = None,
                 labels: Optional[Sequence[str]] = None):
        self.table = table
        self.inv = inv
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        self.table.setflags(write=False)
        self.inv.setflags(write=False)

    @classmethod
    def from_cayley_table(cls, table, name=None, labels=None, max_order=DEFAULT_MAX_ORDER):
        """Validate ``table`` and return the inverse semigroup it defines.

        Checks run in the order associativity, regularity, commuting
        idempotents, unique inverses; the first failure raises with the
        lexicographically least witness.
        """
        t = _as_table(table)
        n = t.shape[0]
        if n > max_order:
            raise OrderTooLarge(f"order {n} exceeds cap {max_order}")
        _check_associative(t)
        inv = _inverses(t)
        return cls(t, inv, name=name, labels=labels)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, *xs: int) -> int:
        out = xs[0]
        for x in xs[1:]:
            out = int(self.table[out, x])
        return int(out)

    @cached_property
    def idempotent_mask(self) -> np.ndarray:
        idx = np.arange(self.order)
        return self.table[idx, idx] == idx

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(int(e) for e in np.flatnonzero(self.idempotent_mask))

    def is_idempotent(self, x: int) -> bool:
        return bool(self.idempotent_mask[x])

    @cached_property
    def domain_idempotent(self) -> np.ndarray:
        """x -> x⁻¹x for every x."""
        idx = np.arange(self.order)
        return self.table[self.inv, idx]

    @cached_property
    def range_idempotent(self) -> np.ndarray:
        """x -> xx⁻¹ for every x."""
        idx = np.arange(self.order)
        return self.table[idx, self.inv]

    def element_name(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def __eq__(self, other):
        if not isinstance(other, InverseSemigroup):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.order, self.table.tobytes()))

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"<InverseSemigroup{name} order={self.order} |E|={len(self.idempotents)}>"

    def to_json(self):
        doc = {"order": self.order, "table": self.table.tolist()}
        if self.name is not None:
            doc["name"] = self.name
        return doc


def _as_table(table) -> np.ndarray:
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"table is not a rectangular integer array: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise MalformedTable(f"expected a nonempty square table, got shape {t.shape}")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        i, j = bad[0].tolist()
        raise MalformedTable(f"entry ({i},{j}) = {t[i, j]} out of range", witness=[i, j])
    return t


def _check_associative(t: np.ndarray):
    for a in range(t.shape[0]):
        lhs = t[t[a]]          # (ab)c over (b, c)
        rhs = t[a][t]          # a(bc) over (b, c)
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            b, c = diff[0].tolist()
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", witness=[a, b, c])


def _inverses(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    xy = t[x, y]
    yx = t[y, x]
    # cand[x, y]: x y x = x and y x y = y
    cand = (t[xy, x] == x) & (t[yx, y] == y)
    semi = t[xy, x] == x
    for a in range(n):
        if not semi[a].any():
            raise NotRegular(f"element {a} has no y with {a}*y*{a} = {a}", witness=[a])
    idem = np.flatnonzero(t[np.arange(n), np.arange(n)] == np.arange(n))
    sub = t[np.ix_(idem, idem)]
    diff = np.argwhere(sub != sub.T)
    if len(diff):
        e, f = (int(idem[k]) for k in diff[0])
        raise IdempotentsDoNotCommute(f"idempotents {e} and {f} do not commute", witness=[e, f])
    counts = cand.sum(axis=1)
    for a in range(n):
        if counts[a] != 1:
            raise NonUniqueInverse(
                f"element {a} has {counts[a]} inverses", witness=[a, *np.flatnonzero(cand[a]).tolist()]
            )
    return cand.argmax(axis=1).astype(np.int64)


def green_relations(S: InverseSemigroup) -> tuple[Partition, Partition, Partition]:
    """Green's relations (L, R, H) read off the idempotents x⁻¹x and xx⁻¹."""
    carrier = range(S.order)
    dom = S.domain_idempotent
    ran = S.range_idempotent
    L = Partition.from_labels(carrier, dom)
    R = Partition.from_labels(carrier, ran)
    H = Partition.from_labels(carrier, np.stack([dom, ran], axis=1))
    return L, R, H


def green_h(S: InverseSemigroup) -> Partition:
    return green_relations(S)[2]


def classical_center(S: InverseSemigroup) -> frozenset[int]:
    t = S.table
    return frozenset(int(a) for a in np.flatnonzero(np.all(t == t.T, axis=1)))


def is_commutative(S: InverseSemigroup) -> bool:
    return bool(np.array_equal(S.table, S.table.T))


def is_clifford(S: InverseSemigroup) -> bool:
    t = S.table
    E = list(S.idempotents)
    return bool(np.array_equal(t[E, :], t[:, E].T))


def is_group(S: InverseSemigroup) -> bool:
    return len(S.idempotents) == 1


def is_semilattice(S: InverseSemigroup) -> bool:
    return len(S.idempotents) == S.order


def identity_element(S: InverseSemigroup) -> Optional[int]:
    idx = np.arange(S.order)
    for e in S.idempotents:
        if np.array_equal(S.table[e], idx) and np.array_equal(S.table[:, e], idx):
            return e
    return None


def subsemigroup_table(S: InverseSemigroup, members) -> tuple[InverseSemigroup, list[int]]:
    """Restrict S to a subset closed under product and inversion.

    Returns the subsemigroup relabelled on ``0 .. k-1`` together with the list
    mapping new indices back to elements of S.
    """
    members = sorted(members)
    pos = {m: k for k, m in enumerate(members)}
    try:
        rows = [[pos[int(S.table[a, b])] for b in members] for a in members]
    except KeyError:
        raise ValueError("subset is not closed under multiplication") from None
    sub = InverseSemigroup.from_cayley_table(rows, name=None)
    return sub, members
