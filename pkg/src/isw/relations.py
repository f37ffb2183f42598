"""Equivalence relations (partitions) and tolerances on finite carriers.

A partition is stored by labelling every carrier element with the minimum
element of its block, so two partitions are equal exactly when their label
tuples are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        """Merge the classes of x and y; return False if already merged."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if x < y:
            self.parent[y] = x
        else:
            self.parent[x] = y
        return True

    def labels(self):
        return [self.find(x) for x in range(len(self.parent))]


def _min_labels(labels):
    first = {}
    return [first.setdefault(lab, i) for i, lab in enumerate(labels)]


@dataclass(frozen=True)
class Partition:
    """Partition of ``carrier``; ``reps[k]`` is the least element in the block of ``carrier[k]``."""

    carrier: tuple[int, ...]
    reps: tuple[int, ...]

    @classmethod
    def from_labels(cls, carrier: Sequence[int], labels: Sequence) -> "Partition":
        carrier = tuple(int(c) for c in carrier)
        if list(carrier) != sorted(set(carrier)):
            raise ValueError("carrier must be strictly increasing")
        if len(labels) != len(carrier):
            raise ValueError("one label per carrier element expected")
        if isinstance(labels, np.ndarray) and labels.ndim == 2:
            labels = [tuple(row) for row in labels.tolist()]
        elif isinstance(labels, np.ndarray):
            labels = labels.tolist()
        positions = _min_labels(labels)
        return cls(carrier, tuple(carrier[p] for p in positions))

    @classmethod
    def identity(cls, carrier) -> "Partition":
        carrier = tuple(carrier)
        return cls(carrier, carrier)

    @classmethod
    def universal(cls, carrier) -> "Partition":
        carrier = tuple(carrier)
        return cls(carrier, (carrier[0],) * len(carrier) if carrier else ())

    @classmethod
    def from_blocks(cls, carrier, blocks: Iterable[Iterable[int]]) -> "Partition":
        carrier = tuple(carrier)
        index = {c: k for k, c in enumerate(carrier)}
        labels = [None] * len(carrier)
        for b, block in enumerate(blocks):
            for x in block:
                if labels[index[x]] is not None:
                    raise ValueError(f"element {x} occurs in two blocks")
                labels[index[x]] = b
        if any(lab is None for lab in labels):
            raise ValueError("blocks do not cover the carrier")
        return cls.from_labels(carrier, labels)

    @classmethod
    def from_pairs(cls, carrier, pairs: Iterable[tuple[int, int]]) -> "Partition":
        """Least equivalence relation on ``carrier`` containing ``pairs``."""
        carrier = tuple(carrier)
        index = {c: k for k, c in enumerate(carrier)}
        uf = UnionFind(len(carrier))
        for a, b in pairs:
            uf.union(index[a], index[b])
        return cls.from_labels(carrier, uf.labels())

    @cached_property
    def _index(self):
        return {c: k for k, c in enumerate(self.carrier)}

    @cached_property
    def labels(self) -> np.ndarray:
        """Block representative of each carrier element, as an array."""
        return np.asarray(self.reps, dtype=np.int64)

    def rep(self, x: int) -> int:
        return self.reps[self._index[x]]

    def related(self, a: int, b: int) -> bool:
        return self.rep(a) == self.rep(b)

    def __contains__(self, pair) -> bool:
        a, b = pair
        return a in self._index and b in self._index and self.related(a, b)

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: dict[int, list[int]] = {}
        for c, r in zip(self.carrier, self.reps):
            out.setdefault(r, []).append(c)
        return tuple(tuple(b) for b in out.values())

    def block_of(self, x: int) -> tuple[int, ...]:
        r = self.rep(x)
        return next(b for b in self.blocks if b[0] == r)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def pairs(self, strict=False):
        """Ordered pairs (a, b) in the relation, lexicographically; ``strict`` drops a == b."""
        out = []
        for a in self.carrier:
            for b in self.block_of(a):
                if not (strict and a == b):
                    out.append((a, b))
        return out

    def pair_array(self, strict=False) -> np.ndarray:
        p = self.pairs(strict)
        return np.asarray(p, dtype=np.int64).reshape(len(p), 2)

    def is_identity(self) -> bool:
        return self.reps == self.carrier

    def is_universal(self) -> bool:
        return len(set(self.reps)) <= 1

    def _check_carrier(self, other):
        if self.carrier != other.carrier:
            raise ValueError("partitions live on different carriers")

    def __le__(self, other: "Partition") -> bool:
        """Refinement order: every block of self lies inside a block of other."""
        self._check_carrier(other)
        return all(other.rep(a) == other.rep(r) for a, r in zip(self.carrier, self.reps))

    def __lt__(self, other: "Partition") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "Partition") -> bool:
        return other <= self

    def __gt__(self, other: "Partition") -> bool:
        return other < self

    def meet(self, other: "Partition") -> "Partition":
        self._check_carrier(other)
        return Partition.from_labels(self.carrier, list(zip(self.reps, other.reps)))

    def join(self, other: "Partition") -> "Partition":
        self._check_carrier(other)
        uf = UnionFind(len(self.carrier))
        for k, (r1, r2) in enumerate(zip(self.reps, other.reps)):
            uf.union(k, self._index[r1])
            uf.union(k, self._index[r2])
        return Partition.from_labels(self.carrier, uf.labels())

    def restrict(self, subset: Iterable[int]) -> "Partition":
        sub = tuple(sorted(subset))
        return Partition.from_labels(sub, [self.rep(x) for x in sub])

    def sort_key(self):
        return (self.num_blocks, self.blocks)

    def to_json(self):
        return {"blocks": [list(b) for b in self.blocks]}

    def __repr__(self):
        body = "|".join(",".join(map(str, b)) for b in self.blocks)
        return f"Partition({body})"


@dataclass(frozen=True)
class Tolerance:
    """A symmetric binary relation on ``range(order)``, kept as a boolean matrix.

    The tolerance axioms (reflexive, symmetric, compatible) are checked by
    :func:`tolerance_violation` rather than enforced on construction, because
    some relations built here are only conjectured to be tolerances.
    """

    order: int
    matrix_bytes: bytes

    @classmethod
    def from_matrix(cls, matrix) -> "Tolerance":
        m = np.asarray(matrix, dtype=bool)
        if m.shape != (m.shape[0], m.shape[0]):
            raise ValueError("square matrix expected")
        return cls(m.shape[0], np.ascontiguousarray(m).tobytes())

    @classmethod
    def from_pairs(cls, order, pairs) -> "Tolerance":
        m = np.zeros((order, order), dtype=bool)
        for a, b in pairs:
            m[a, b] = m[b, a] = True
        return cls.from_matrix(m)

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.frombuffer(self.matrix_bytes, dtype=bool).reshape(self.order, self.order)
        return m

    def __contains__(self, pair) -> bool:
        a, b = pair
        return bool(self.matrix[a, b])

    def pairs(self):
        """Pairs (i, j) with i <= j, sorted."""
        i, j = np.nonzero(np.triu(self.matrix))
        return list(zip(i.tolist(), j.tolist()))

    def intersect(self, other) -> "Tolerance":
        m = other.matrix if isinstance(other, Tolerance) else relation_matrix(other)
        return Tolerance.from_matrix(self.matrix & m)

    def is_equivalence(self) -> bool:
        m = self.matrix.astype(np.int64)
        return bool(np.all(np.diag(self.matrix)) and np.array_equal((m @ m) > 0, self.matrix))

    def to_json(self):
        return {"pairs": [list(p) for p in self.pairs()]}


def relation_matrix(rel) -> np.ndarray:
    """Boolean matrix of a partition (on a full carrier) or tolerance."""
    if isinstance(rel, Tolerance):
        return rel.matrix
    labels = rel.labels
    return labels[:, None] == labels[None, :]
