"""Congruences of finite inverse semigroups and congruence pairs (kernel, trace)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .config import DEFAULT_ENUM_ORDER
from .errors import InvalidPair, OrderTooLarge, TheoremMismatch
from .normal import enumerate_normal_subsemigroups, normal_violation
from .relations import Partition, UnionFind, relation_matrix
from .semigroup import InverseSemigroup, green_h, subsemigroup_table

Congruence = Partition


def identity_congruence(S: InverseSemigroup) -> Partition:
    return Partition.identity(range(S.order))


def universal_congruence(S: InverseSemigroup) -> Partition:
    return Partition.universal(range(S.order))


def _translation_violation(table, reps):
    lab = reps[table]
    # left translation: column a must match column rep(a)
    bad = np.argwhere(lab != lab[:, reps])
    if len(bad):
        x, a = bad[0].tolist()
        return {"kind": "left", "pair": [a, int(reps[a])], "x": x}
    bad = np.argwhere(lab != lab[reps, :])
    if len(bad):
        a, x = bad[0].tolist()
        return {"kind": "right", "pair": [a, int(reps[a])], "x": x}
    return None


def congruence_violation(S: InverseSemigroup, eq: Partition):
    """Witness that ``eq`` is not a congruence, or None.

    Stability under inversion is checked as well, although it is implied
    by stability under multiplication; a relation that is multiplicatively
    stable but not inversion stable raises :class:`TheoremMismatch`.
    """
    if eq.carrier != tuple(range(S.order)):
        raise ValueError("partition must be on the whole semigroup")
    reps = eq.labels
    found = _translation_violation(S.table, reps)
    bad = np.flatnonzero(reps[S.inv] != reps[S.inv[reps]])
    if len(bad):
        a = int(bad[0])
        if found is None:
            raise TheoremMismatch("multiplicatively stable relation not stable under inversion",
                                  witness=[a, int(reps[a])])
        return found
    return found


def is_congruence(S: InverseSemigroup, eq: Partition) -> bool:
    return congruence_violation(S, eq) is None


def congruence_generated(S: InverseSemigroup, pairs: Iterable[tuple[int, int]] = ()) -> Partition:
    """Least congruence containing ``pairs``.

    Each pair that merges two classes has its one-step translates and its
    inverse pair queued; by transitivity that is enough for stability.
    """
    t, inv = S.table, S.inv
    n = S.order
    uf = UnionFind(n)
    queue = deque((int(a), int(b)) for a, b in pairs)
    while queue:
        a, b = queue.popleft()
        if not uf.union(a, b):
            continue
        ta, tb = t[a].tolist(), t[b].tolist()
        la, lb = t[:, a].tolist(), t[:, b].tolist()
        queue.extend(zip(ta, tb))
        queue.extend(zip(la, lb))
        queue.append((int(inv[a]), int(inv[b])))
    return Partition.from_labels(range(n), uf.labels())


def kernel(S: InverseSemigroup, alpha: Partition) -> frozenset[int]:
    """Union of the classes that contain an idempotent."""
    reps = alpha.labels
    idem_classes = set(reps[list(S.idempotents)].tolist())
    return frozenset(x for x in S.elements if int(reps[x]) in idem_classes)


def trace(S: InverseSemigroup, alpha: Partition) -> Partition:
    return alpha.restrict(S.idempotents)


@dataclass(frozen=True)
class CongruencePair:
    kernel: frozenset[int]
    trace: Partition

    def to_json(self):
        return {"kernel": sorted(self.kernel), "trace_blocks": [list(b) for b in self.trace.blocks]}


def pair_of(S: InverseSemigroup, alpha: Partition) -> CongruencePair:
    return CongruencePair(kernel(S, alpha), trace(S, alpha))


def semilattice_congruence_violation(S: InverseSemigroup, eps: Partition):
    E = S.idempotents
    if eps.carrier != E:
        return {"kind": "carrier", "detail": "trace must live on E(S)"}
    for e, r in zip(eps.carrier, eps.reps):
        if e == r:
            continue
        for g in E:
            if not eps.related(S.mul(e, g), S.mul(r, g)):
                return {"kind": "not_semilattice_congruence", "pair": [e, r], "g": g}
    return None


def pair_violation(S: InverseSemigroup, N, eps: Partition):
    """Witness that (N, eps) is not a congruence pair, or None.

    (CP1) and (CP2) are checked literally, quantifier by quantifier.
    """
    v = normal_violation(S, N)
    if v is not None:
        return {"kind": "kernel_not_normal", "detail": v}
    v = semilattice_congruence_violation(S, eps)
    if v is not None:
        return v
    N = frozenset(N)
    E = S.idempotents
    for a in S.elements:
        if a in N:
            continue
        aa = S.mul(int(S.inv[a]), a)
        for e in E:
            if S.mul(a, e) in N and eps.related(e, aa):
                return {"kind": "CP1", "a": a, "e": e}
    for a in sorted(N):
        ai = int(S.inv[a])
        for e in E:
            if not eps.related(S.mul(ai, e, a), S.mul(ai, a, e)):
                return {"kind": "CP2", "a": a, "e": e}
    return None


def is_congruence_pair(S: InverseSemigroup, N, eps: Partition) -> bool:
    return pair_violation(S, N, eps) is None


def congruence_from_pair(S: InverseSemigroup, N, eps: Partition) -> Partition:
    """The congruence a ~ b iff ab⁻¹ in N and a⁻¹a eps b⁻¹b.

    Note the domain idempotents: pairing ab⁻¹ with aa⁻¹, bb⁻¹ instead does
    not even give an equivalence in general (B(Z2, 2) with N = E(S)).
    """
    v = pair_violation(S, N, eps)
    if v is not None:
        raise InvalidPair(f"not a congruence pair: {v}")
    mask = np.zeros(S.order, dtype=bool)
    mask[list(N)] = True
    dom = S.domain_idempotent
    eps_rep = np.full(S.order, -1, dtype=np.int64)
    eps_rep[list(eps.carrier)] = eps.reps
    abinv = S.table[:, S.inv]
    rel = mask[abinv] & (eps_rep[dom][:, None] == eps_rep[dom][None, :])
    alpha = Partition.from_labels(range(S.order), np.argmax(rel, axis=1))
    if not np.array_equal(relation_matrix(alpha), rel):
        raise TheoremMismatch("relation built from a congruence pair is not an equivalence")
    return alpha


@lru_cache(maxsize=256)
def enumerate_congruences(S: InverseSemigroup, max_order=DEFAULT_ENUM_ORDER) -> tuple[Partition, ...]:
    """All congruences, sorted by number of blocks then block signature."""
    if S.order > max_order:
        raise OrderTooLarge(f"order {S.order} exceeds enumeration guard {max_order}")
    n = S.order
    principal = set()
    for a in range(n):
        for b in range(a + 1, n):
            principal.add(congruence_generated(S, [(a, b)]))
    found = {identity_congruence(S)}
    for p in sorted(principal, key=Partition.sort_key):
        found |= {c.join(p) for c in found}
    return tuple(sorted(found, key=Partition.sort_key))


def semilattice_congruences(S: InverseSemigroup) -> tuple[Partition, ...]:
    """Congruences of the semilattice E(S), as partitions of E(S)."""
    E, members = subsemigroup_table(S, S.idempotents)
    out = []
    for c in enumerate_congruences(E, max_order=max(DEFAULT_ENUM_ORDER, E.order)):
        out.append(Partition.from_labels(members, [members[r] for r in c.reps]))
    return tuple(out)


def enumerate_congruence_pairs(S: InverseSemigroup) -> tuple[CongruencePair, ...]:
    """Every valid (N, eps), found by scanning normal N against semilattice congruences."""
    out = []
    for N in enumerate_normal_subsemigroups(S):
        for eps in semilattice_congruences(S):
            if is_congruence_pair(S, N, eps):
                out.append(CongruencePair(N, eps))
    return tuple(out)


def quotient(S: InverseSemigroup, alpha: Partition):
    """S/alpha with classes numbered by least member; returns ``(Q, projection)``."""
    v = congruence_violation(S, alpha)
    if v is not None:
        raise ValueError(f"not a congruence: {v}")
    reps = alpha.labels
    class_reps = sorted(set(reps.tolist()))
    number = {r: k for k, r in enumerate(class_reps)}
    projection = np.array([number[r] for r in reps.tolist()], dtype=np.int64)
    cr = np.asarray(class_reps, dtype=np.int64)
    table = projection[S.table[np.ix_(cr, cr)]]
    name = f"{S.name}/~" if S.name else None
    Q = InverseSemigroup.from_cayley_table(table, name=name)
    projection.setflags(write=False)
    return Q, projection


def preimage(projection: np.ndarray, beta: Partition) -> Partition:
    """Pull a partition of the quotient back along the projection."""
    return Partition.from_labels(range(len(projection)), beta.labels[projection])


def image_congruence(S: InverseSemigroup, alpha: Partition, projection: np.ndarray,
                     beta: Partition) -> Partition:
    """beta/alpha on S/alpha for alpha <= beta."""
    if not alpha <= beta:
        raise ValueError("alpha must be contained in beta")
    k = int(projection.max()) + 1
    labels = np.zeros(k, dtype=np.int64)
    labels[projection] = beta.labels
    return Partition.from_labels(range(k), labels)


def is_idempotent_separating(S: InverseSemigroup, alpha: Partition) -> bool:
    by_trace = trace(S, alpha).is_identity()
    below_h = alpha <= green_h(S)
    if by_trace != below_h:
        raise TheoremMismatch("trace criterion and H-containment disagree", witness=alpha.to_json())
    return by_trace
