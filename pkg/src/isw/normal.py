"""Normal inverse subsemigroups: full, inverse-closed, stable under conjugation."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .config import DEFAULT_ENUM_ORDER
from .errors import OrderTooLarge
from .semigroup import InverseSemigroup


def _mask(S, members):
    m = np.zeros(S.order, dtype=bool)
    m[list(members)] = True
    return m


def normal_violation(S: InverseSemigroup, N):
    """First reason N fails to be normal, or None.

    The result is a dict with a ``kind`` in ``not_full``, ``not_closed``,
    ``not_inverse_closed``, ``not_conjugation_stable`` and the offending elements.
    """
    m = _mask(S, N)
    t = S.table
    for e in S.idempotents:
        if not m[e]:
            return {"kind": "not_full", "element": e}
    mem = np.flatnonzero(m)
    prods = t[np.ix_(mem, mem)]
    bad = np.argwhere(~m[prods])
    if len(bad):
        a, b = (int(mem[k]) for k in bad[0])
        return {"kind": "not_closed", "pair": [a, b], "product": int(t[a, b])}
    bad = mem[~m[S.inv[mem]]]
    if len(bad):
        return {"kind": "not_inverse_closed", "element": int(bad[0])}
    # conj[g, a] = g⁻¹ a g
    conj = t[t[S.inv][:, mem], np.arange(S.order)[:, None]]
    bad = np.argwhere(~m[conj])
    if len(bad):
        g, k = bad[0].tolist()
        return {"kind": "not_conjugation_stable", "g": g, "a": int(mem[k]), "conjugate": int(conj[g, k])}
    return None


def is_normal(S: InverseSemigroup, N) -> bool:
    return normal_violation(S, N) is None


def normal_closure(S: InverseSemigroup, X=()) -> frozenset[int]:
    """Least normal inverse subsemigroup containing X."""
    t = S.table
    m = _mask(S, X) | S.idempotent_mask
    g = np.arange(S.order)[:, None]
    while True:
        mem = np.flatnonzero(m)
        new = m.copy()
        new[t[np.ix_(mem, mem)].ravel()] = True
        new[S.inv[mem]] = True
        new[t[t[S.inv][:, mem], g].ravel()] = True
        if np.array_equal(new, m):
            return frozenset(int(x) for x in mem)
        m = new


def _signature(N):
    return (len(N), tuple(sorted(N)))


@lru_cache(maxsize=128)
def enumerate_normal_subsemigroups(S: InverseSemigroup, max_order=DEFAULT_ENUM_ORDER):
    """All normal inverse subsemigroups, sorted by size then members.

    Every normal N is the normal closure of the union of the closures of its
    single elements, so closing the principal ones under joins is complete.
    """
    if S.order > max_order:
        raise OrderTooLarge(f"order {S.order} exceeds enumeration guard {max_order}")
    principal = {normal_closure(S, [a]) for a in S.elements}
    found = {normal_closure(S)}
    for p in sorted(principal, key=_signature):
        found |= {normal_closure(S, c | p) for c in found}
    return tuple(sorted(found, key=_signature))
