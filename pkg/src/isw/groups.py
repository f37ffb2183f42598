"""Classical group theory on Cayley tables: centers, commutators, central and derived series.

These routines use only textbook group-theoretic definitions and serve as
the independent reference for the universal-algebra deciders in ``series``.
"""
from __future__ import annotations

from typing import Optional

from .constructors import group_identity
from .semigroup import InverseSemigroup


def commutator(G: InverseSemigroup, g: int, h: int) -> int:
    """[g, h] = g⁻¹ h⁻¹ g h."""
    return G.mul(int(G.inv[g]), int(G.inv[h]), g, h)


def subgroup_generated(G: InverseSemigroup, gens) -> frozenset[int]:
    e = group_identity(G)
    members = {e}
    frontier = set(gens) - members
    members |= frontier
    while frontier:
        new = set()
        for x in frontier:
            for y in list(members):
                for z in (G.mul(x, y), G.mul(y, x), int(G.inv[x])):
                    if z not in members:
                        new.add(z)
        members |= new
        frontier = new
    return frozenset(members)


def upper_central_series(G: InverseSemigroup) -> list[frozenset[int]]:
    """Z_0 = 1, Z_{i+1} = {g : [g, x] in Z_i for all x}, until it stops growing."""
    series = [frozenset({group_identity(G)})]
    while True:
        prev = series[-1]
        nxt = frozenset(g for g in G.elements
                        if all(commutator(G, g, x) in prev for x in G.elements))
        if nxt == prev:
            return series
        series.append(nxt)


def nilpotency_class(G: InverseSemigroup) -> Optional[int]:
    series = upper_central_series(G)
    if len(series[-1]) == G.order:
        return len(series) - 1
    return None


def derived_series(G: InverseSemigroup) -> list[frozenset[int]]:
    series = [frozenset(G.elements)]
    while True:
        H = series[-1]
        nxt = subgroup_generated(G, {commutator(G, g, h) for g in H for h in H})
        if nxt == H:
            return series
        series.append(nxt)


def derived_length(G: InverseSemigroup) -> Optional[int]:
    series = derived_series(G)
    if len(series[-1]) == 1:
        return len(series) - 1
    return None


def is_abelian_group(G: InverseSemigroup) -> bool:
    group_identity(G)
    return all(G.mul(a, b) == G.mul(b, a) for a in G.elements for b in G.elements)
