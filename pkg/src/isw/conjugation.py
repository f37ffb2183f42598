"""Conjugation by an element relative to a normal inverse subsemigroup N.

For g in S there are two maps: the total map psi_g(a) = g a g⁻¹ on N, and
the partial automorphism phi_g of N from g⁻¹Ng onto gNg⁻¹.  Their kernels
coincide; with N = S the common kernel is the center congruence.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .congruence import congruence_violation
from .errors import TheoremMismatch
from .normal import enumerate_normal_subsemigroups, is_normal, normal_closure, normal_violation  # noqa: F401
from .relations import Partition, Tolerance
from .semigroup import InverseSemigroup


def _members(S, N):
    if N is None:
        return np.arange(S.order)
    return np.asarray(sorted(N), dtype=np.int64)


def conjugation_matrix(S: InverseSemigroup, N=None) -> np.ndarray:
    """Row g holds g a g⁻¹ for a running over sorted N."""
    t = S.table
    mem = _members(S, N)
    g = np.arange(S.order)[:, None]
    return t[t[g, mem[None, :]], S.inv[g]]


def conjugate_set(S: InverseSemigroup, N, g: int) -> frozenset[int]:
    """gNg⁻¹."""
    mem = _members(S, N)
    return frozenset(int(x) for x in S.table[S.table[g, mem], S.inv[g]])


def psi(S: InverseSemigroup, N, g: int) -> dict[int, int]:
    """Total map a -> g a g⁻¹ on N."""
    mem = _members(S, N)
    row = S.table[S.table[g, mem], S.inv[g]]
    return dict(zip(mem.tolist(), row.tolist()))


@dataclass(frozen=True)
class PartialAutomorphism:
    """Partial map between subsets of S; equality is equality in IS(S)."""

    mapping: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted(d.items())))

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.mapping)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(b for _, b in self.mapping)

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def __call__(self, a):
        return self.as_dict()[a]

    def compose(self, first: "PartialAutomorphism") -> "PartialAutomorphism":
        """self ∘ first: apply ``first``, then ``self``, where defined."""
        mine = self.as_dict()
        return PartialAutomorphism.from_dict(
            {a: mine[b] for a, b in first.mapping if b in mine}
        )


def _is_inverse_subsemigroup(S, X):
    mem = np.asarray(sorted(X), dtype=np.int64)
    mask = np.zeros(S.order, dtype=bool)
    mask[mem] = True
    return bool(mask[S.table[np.ix_(mem, mem)]].all() and mask[S.inv[mem]].all())


def partial_automorphism_violation(S: InverseSemigroup, f: PartialAutomorphism):
    """Reason f is not an isomorphism between inverse subsemigroups, or None."""
    d = f.as_dict()
    if len(f.image) != len(d):
        return "not injective"
    if not _is_inverse_subsemigroup(S, f.domain):
        return "domain is not an inverse subsemigroup"
    if not _is_inverse_subsemigroup(S, f.image):
        return "image is not an inverse subsemigroup"
    for a in d:
        if d[int(S.inv[a])] != int(S.inv[d[a]]):
            return f"inversion not preserved at {a}"
        for b in d:
            if d[S.mul(a, b)] != S.mul(d[a], d[b]):
                return f"product not preserved at ({a},{b})"
    return None


def phi(S: InverseSemigroup, N, g: int) -> PartialAutomorphism:
    """x -> g x g⁻¹ restricted to g⁻¹Ng."""
    gi = int(S.inv[g])
    domain = conjugate_set(S, N, gi)
    f = PartialAutomorphism.from_dict({x: S.mul(g, x, gi) for x in domain})
    if f.image != conjugate_set(S, N, g):
        raise TheoremMismatch(f"phi_{g} does not map onto gNg⁻¹")
    reason = partial_automorphism_violation(S, f)
    if reason is not None:
        raise TheoremMismatch(f"phi_{g} is not a partial automorphism: {reason}")
    return f


def ker_psi(S: InverseSemigroup, N=None) -> Partition:
    """Pairs (g, h) with g a g⁻¹ = h a h⁻¹ for all a in N."""
    rows = conjugation_matrix(S, N)
    alpha = Partition.from_labels(range(S.order), rows)
    if congruence_violation(S, alpha) is not None:
        raise TheoremMismatch("ker(psi) is not a congruence")
    return alpha


def ker_phi(S: InverseSemigroup, N=None) -> Partition:
    """Pairs (g, h) with phi_g = phi_h, domains included."""
    if N is None:
        N = frozenset(S.elements)
    maps = [phi(S, N, g) for g in S.elements]
    alpha = Partition.from_labels(range(S.order), maps)
    if congruence_violation(S, alpha) is not None:
        raise TheoremMismatch("ker(phi) is not a congruence")
    return alpha


def z_of(S: InverseSemigroup, N=None) -> frozenset[int]:
    """{g : g g⁻¹ a g = g a g⁻¹ g for all a in N}."""
    t = S.table
    mem = _members(S, N)
    g = np.arange(S.order)[:, None]
    gi = S.inv[g]
    left = t[t[S.range_idempotent[g], mem[None, :]], g]
    right = t[t[t[g, mem[None, :]], gi], g]
    return frozenset(int(x) for x in np.flatnonzero(np.all(left == right, axis=1)))


def metacenter(S: InverseSemigroup) -> frozenset[int]:
    """Z(S) = {a : a x a⁻¹ a = a a⁻¹ x a for all x}."""
    return z_of(S, None)


def xi_matrix(S: InverseSemigroup) -> np.ndarray:
    """xi[a, b] iff a x b = b x a for every x."""
    t = S.table
    # axb indexed [a, x, b]
    axb = t[t[:, :, None], np.arange(S.order)[None, None, :]]
    bxa = axb.transpose(2, 1, 0)
    return np.all(axb == bxa, axis=1)


def xi_relation(S: InverseSemigroup) -> Tolerance:
    return Tolerance.from_matrix(xi_matrix(S))
