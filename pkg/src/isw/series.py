"""Upper central series, nilpotence and solvability, kernel series, Mal'cev tolerances."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import groups
from .centrality import center_congruence, is_abelian_congruence
from .config import DEFAULT_ENUM_ORDER, DEFAULT_MALCEV_LEVEL, default_budget
from .congruence import (
    enumerate_congruences,
    identity_congruence,
    image_congruence,
    kernel,
    preimage,
    quotient,
)
from .errors import BudgetExceeded, LevelTooLarge, TheoremMismatch
from .relations import Partition, Tolerance, relation_matrix
from .semigroup import InverseSemigroup, green_h, is_group
from .terms import Term


@dataclass(frozen=True)
class CentralSeries:
    """zeta_0 <= zeta_1 <= ... up to the first repeat; later terms equal the last."""

    congruences: tuple[Partition, ...]

    def __getitem__(self, i: int) -> Partition:
        return self.congruences[min(i, len(self.congruences) - 1)]

    def __len__(self):
        return len(self.congruences)

    @property
    def top(self) -> Partition:
        return self.congruences[-1]

    def to_json(self):
        return [c.to_json() for c in self.congruences]


def upper_central_series(S: InverseSemigroup, max_order=DEFAULT_ENUM_ORDER) -> CentralSeries:
    """zeta_{i+1} is the preimage of the center of S/zeta_i; stops at the first repeat."""
    chain = [identity_congruence(S)]
    while True:
        Q, proj = quotient(S, chain[-1])
        nxt = preimage(proj, center_congruence(Q, max_order=max_order))
        if nxt == chain[-1]:
            return CentralSeries(tuple(chain))
        if not chain[-1] <= nxt:
            raise TheoremMismatch("upper central series is not ascending")
        chain.append(nxt)


def is_nilpotent(S: InverseSemigroup, max_order=DEFAULT_ENUM_ORDER):
    """(nilpotent?, class); cross-checked against classical nilpotence of groups."""
    series = upper_central_series(S, max_order)
    ok = series.top.is_universal()
    klass = len(series) - 1 if ok else None
    expected = groups.nilpotency_class(S) if is_group(S) else None
    if klass != expected:
        raise TheoremMismatch(
            f"{S!r}: universal-algebra nilpotency class {klass}, group-theoretic {expected}")
    return ok, klass


def is_solvable(S: InverseSemigroup, max_order=DEFAULT_ENUM_ORDER):
    """(solvable?, length) by breadth-first search over the congruence lattice.

    There is an edge alpha -> alpha' when alpha < alpha' and alpha'/alpha is
    abelian in S/alpha; the length is the shortest path from 0_S to 1_S.
    """
    congs = enumerate_congruences(S, max_order=max_order)
    start = identity_congruence(S)
    dist = {start: 0}
    queue = deque([start])
    length = None
    while queue:
        alpha = queue.popleft()
        if alpha.is_universal():
            length = dist[alpha]
            break
        Q, proj = quotient(S, alpha)
        for beta in congs:
            if beta in dist or not alpha < beta:
                continue
            if is_abelian_congruence(Q, image_congruence(S, alpha, proj, beta)):
                dist[beta] = dist[alpha] + 1
                queue.append(beta)
    expected = groups.derived_length(S) if is_group(S) else None
    if length != expected:
        raise TheoremMismatch(
            f"{S!r}: universal-algebra solvability length {length}, derived length {expected}")
    return length is not None, length


@dataclass(frozen=True)
class KernelSeries:
    kernels: tuple[frozenset, ...]
    klass: Optional[int]

    @property
    def nilpotent(self) -> bool:
        return self.klass is not None


def kmm_kernel_series(S: InverseSemigroup, max_order=DEFAULT_ENUM_ORDER) -> KernelSeries:
    """Z_n(S) = kernel of zeta_n(S); class is the least n with Z_n(S) = S."""
    series = upper_central_series(S, max_order)
    kernels = tuple(kernel(S, c) for c in series.congruences)
    klass = next((i for i, k in enumerate(kernels) if len(k) == S.order), None)
    return KernelSeries(kernels, klass)


@dataclass(frozen=True)
class MalcevWord:
    """lambda_n and rho_n over a = x0, b = x1, z_i = x_{i+2}."""

    level: int
    lam: Term
    rho: Term


def malcev_words(n: int, max_level=DEFAULT_MALCEV_LEVEL) -> MalcevWord:
    if n < 0 or n > max_level:
        raise LevelTooLarge(f"level {n} outside 0..{max_level}")
    arity = n + 2
    lam, rho = ((0, 1),), ((1, 1),)
    for k in range(n):
        z = ((k + 2, 1),)
        lam, rho = lam + z + rho, rho + z + lam
    return MalcevWord(n, Term(arity, lam), Term(arity, rho))


def malcev_matrix(S: InverseSemigroup, n: int, budget=None) -> np.ndarray:
    """mu_n as a boolean matrix: lambda_n = rho_n for every z_0 .. z_{n-1}."""
    budget = default_budget() if budget is None else budget
    size = S.order
    if size ** (n + 2) > budget:
        raise BudgetExceeded(f"mu_{n} needs {size ** (n + 2)} evaluations, budget {budget}")
    t = S.table.astype(np.int32)
    out = np.zeros((size, size), dtype=bool)
    bs = np.arange(size, dtype=np.int32)
    step = max(1, 4_000_000 // max(1, size ** n))
    for a in range(size):
        for b0 in range(0, size, step):
            b = bs[b0:b0 + step]
            lam = np.full(len(b), a, dtype=np.int32)
            rho = b.copy()
            for _ in range(n):
                z = bs.reshape((1,) * lam.ndim + (size,))
                lam, rho = t[t[lam[..., None], z], rho[..., None]], t[t[rho[..., None], z], lam[..., None]]
            out[a, b0:b0 + len(b)] = (lam == rho).reshape(len(b), -1).all(axis=1)
    return out


def tolerance_violation(S: InverseSemigroup, tol: Tolerance):
    """First failure of reflexivity, symmetry or compatibility, or None."""
    m = tol.matrix
    bad = np.flatnonzero(~np.diag(m))
    if len(bad):
        return {"kind": "not_reflexive", "element": int(bad[0])}
    bad = np.argwhere(m != m.T)
    if len(bad):
        return {"kind": "not_symmetric", "pair": bad[0].tolist()}
    a, b = np.nonzero(m)
    if not m[S.inv[a], S.inv[b]].all():
        k = int(np.flatnonzero(~m[S.inv[a], S.inv[b]])[0])
        return {"kind": "not_inverse_closed", "pair": [int(a[k]), int(b[k])]}
    t = S.table
    for k in range(len(a)):
        ok = m[t[a[k], a], t[b[k], b]]
        if not ok.all():
            j = int(np.flatnonzero(~ok)[0])
            return {"kind": "not_compatible", "pairs": [[int(a[k]), int(b[k])], [int(a[j]), int(b[j])]]}
    return None


def malcev_relation(S: InverseSemigroup, n: int, budget=None) -> Tolerance:
    """mu_n without checking the tolerance axioms."""
    return Tolerance.from_matrix(malcev_matrix(S, n, budget))


def malcev_tolerance(S: InverseSemigroup, n: int, budget=None) -> Tolerance:
    """mu_n, raising TheoremMismatch unless it is reflexive, symmetric and compatible.

    Compatibility does fail in small cases (mu_2 on IS(2)); use
    :func:`malcev_relation` where the axioms are not needed.
    """
    tol = malcev_relation(S, n, budget)
    v = tolerance_violation(S, tol)
    if v is not None:
        raise TheoremMismatch(f"mu_{n} is not a tolerance: {v}", witness=v)
    return tol


def is_malcev_nilpotent(S: InverseSemigroup, n: int, budget=None) -> bool:
    """Whether lambda_n = rho_n is an identity of S."""
    return bool(malcev_matrix(S, n, budget).all())


def malcev_class(S: InverseSemigroup, max_level=DEFAULT_MALCEV_LEVEL, budget=None) -> Optional[int]:
    """Least n <= max_level with mu_n universal, or None.

    Raises BudgetExceeded if a level that still has to be examined does not
    fit the budget.
    """
    for n in range(max_level + 1):
        if is_malcev_nilpotent(S, n, budget):
            return n
    return None


@dataclass(frozen=True)
class ConjectureResult:
    """Comparison of zeta_n(S) with H ∩ mu_n."""

    n: int
    holds: bool
    lhs: Partition
    rhs: Tolerance
    witness: Optional[dict]

    def to_json(self):
        return {"n": self.n, "holds": self.holds, "zeta_n": self.lhs.to_json(),
                "h_cap_mu_n": self.rhs.to_json(), "witness": self.witness}


def conjecture_check(S: InverseSemigroup, n: int, budget=None, series=None,
                     max_order=DEFAULT_ENUM_ORDER) -> ConjectureResult:
    """Does zeta_n(S) = H ∩ mu_n?  Known to hold for n <= 2; open beyond."""
    if series is None:
        series = upper_central_series(S, max_order)
    lhs = series[n]
    rhs = malcev_relation(S, n, budget).intersect(green_h(S))
    left = relation_matrix(lhs)
    diff = np.argwhere(left != rhs.matrix)
    witness = None
    if len(diff):
        a, b = diff[0].tolist()
        witness = {"pair": [a, b], "in_zeta_n": bool(left[a, b]), "in_h_cap_mu_n": bool(rhs.matrix[a, b])}
    result = ConjectureResult(n, witness is None, lhs, rhs, witness)
    if n <= 1 and not result.holds:
        raise TheoremMismatch(f"zeta_{n} != H ∩ mu_{n} on {S!r}", witness=witness)
    return result
