"""Term condition, centralization, abelian and central congruences, the center.

``tc_check(S, t, alpha, beta)`` tests, for every a alpha b and every
componentwise beta-related tuples u, v,

    t(a, u) = t(a, v)  implies  t(b, u) = t(b, v).

Two engines are used.  The term m(x, y, z) = y x z has a dedicated fast
path (``centralizes`` relies on it).  Every other term goes through a
generic engine that assigns the non-distinguished variables one at a time
and keeps only the distinct tuples of partial products, which is exact
because the condition depends on nothing else.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .config import DEFAULT_ENUM_ORDER, default_budget
from .congruence import (
    enumerate_congruences,
    is_congruence,
    kernel,
    pair_of,
    trace,
    universal_congruence,
)
from .conjugation import ker_phi, ker_psi, metacenter, xi_matrix
from .errors import BudgetExceeded, CharacterizationMismatch, OrderTooLarge
from .normal import is_normal
from .relations import Partition, relation_matrix
from .semigroup import InverseSemigroup, green_h
from .terms import M, Term, single_occurrence_terms


@dataclass(frozen=True)
class TCWitness:
    """A failure of the term condition: t(a,u) = t(a,v) but t(b,u) != t(b,v)."""

    term: Term
    a: int
    b: int
    u: tuple[int, ...]
    v: tuple[int, ...]

    def to_json(self):
        return {"term": self.term.to_json(), "a": self.a, "b": self.b,
                "u": list(self.u), "v": list(self.v)}


def _extended(S):
    """Table and inversion of S with an identity adjoined as element ``order``."""
    n = S.order
    t1 = np.empty((n + 1, n + 1), dtype=np.int64)
    t1[:n, :n] = S.table
    t1[n, :] = np.arange(n + 1)
    t1[:, n] = np.arange(n + 1)
    inv1 = np.append(S.inv, n)
    return t1, inv1


# ---------------------------------------------------------------- m fast path

def _m_witness(S, cls, a, b):
    t = S.table
    n = S.order
    A = t[t[:, a][:, None], np.arange(n)[None, :]]
    B = t[t[:, b][:, None], np.arange(n)[None, :]]
    for u1 in range(n):
        for u2 in range(n):
            mask = ((cls == cls[u1])[:, None] & (cls == cls[u2])[None, :]
                    & (A == A[u1, u2]) & (B != B[u1, u2]))
            hit = np.argwhere(mask)
            if len(hit):
                v1, v2 = hit[0].tolist()
                return TCWitness(M, int(a), int(b), (u1, u2), (v1, v2))
    raise AssertionError("failing pair without a witness")


def _tc_m(S, alpha, beta, budget, want_witness):
    n = S.order
    pairs = alpha.pair_array(strict=True)
    if len(pairs) == 0:
        return None
    if len(pairs) * n * n > budget:
        raise BudgetExceeded(f"TC(m) needs {len(pairs) * n * n} steps, budget {budget}")
    t = S.table
    _, cls = np.unique(beta.labels, return_inverse=True)
    k = int(cls.max()) + 1
    # key of (x, y): beta-class of x, beta-class of y, then x a y
    base = ((cls[:, None] * k + cls[None, :]) * n).ravel()
    ys = np.arange(n)[None, None, :]
    chunk = max(1, 2_000_000 // (n * n))
    for start in range(0, len(pairs), chunk):
        block = pairs[start:start + chunk]
        A = t[t[:, block[:, 0]].T[:, :, None], ys].reshape(len(block), -1)
        B = t[t[:, block[:, 1]].T[:, :, None], ys].reshape(len(block), -1)
        key = base[None, :] + A
        order = np.argsort(key, axis=1, kind="stable")
        ks = np.take_along_axis(key, order, axis=1)
        bs = np.take_along_axis(B, order, axis=1)
        bad = (ks[:, 1:] == ks[:, :-1]) & (bs[:, 1:] != bs[:, :-1])
        rows = np.flatnonzero(bad.any(axis=1))
        if len(rows):
            a, b = block[rows[0]].tolist()
            if want_witness:
                return _m_witness(S, cls, a, b)
            return TCWitness(M, a, b, (), ())
    return None


# ------------------------------------------------------------- generic engine

@dataclass
class _States:
    """Distinct evaluations of a term with its distinguished variable left open.

    ``segs_u[j]``/``segs_v[j]`` hold the product between the j-th and
    (j+1)-th occurrence of x0 (identity-padded); ``x0_exps`` the exponents
    of x0; ``assign`` the least beta-assignment reaching each row.
    """

    segs_u: list
    segs_v: list
    x0_exps: list
    assign: np.ndarray
    variables: list


def _first_occurrences(rows: np.ndarray, radix: int) -> np.ndarray:
    """Sorted indices of the first occurrence of each distinct row."""
    width = rows.shape[1]
    if width * np.log2(radix) < 62:
        codes = np.zeros(len(rows), dtype=np.int64)
        for col in range(width):
            codes = codes * radix + rows[:, col]
        _, first = np.unique(codes, return_index=True)
    else:
        _, first = np.unique(rows, axis=0, return_index=True)
    return np.sort(first)


def _term_states(S, t: Term, beta: Partition, budget) -> _States:
    t1, inv1 = _extended(S)
    ident = S.order
    bp = beta.pair_array()
    p = len(bp)
    # tokens: ("x0", e) | ("var", v, e) | ("seg", col)
    tokens = [("x0", e) if v == 0 else ("var", v, e) for v, e in t.word]
    variables = []
    for v, _ in t.word:
        if v != 0 and v not in variables:
            variables.append(v)
    U = np.zeros((1, 0), dtype=np.int64)
    V = np.zeros((1, 0), dtype=np.int64)
    A = np.zeros((1, 0), dtype=np.int64)
    for var in variables:
        rows = len(U)
        if rows * p > budget:
            raise BudgetExceeded(f"term {t}: {rows * p} partial assignments exceed budget {budget}")
        U = np.repeat(U, p, axis=0)
        V = np.repeat(V, p, axis=0)
        A = np.concatenate([np.repeat(A, p, axis=0), np.tile(bp, (rows, 1))], axis=1)
        pu, pv = A[:, -2], A[:, -1]
        new_tokens = []
        ucols, vcols = [], []
        for tok in tokens:
            if tok[0] == "var" and tok[1] == var:
                e = tok[2]
                cu, cv = (pu, pv) if e == 1 else (inv1[pu], inv1[pv])
                tok = ("seg", (cu, cv))
            elif tok[0] == "seg":
                tok = ("seg", (U[:, tok[1]], V[:, tok[1]]))
            if tok[0] == "seg" and new_tokens and new_tokens[-1][0] == "seg":
                lu, lv = new_tokens[-1][1]
                tok = ("seg", (t1[lu, tok[1][0]], t1[lv, tok[1][1]]))
                new_tokens[-1] = tok
            else:
                new_tokens.append(tok)
        tokens = []
        for tok in new_tokens:
            if tok[0] == "seg":
                ucols.append(tok[1][0])
                vcols.append(tok[1][1])
                tokens.append(("seg", len(ucols) - 1))
            else:
                tokens.append(tok)
        U = np.stack(ucols, axis=1)
        V = np.stack(vcols, axis=1)
        keep = _first_occurrences(np.concatenate([U, V], axis=1), ident + 1)
        U, V, A = U[keep], V[keep], A[keep]
    # normalise to s0 x0 s1 x0 ... sk
    segs_u, segs_v, exps = [], [], []
    rows = len(U)
    pending = None
    for tok in tokens:
        if tok[0] == "seg":
            pending = (U[:, tok[1]], V[:, tok[1]])
        else:
            if pending is None:
                pending = (np.full(rows, ident), np.full(rows, ident))
            segs_u.append(pending[0])
            segs_v.append(pending[1])
            exps.append(tok[1])
            pending = None
    if pending is None:
        pending = (np.full(rows, ident), np.full(rows, ident))
    segs_u.append(pending[0])
    segs_v.append(pending[1])
    return _States(segs_u, segs_v, exps, A, variables)


def _eval_states(t1, segs, exps, x):
    out = segs[0]
    for e, s in zip(exps, segs[1:]):
        out = t1[t1[out, x[e]], s]
    return out


def _tc_generic(S, t: Term, alpha, beta, budget, states=None):
    pairs = alpha.pair_array(strict=True)
    if len(pairs) == 0 or t.occurrences(0) == 0:
        return None
    if states is None:
        states = _term_states(S, t, beta, budget)
    if len(states.assign) * S.order > budget:
        raise BudgetExceeded(f"term {t}: check exceeds budget {budget}")
    t1, inv1 = _extended(S)
    eq = {}
    for x in sorted(set(pairs.ravel().tolist())):
        signed = {1: x, -1: int(inv1[x])}
        eq[x] = (_eval_states(t1, states.segs_u, states.x0_exps, signed)
                 == _eval_states(t1, states.segs_v, states.x0_exps, signed))
    for a, b in pairs.tolist():
        bad = np.flatnonzero(eq[a] & ~eq[b])
        if len(bad):
            row = states.assign[bad[0]]
            assigned = {v: (int(row[2 * k]), int(row[2 * k + 1]))
                        for k, v in enumerate(states.variables)}
            u = tuple(assigned.get(i, (0, 0))[0] for i in range(1, t.arity))
            v = tuple(assigned.get(i, (0, 0))[1] for i in range(1, t.arity))
            return TCWitness(t, a, b, u, v)
    return None


def tc_witness(S: InverseSemigroup, t: Term, alpha: Partition, beta: Partition,
               budget=None) -> Optional[TCWitness]:
    """Lexicographically least failure of TC(t, alpha, beta), or None if it holds."""
    budget = default_budget() if budget is None else budget
    if t == M:
        return _tc_m(S, alpha, beta, budget, want_witness=True)
    return _tc_generic(S, t, alpha, beta, budget)


def tc_check(S: InverseSemigroup, t: Term, alpha: Partition, beta: Partition, budget=None) -> bool:
    budget = default_budget() if budget is None else budget
    if t == M:
        return _tc_m(S, alpha, beta, budget, want_witness=False) is None
    return _tc_generic(S, t, alpha, beta, budget) is None


def centralizes(S: InverseSemigroup, alpha: Partition, beta: Partition, budget=None) -> bool:
    """alpha centralizes beta, decided by the single term m(x, y, z) = y x z."""
    return tc_check(S, M, alpha, beta, budget)


# ---------------------------------------------------------- brute-force oracle

def _sign_normal_form(t: Term):
    """Flip each variable other than x0 so its first occurrence is positive.

    Substituting x_i -> x_i⁻¹ permutes beta-related tuples, so the reachable
    states are unchanged; returns the normalised word and the flipped set.
    """
    flip = set()
    seen = set()
    word = []
    for v, e in t.word:
        if v != 0 and v not in seen:
            seen.add(v)
            if e == -1:
                flip.add(v)
        if v == 0:
            word.append((0, 1))
        else:
            word.append((v, -e if v in flip else e))
    return Term(t.arity, tuple(word)), frozenset(flip)


@lru_cache(maxsize=8192)
def _cached_states(S, key: Term, beta: Partition, budget):
    return _term_states(S, key, beta, budget)


@lru_cache(maxsize=1024)
def _union_states(S, beta: Partition, max_word_length, budget):
    """All (left, right) segment values over every single-occurrence term, deduplicated."""
    keys = {_sign_normal_form(t)[0] for t in single_occurrence_terms(max_word_length)}
    blocks = []
    for key in sorted(keys, key=lambda k: (len(k), k.word)):
        st = _cached_states(S, key, beta, budget)
        blocks.append(np.stack(st.segs_u + st.segs_v, axis=1))
    allq = np.concatenate(blocks, axis=0)
    quads = allq[_first_occurrences(allq, S.order + 1)]
    return _States([quads[:, 0], quads[:, 1]], [quads[:, 2], quads[:, 3]], [1],
                   np.zeros((len(quads), 0), dtype=np.int64), [])


def bruteforce_witness(S: InverseSemigroup, alpha: Partition, beta: Partition,
                       max_word_length=5, budget=None) -> Optional[TCWitness]:
    """Check TC(t, alpha, beta) for every term with a single occurrence of x0.

    The condition is universally quantified over the reachable segment
    values, so the conjunction over all terms is first decided on the union
    of those values; only when it fails are the terms walked in order of
    length to return the first failing one with its witness.
    """
    if max_word_length < 3:
        raise ValueError("max_word_length must be at least 3")
    budget = default_budget() if budget is None else budget
    if len(alpha.pair_array(strict=True)) == 0:
        return None
    union = _union_states(S, beta, max_word_length, budget)
    probe = Term(1, ((0, 1),))
    failing = False
    for e in (1, -1):
        states = _States(union.segs_u, union.segs_v, [e], union.assign, [])
        if _tc_generic(S, Term(1, ((0, e),)) if e == -1 else probe, alpha, beta, budget,
                       states=states) is not None:
            failing = True
    if not failing:
        return None
    for t in single_occurrence_terms(max_word_length):
        key, flip = _sign_normal_form(t)
        states = _cached_states(S, key, beta, budget)
        states = _States(states.segs_u, states.segs_v,
                         [e for v, e in t.word if v == 0], states.assign, states.variables)
        w = _tc_generic(S, t, alpha, beta, budget, states=states)
        if w is not None:
            inv = S.inv
            u = tuple(int(inv[x]) if i + 1 in flip else x for i, x in enumerate(w.u))
            v = tuple(int(inv[x]) if i + 1 in flip else x for i, x in enumerate(w.v))
            return TCWitness(t, w.a, w.b, u, v)
    raise AssertionError("union of terms fails but no single term does")


def centralizes_bruteforce(S: InverseSemigroup, alpha: Partition, beta: Partition,
                           max_word_length=5, budget=None) -> bool:
    return bruteforce_witness(S, alpha, beta, max_word_length, budget) is None


# ------------------------------------------------------- abelian and central

def is_abelian_congruence(S: InverseSemigroup, alpha: Partition, budget=None) -> bool:
    """alpha centralizes alpha; cross-checked against the congruence-pair criterion."""
    by_tc = centralizes(S, alpha, alpha, budget)
    N = kernel(S, alpha)
    if not is_normal(S, N):
        raise CharacterizationMismatch("kernel of a congruence is not normal")
    commutative = all(S.mul(a, b) == S.mul(b, a) for a in N for b in N)
    by_pair = trace(S, alpha).is_identity() and commutative
    if by_tc != by_pair:
        raise CharacterizationMismatch(
            f"abelian by term condition = {by_tc}, by congruence pair = {by_pair}",
            witness=alpha.to_json())
    return by_tc


def is_central_congruence(S: InverseSemigroup, alpha: Partition, budget=None) -> bool:
    """alpha centralizes 1_S; cross-checked against trace 0 and kernel within Z(S)."""
    by_tc = centralizes(S, alpha, universal_congruence(S), budget)
    by_pair = trace(S, alpha).is_identity() and kernel(S, alpha) <= metacenter(S)
    if by_tc != by_pair:
        raise CharacterizationMismatch(
            f"central by term condition = {by_tc}, by congruence pair = {by_pair}",
            witness=alpha.to_json())
    return by_tc


def h_cap_xi(S: InverseSemigroup) -> Partition:
    """H ∩ {(a, b) : a x b = b x a for all x}, returned as a partition."""
    rel = relation_matrix(green_h(S)) & xi_matrix(S)
    alpha = Partition.from_labels(range(S.order), np.argmax(rel, axis=1))
    if not np.array_equal(relation_matrix(alpha), rel):
        raise CharacterizationMismatch("H ∩ xi is not an equivalence relation")
    return alpha


@dataclass
class CenterReport:
    """The center congruence computed along four routes."""

    largest_central: Optional[Partition]
    ker_psi: Partition
    ker_phi: Partition
    h_cap_xi: Partition
    notes: list = field(default_factory=list)

    @property
    def value(self) -> Partition:
        return self.ker_psi


def center_report(S: InverseSemigroup, max_order=DEFAULT_ENUM_ORDER, budget=None) -> CenterReport:
    kp = ker_psi(S)
    kf = ker_phi(S)
    hx = h_cap_xi(S)
    notes = []
    largest = None
    try:
        congs = enumerate_congruences(S, max_order=max_order)
    except OrderTooLarge as exc:
        notes.append(f"largest central congruence skipped: {exc}")
    else:
        central = [c for c in congs if is_central_congruence(S, c, budget)]
        tops = [c for c in central if all(d <= c for d in central)]
        if len(tops) != 1:
            raise CharacterizationMismatch("central congruences have no largest element")
        largest = tops[0]
    routes = {"ker_psi": kp, "ker_phi": kf, "h_cap_xi": hx}
    if largest is not None:
        routes["largest_central"] = largest
    if len(set(routes.values())) != 1:
        raise CharacterizationMismatch(
            "center routes disagree", witness={k: v.to_json() for k, v in routes.items()})
    if not is_congruence(S, kp):
        raise CharacterizationMismatch("center is not a congruence")
    pair = pair_of(S, kp)
    if pair.kernel != metacenter(S) or not pair.trace.is_identity():
        raise CharacterizationMismatch("congruence pair of the center is not (Z(S), 0)")
    return CenterReport(largest, kp, kf, hx, notes)


def center_congruence(S: InverseSemigroup, max_order=DEFAULT_ENUM_ORDER, budget=None) -> Partition:
    return center_report(S, max_order, budget).value
