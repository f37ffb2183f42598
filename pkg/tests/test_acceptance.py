"""Acceptance criteria 1-10, one test per criterion (7 is split in three).

Each test records PASS/FAIL in conftest.ACCEPTANCE; the terminal summary
prints one line per criterion.
"""
import json
from itertools import product

import numpy as np
import pytest

from conftest import record
from isw import groups
from isw.centrality import M, _tc_generic, center_report, centralizes, centralizes_bruteforce
from isw.config import DEFAULT_BUDGET
from isw.congruence import (
    congruence_from_pair,
    enumerate_congruence_pairs,
    enumerate_congruences,
    identity_congruence,
    is_idempotent_separating,
    kernel,
    pair_of,
    trace,
    universal_congruence,
)
from isw.conjugation import enumerate_normal_subsemigroups, ker_phi, ker_psi, metacenter, z_of
from isw.relations import Partition, relation_matrix
from isw.semigroup import (
    classical_center,
    green_h,
    is_clifford,
    is_commutative,
    is_group,
    is_semilattice,
    subsemigroup_table,
)
from isw.series import (
    conjecture_check,
    is_malcev_nilpotent,
    is_nilpotent,
    is_solvable,
    kmm_kernel_series,
    malcev_class,
    malcev_relation,
    tolerance_violation,
    upper_central_series,
)


def _check(criterion, failures, note_ok=""):
    record(criterion, not failures, note_ok if not failures else f"{len(failures)} failures, first: {failures[0]}")
    assert not failures, failures[:5]


def test_c1_congruence_pair_bijection(corpus):
    failures = []
    for name, S in corpus.items():
        for alpha in enumerate_congruences(S):
            back = congruence_from_pair(S, kernel(S, alpha), trace(S, alpha))
            if back != alpha:
                failures.append((name, alpha))
        for p in enumerate_congruence_pairs(S):
            if pair_of(S, congruence_from_pair(S, p.kernel, p.trace)) != p:
                failures.append((name, p))
        if len(enumerate_congruence_pairs(S)) != len(enumerate_congruences(S)):
            failures.append((name, "pair count differs from congruence count"))
    _check("1", failures)


def test_c2_kernels_of_psi_and_phi(corpus):
    failures = []
    checked = 0
    for name, S in corpus.items():
        for N in enumerate_normal_subsemigroups(S):
            kp, kf = ker_psi(S, N), ker_phi(S, N)
            checked += 1
            if kp != kf:
                failures.append((name, sorted(N), "ker psi != ker phi"))
            if not is_idempotent_separating(S, kp):
                failures.append((name, sorted(N), "not idempotent-separating"))
            p = pair_of(S, kp)
            if p.kernel != z_of(S, N) or not p.trace.is_identity():
                failures.append((name, sorted(N), "pair is not (Z_S(N), 0)"))
    _check("2", failures, f"{checked} normal subsemigroups")


def test_c3_abelian_and_central_characterizations(corpus):
    failures = []
    checked = 0
    for name, S in corpus.items():
        Z = metacenter(S)
        one = universal_congruence(S)
        for alpha in enumerate_congruences(S):
            N = kernel(S, alpha)
            sep = trace(S, alpha).is_identity()
            abelian_tc = _tc_generic(S, M, alpha, alpha, DEFAULT_BUDGET) is None
            abelian_pair = sep and is_commutative(subsemigroup_table(S, N)[0])
            central_tc = _tc_generic(S, M, alpha, one, DEFAULT_BUDGET) is None
            central_pair = sep and N <= Z
            checked += 1
            if abelian_tc != abelian_pair:
                failures.append((name, alpha, "abelian", abelian_tc, abelian_pair))
            if central_tc != central_pair:
                failures.append((name, alpha, "central", central_tc, central_pair))
    _check("3", failures, f"{checked} congruences")


def _group_center_relation(G):
    C = classical_center(G)
    return Partition.from_pairs(G.elements, [(a, b) for a in G.elements for b in G.elements
                                             if G.mul(a, int(G.inv[b])) in C])


def test_c4_center_four_routes(corpus):
    failures = []
    for name, S in corpus.items():
        rep = center_report(S)
        routes = [rep.largest_central, rep.ker_psi, rep.ker_phi, rep.h_cap_xi]
        if any(r is None for r in routes) or len(set(routes)) != 1:
            failures.append((name, "routes disagree"))
            continue
        zeta = rep.value
        p = pair_of(S, zeta)
        if p.kernel != metacenter(S) or not p.trace.is_identity():
            failures.append((name, "pair is not (Z(S), 0)"))
        if is_semilattice(S) and zeta != identity_congruence(S):
            failures.append((name, "semilattice center not 0"))
        if is_group(S) and zeta != _group_center_relation(S):
            failures.append((name, "group center differs from classical center relation"))
    if center_report(corpus["IS2"]).value != identity_congruence(corpus["IS2"]):
        failures.append(("IS2", "center not 0"))
    _check("4", failures)


def test_c5_just_m_differential(corpus):
    failures = []
    checked = 0
    for name, S in corpus.items():
        if S.order > 10:
            continue
        congs = enumerate_congruences(S)
        for alpha, beta in product(congs, congs):
            fast = centralizes(S, alpha, beta)
            slow = centralizes_bruteforce(S, alpha, beta, max_word_length=5)
            checked += 1
            if fast != slow:
                failures.append((name, alpha, beta, fast, slow))
    _check("5", failures, f"{checked} (alpha, beta) pairs, word length <= 5")


def test_c6_nilpotent_solvable_are_groups(corpus):
    failures = []
    for name, S in corpus.items():
        nil, klass = is_nilpotent(S)
        solv, length = is_solvable(S)
        g = is_group(S)
        if nil != (g and groups.nilpotency_class(S) is not None):
            failures.append((name, "nilpotent"))
        if solv != (g and groups.derived_length(S) is not None):
            failures.append((name, "solvable"))
        if not g and S.order >= 2 and (nil or solv):
            failures.append((name, "non-group reported nilpotent or solvable"))
    expect = {"S3": ("solvable", 2), "D4": ("nilpotent", 2), "Q8": ("nilpotent", 2),
              "Z4": ("nilpotent", 1)}
    for name, (what, value) in expect.items():
        got = (is_solvable if what == "solvable" else is_nilpotent)(corpus[name])
        if got != (True, value):
            failures.append((name, what, got))
    for name in ("B2", "IS2", "IS3", "chain2", "chain3", "chain4"):
        S = corpus[name]
        if is_nilpotent(S)[0] or is_solvable(S)[0]:
            failures.append((name, "should be neither"))
    _check("6", failures)


def test_c7a_brandt_malcev_class_two(corpus):
    B2 = corpus["B2"]
    ok = (not is_malcev_nilpotent(B2, 1)) and is_malcev_nilpotent(B2, 2) and malcev_class(B2) == 2
    record("7a", ok, "B(1,2): fails level 1, passes level 2")
    assert ok


def _tolerance_failures(corpus, max_n=3):
    failures = []
    for name, S in corpus.items():
        for n in range(max_n + 1):
            if S.order ** (n + 2) > DEFAULT_BUDGET:
                continue
            v = tolerance_violation(S, malcev_relation(S, n))
            if v is not None:
                failures.append((name, n, v))
    return failures


@pytest.mark.xfail(strict=True, reason="mu_2 on IS(2) and IS(3) is not closed under products; "
                                       "see the README section on Mal'cev relations")
def test_c7b_malcev_relations_are_tolerances(corpus):
    failures = _tolerance_failures(corpus)
    record("7b", not failures,
           "mu_n not compatible: " + ", ".join(sorted({f"{f[0]} n={f[1]}" for f in failures}))
           if failures else "")
    assert not failures, failures


def test_c7b_known_counterexample_is_exactly_this(corpus):
    """Pins the set of tolerance failures so any change to it is noticed."""
    failures = {(f[0], f[1]) for f in _tolerance_failures(corpus)}
    assert failures == {("IS2", 2), ("IS2", 3), ("IS3", 2), ("IS3", 3)}


def test_c7c_commutative_malcev_class_at_most_one(corpus):
    bad = [name for name, S in corpus.items() if is_commutative(S) and malcev_class(S) > 1]
    record("7c", not bad, "commutative members have Mal'cev class <= 1")
    assert not bad


def test_c8_open_problem_regression(corpus, tmp_path_factory):
    failures = []
    level3 = {}
    for name, S in corpus.items():
        series = upper_central_series(S)
        for n in (0, 1, 2):
            r = conjecture_check(S, n, series=series)
            if not r.holds:
                failures.append((name, n, r.witness))
        # level 3: only required to finish inside the budget; verdict is reported
        level3[name] = conjecture_check(S, 3, series=series).to_json()
    out = tmp_path_factory.mktemp("conjecture") / "level3.json"
    out.write_text(json.dumps(level3, sort_keys=True, indent=1))
    held = sum(v["holds"] for v in level3.values())
    _check("8", failures, f"n=0,1,2 hold everywhere; n=3 report: {held}/{len(level3)} hold")


def _component_groups(S):
    H = green_h(S)
    return [subsemigroup_table(S, H.block_of(e))[0] for e in S.idempotents]


def test_c9_clifford_center_and_kmm_class(corpus):
    failures = []
    non_clifford_gap = False
    for name, S in corpus.items():
        Z, C = metacenter(S), classical_center(S)
        if is_clifford(S) and Z != C:
            failures.append((name, "Clifford but Z != C"))
        if not is_clifford(S) and Z != C:
            non_clifford_gap = True
        if not is_clifford(S):
            continue
        klass = kmm_kernel_series(S).klass
        if is_semilattice(S):
            expected = 0
        elif is_commutative(S):
            expected = 1
        else:
            expected = max(groups.nilpotency_class(G) or 10**9 for G in _component_groups(S))
            expected = None if expected == 10**9 else expected
        if klass != expected:
            failures.append((name, "KMM class", klass, expected))
    B2 = corpus["B2"]
    if not (classical_center(B2) == {0} and metacenter(B2) == set(B2.idempotents)):
        failures.append(("B2", "expected C = {0} strictly inside Z = E"))
    if not non_clifford_gap:
        failures.append(("no non-Clifford member with Z != C",))
    spots = {"chain3": 0, "clifford_z2_z2": 1, "clifford_d4_z2": 2}
    for name, k in spots.items():
        if kmm_kernel_series(corpus[name]).klass != k:
            failures.append((name, "spot KMM class", k))
    _check("9", failures)


def test_c10_e_kernel_does_not_give_h_cap_xi(corpus):
    """With N = E(S) the kernel of Psi_N can be everything while xi_N is not."""
    found = None
    for name, S in corpus.items():
        if is_commutative(S):
            continue
        E = frozenset(S.idempotents)
        zeta_E = relation_matrix(ker_psi(S, E))
        idx = np.array(sorted(E))
        t = S.table
        # xi_N: a x b = b x a for every x in N
        xi_E = np.all(t[t[:, idx][:, None, :], np.arange(S.order)[None, :, None]]
                      == t[t[:, idx][None, :, :], np.arange(S.order)[:, None, None]], axis=2)
        h = relation_matrix(green_h(S))
        for g, k in zip(*np.nonzero(zeta_E & h & ~xi_E)):
            g, k = int(g), int(k)
            if S.mul(g, k) != S.mul(k, g):
                found = (name, g, k, ker_psi(S, E).is_universal())
                break
        if found and found[3]:
            break
    ok = found is not None and found[3]
    record("10", ok, f"{found[0]}: g={found[1]}, h={found[2]}, gh != hg, zeta_E = S x S"
           if ok else "no witness")
    assert ok
