import numpy as np
import pytest

from isw import groups
from isw.congruence import identity_congruence
from isw.constructors import (
    brandt,
    chain,
    cyclic_group,
    dihedral_group_d4,
    quaternion_group,
    symmetric_group_s3,
    symmetric_inverse_monoid,
    trivial,
)
from isw.corpus import clifford_d4_z2, clifford_z2_z2
from isw.errors import BudgetExceeded, LevelTooLarge, TheoremMismatch
from isw.relations import relation_matrix
from isw.semigroup import classical_center, green_h, is_clifford, is_semilattice
from isw.series import (
    conjecture_check,
    is_malcev_nilpotent,
    is_nilpotent,
    is_solvable,
    kmm_kernel_series,
    malcev_class,
    malcev_matrix,
    malcev_relation,
    malcev_tolerance,
    malcev_words,
    tolerance_violation,
    upper_central_series,
)
from isw.terms import Term, eval_term


def test_upper_central_series_examples():
    s = upper_central_series(chain(3))
    assert len(s) == 1 and s[0].is_identity() and s[5].is_identity()
    for G in (dihedral_group_d4(), quaternion_group()):
        s = upper_central_series(G)
        assert len(s) == 3 and s.top.is_universal()
        assert s[0] < s[1] < s[2]
    B = brandt(trivial(), 2)
    s = upper_central_series(B)
    assert all(s[i] == identity_congruence(B) for i in range(4))


def test_nilpotent_and_solvable():
    assert is_nilpotent(cyclic_group(4)) == (True, 1)
    assert is_nilpotent(brandt(trivial(), 2)) == (False, None)
    assert is_nilpotent(chain(2)) == (False, None)
    assert is_solvable(symmetric_group_s3()) == (True, 2)
    assert is_solvable(cyclic_group(4)) == (True, 1)
    assert is_solvable(symmetric_inverse_monoid(2)) == (False, None)
    assert is_nilpotent(symmetric_group_s3()) == (False, None)
    assert is_nilpotent(trivial()) == (True, 0)


def test_group_oracles():
    assert groups.nilpotency_class(dihedral_group_d4()) == 2
    assert groups.derived_length(symmetric_group_s3()) == 2
    assert groups.nilpotency_class(symmetric_group_s3()) is None
    assert groups.is_abelian_group(cyclic_group(4))


def test_kmm_kernel_series():
    assert kmm_kernel_series(chain(3)).klass == 0
    k = kmm_kernel_series(clifford_z2_z2())
    assert k.klass == 1 and k.nilpotent
    assert kmm_kernel_series(clifford_d4_z2()).klass == 2
    S = symmetric_inverse_monoid(2)
    k = kmm_kernel_series(S)
    assert k.kernels[0] == set(S.idempotents) and not k.nilpotent


def test_malcev_words():
    w = malcev_words(0)
    assert (str(w.lam), str(w.rho)) == ("x0", "x1")
    w = malcev_words(1)
    assert (str(w.lam), str(w.rho)) == ("x0 x2 x1", "x1 x2 x0")
    w = malcev_words(2)
    assert str(w.lam) == "x0 x2 x1 x3 x1 x2 x0"
    assert str(w.rho) == "x1 x2 x0 x3 x0 x2 x1"
    assert w.lam.arity == 4
    with pytest.raises(LevelTooLarge):
        malcev_words(5)
    with pytest.raises(LevelTooLarge):
        malcev_words(-1)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_malcev_matrix_matches_word_evaluation(n):
    S = symmetric_inverse_monoid(2)
    w = malcev_words(n)
    m = malcev_matrix(S, n)
    from itertools import product
    for a in S.elements:
        for b in S.elements:
            expected = all(eval_term(S, w.lam, [a, b, *z]) == eval_term(S, w.rho, [a, b, *z])
                           for z in product(S.elements, repeat=n))
            assert m[a, b] == expected


def test_malcev_relation_examples():
    S = symmetric_inverse_monoid(2)
    assert malcev_relation(S, 0).matrix.tolist() == np.eye(S.order, dtype=bool).tolist()
    assert malcev_relation(cyclic_group(4), 1).matrix.all()
    G = symmetric_group_s3()
    C = classical_center(G)
    mu1 = malcev_relation(G, 1)
    for a in G.elements:
        for b in G.elements:
            assert ((a, b) in mu1) == (G.mul(a, int(G.inv[b])) in C)


def test_malcev_class():
    B = brandt(trivial(), 2)
    assert not is_malcev_nilpotent(B, 1) and is_malcev_nilpotent(B, 2)
    assert malcev_class(B) == 2
    assert malcev_class(cyclic_group(4)) == 1
    assert malcev_class(chain(3)) == 1
    assert malcev_class(trivial()) == 0
    assert malcev_class(symmetric_group_s3()) is None


def test_malcev_budget():
    with pytest.raises(BudgetExceeded):
        malcev_matrix(symmetric_inverse_monoid(3), 3, budget=1000)


def test_malcev_level_two_on_is2_is_not_a_tolerance():
    S = symmetric_inverse_monoid(2)
    mu = malcev_relation(S, 2)
    v = tolerance_violation(S, mu)
    assert v["kind"] == "not_compatible"
    (a, b), (c, d) = v["pairs"]
    assert (a, b) in mu and (c, d) in mu
    assert (S.mul(a, c), S.mul(b, d)) not in mu
    with pytest.raises(TheoremMismatch):
        malcev_tolerance(S, 2)
    # reflexive and symmetric all the same
    assert np.diag(mu.matrix).all() and (mu.matrix == mu.matrix.T).all()


def test_malcev_monotone():
    for S in (symmetric_inverse_monoid(2), brandt(cyclic_group(2), 2), clifford_d4_z2()):
        prev = malcev_relation(S, 0).matrix
        for n in range(1, 4):
            cur = malcev_relation(S, n).matrix
            assert (prev <= cur).all()
            prev = cur


def test_kmm_and_malcev_on_clifford():
    for S in (trivial(), chain(2), chain(3), cyclic_group(4), clifford_z2_z2(), clifford_d4_z2(),
              dihedral_group_d4()):
        assert is_clifford(S)
        k, m = kmm_kernel_series(S).klass, malcev_class(S)
        for n in range(1, 4):
            assert (k is not None and k <= n) == (m is not None and m <= n)
    # class 0 differs: a nontrivial semilattice is KMM class 0 but Mal'cev class 1
    assert kmm_kernel_series(chain(2)).klass == 0 and malcev_class(chain(2)) == 1


def test_conjecture_check():
    S = symmetric_inverse_monoid(2)
    for n in range(4):
        r = conjecture_check(S, n)
        assert r.holds and r.witness is None
        assert r.to_json()["n"] == n
    r = conjecture_check(dihedral_group_d4(), 1)
    h = relation_matrix(green_h(dihedral_group_d4()))
    assert (r.rhs.matrix == (malcev_relation(dihedral_group_d4(), 1).matrix & h)).all()
