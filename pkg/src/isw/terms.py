"""Inverse-semigroup terms in normal form: words over signed variables."""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .errors import ArityMismatch
from .semigroup import InverseSemigroup


@dataclass(frozen=True)
class Term:
    """The word x_{i1}^{e1} ... x_{ik}^{ek} in ``arity`` variables."""

    arity: int
    word: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.word:
            raise ValueError("a term needs at least one letter")
        for v, e in self.word:
            if not 0 <= v < self.arity:
                raise ValueError(f"variable x{v} outside arity {self.arity}")
            if e not in (1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {e}")

    @classmethod
    def parse(cls, text: str, arity=None) -> "Term":
        """Parse e.g. ``"x1 x0^-1 x2"``."""
        word = []
        for tok in text.split():
            m = re.fullmatch(r"x(\d+)(\^(-?1))?", tok)
            if not m:
                raise ValueError(f"bad letter {tok!r}")
            word.append((int(m.group(1)), int(m.group(3) or 1)))
        used = 1 + max(v for v, _ in word)
        return cls(arity if arity is not None else used, tuple(word))

    def __len__(self):
        return len(self.word)

    def occurrences(self, var: int) -> int:
        return sum(1 for v, _ in self.word if v == var)

    def concat(self, *others: "Term") -> "Term":
        word = self.word
        arity = self.arity
        for o in others:
            word += o.word
            arity = max(arity, o.arity)
        return Term(arity, word)

    def __str__(self):
        return " ".join(f"x{v}" if e == 1 else f"x{v}^-1" for v, e in self.word)

    def to_json(self):
        return {"arity": self.arity, "word": [[v, e] for v, e in self.word]}

    @classmethod
    def from_json(cls, doc) -> "Term":
        return cls(doc["arity"], tuple((int(v), int(e)) for v, e in doc["word"]))


def var(i: int, arity=None, exponent=1) -> Term:
    return Term(arity if arity is not None else i + 1, ((i, exponent),))


# l(x, y) = xy, m(x, y, z) = yxz, r(x, y) = yx; x is always x0
ELL = Term(2, ((0, 1), (1, 1)))
M = Term(3, ((1, 1), (0, 1), (2, 1)))
R = Term(2, ((1, 1), (0, 1)))


def eval_term(S: InverseSemigroup, t: Term, assignment) -> int:
    if len(assignment) != t.arity:
        raise ArityMismatch(f"term has arity {t.arity}, got {len(assignment)} values")
    out = None
    for v, e in t.word:
        x = int(assignment[v])
        if e == -1:
            x = int(S.inv[x])
        out = x if out is None else int(S.table[out, x])
    return out


def _restricted_growth(length):
    """Variable patterns 1.. in order of first appearance."""
    def rec(prefix, top):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for v in range(1, top + 2):
            yield from rec(prefix + [v], max(top, v))
    yield from rec([], 0)


def single_occurrence_terms(max_length: int):
    """Every normal-form term up to ``max_length`` in which x0 occurs exactly once.

    The other letters run over all variable patterns (fresh or repeated,
    up to renaming) and all exponents.
    """
    for length in range(1, max_length + 1):
        for pos in range(length):
            for pattern in _restricted_growth(length - 1):
                letters = list(pattern[:pos]) + [0] + list(pattern[pos:])
                arity = 1 + max(letters)
                for exps in product((1, -1), repeat=length):
                    yield Term(arity, tuple(zip(letters, exps)))
