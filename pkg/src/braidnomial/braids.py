"""Artin braid words, their permutation / exponent-sum images and the
reduced Burau representation over exact integer Laurent polynomials.

Conventions used everywhere in the package:

* a word is a list of nonzero ints, ``i`` for sigma_i and ``-i`` for its
  inverse, read left to right in chronological order;
* sigma_i swaps the strands at positions i-1 and i (0-based), and is the
  positive (anticlockwise) half turn of that pair;
* a permutation ``P`` is a tuple with ``P[k]`` the final position of the
  strand that started at ``k``; ``compose(P, Q)`` means P first, then Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import OutOfRange, StrandMismatch


# permutations

def identity_perm(n: int) -> tuple:
    return tuple(range(n))


def compose(*perms) -> tuple:
    """Chronological composition: apply perms[0] first."""
    res = list(range(len(perms[0])))
    for P in perms:
        res = [P[i] for i in res]
    return tuple(res)


def inverse_perm(P) -> tuple:
    out = [0] * len(P)
    for i, j in enumerate(P):
        out[j] = i
    return tuple(out)


def cycle_type(P) -> tuple:
    seen, lengths = set(), []
    for s in range(len(P)):
        if s in seen:
            continue
        k, c = s, 0
        while k not in seen:
            seen.add(k)
            k = P[k]
            c += 1
        lengths.append(c)
    return tuple(sorted(lengths, reverse=True))


def transposition(n: int, a: int, b: int) -> tuple:
    P = list(range(n))
    P[a], P[b] = b, a
    return tuple(P)


# Laurent polynomials in t with integer coefficients

class Laurent:
    """Immutable sparse Laurent polynomial: {exponent: nonzero int}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if isinstance(terms, int):
            terms = {0: terms}
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def t(cls, e: int = 1, c: int = 1) -> "Laurent":
        return cls({e: c})

    def __add__(self, other):
        other = other if isinstance(other, Laurent) else Laurent(other)
        d = dict(self.terms)
        for e, c in other.terms.items():
            d[e] = d.get(e, 0) + c
        return Laurent(d)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-(other if isinstance(other, Laurent) else Laurent(other)))

    def __mul__(self, other):
        if isinstance(other, int):
            return Laurent({e: c * other for e, c in self.terms.items()})
        d = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return Laurent(d)

    __rmul__ = __mul__

    def exact_div(self, k: int) -> "Laurent":
        out = {}
        for e, c in self.terms.items():
            q, rem = divmod(c, k)
            if rem:
                raise ArithmeticError("inexact division")
            out[e] = q
        return Laurent(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent(other)
        return isinstance(other, Laurent) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __call__(self, x):
        return sum(c * x ** e for e, c in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            coef = str(c) if (mono == "" or abs(c) != 1) else ("-" if c < 0 else "")
            parts.append(f"{coef}{'*' if coef not in ('', '-') and mono else ''}{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {str(e): c for e, c in sorted(self.terms.items())}


ZERO, ONE = Laurent(), Laurent(1)
T, T_INV = Laurent.t(1), Laurent.t(-1)


def mat_identity(k: int):
    return [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]


def mat_mul(A, B):
    k, l, m = len(A), len(B), len(B[0]) if B else 0
    return [[reduce(lambda x, y: x + y, (A[i][s] * B[s][j] for s in range(l)), ZERO)
             for j in range(m)] for i in range(k)]


def _right_apply(M, letter: int, n: int) -> None:
    """M <- M * burau(sigma_letter) in place, touching three columns only."""
    i = abs(letter)
    r = i - 1
    col_r = [row[r] for row in M]
    if letter > 0:
        a, b, c = T, -T, ONE
    else:
        a, b, c = ONE, -T_INV, T_INV
    for row, v in zip(M, col_r):
        if r - 1 >= 0:
            row[r - 1] = row[r - 1] + a * v
        row[r] = b * v
        if r + 1 <= n - 2:
            row[r + 1] = row[r + 1] + c * v


def burau_generator(letter: int, n: int):
    M = mat_identity(n - 1)
    _right_apply(M, letter, n)
    return M


# words

@dataclass(frozen=True)
class BraidWord:
    strand_count: int
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.strand_count < 1:
            raise OutOfRange("strand_count must be at least 1")
        for x in letters:
            if x == 0 or abs(x) > self.strand_count - 1:
                raise OutOfRange(f"generator {x} out of range for {self.strand_count} strands")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strand_count != self.strand_count:
            raise StrandMismatch("strand counts differ")
        return BraidWord(self.strand_count, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.strand_count, self.letters * k)

    def __len__(self) -> int:
        return len(self.letters)

    def freely_reduced(self) -> "BraidWord":
        """Cancel adjacent s_i s_i^-1 pairs."""
        out = []
        for x in self.letters:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return BraidWord(self.strand_count, tuple(out))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strand_count, tuple(-x for x in reversed(self.letters)))

    def to_list(self) -> list:
        return list(self.letters)


@dataclass(frozen=True)
class BraidInvariants:
    permutation: tuple
    exponent_sum: int
    burau: tuple


def word_permutation(word: BraidWord) -> tuple:
    """Final position of the strand starting at each position."""
    pos = list(range(word.strand_count))  # pos[k] = strand currently at position k
    for x in word.letters:
        i = abs(x)
        pos[i - 1], pos[i] = pos[i], pos[i - 1]
    out = [0] * word.strand_count
    for k, s in enumerate(pos):
        out[s] = k
    return tuple(out)


def burau_matrix(word: BraidWord):
    n = word.strand_count
    M = mat_identity(n - 1)
    for x in word.letters:
        _right_apply(M, x, n)
    return tuple(tuple(row) for row in M)


def invariants_of(word: BraidWord) -> BraidInvariants:
    return BraidInvariants(word_permutation(word), sum(1 if x > 0 else -1 for x in word.letters), burau_matrix(word))


def is_identity_burau(M) -> bool:
    return all(M[i][j] == (ONE if i == j else ZERO) for i in range(len(M)) for j in range(len(M)))


EQUAL_BY_INVARIANTS = "EqualByInvariants"
DISTINCT = "Distinct"


def same_element(w1: BraidWord, w2: BraidWord) -> str:
    """Compare by permutation, exponent sum and reduced Burau image.

    The reduced Burau representation is not faithful from five strands on,
    so EqualByInvariants is strong evidence there rather than a proof.
    """
    if w1.strand_count != w2.strand_count:
        raise StrandMismatch(f"{w1.strand_count} vs {w2.strand_count} strands")
    a, b = invariants_of(w1), invariants_of(w2)
    same = a.permutation == b.permutation and a.exponent_sum == b.exponent_sum and a.burau == b.burau
    return EQUAL_BY_INVARIANTS if same else DISTINCT


def charpoly(M) -> tuple:
    """Coefficients c_0..c_k (highest first, c_0 = 1) of det(x I - M).

    Faddeev-LeVerrier; every division is exact over Z[t, 1/t].
    """
    k = len(M)
    coeffs = [ONE]
    if k == 0:
        return tuple(coeffs)
    Mk = [list(row) for row in M]
    AM = Mk
    for i in range(1, k + 1):
        if i > 1:
            AM = mat_mul(M, Mk)
        c = -reduce(lambda x, y: x + y, (AM[j][j] for j in range(k)), ZERO).exact_div(i)
        coeffs.append(c)
        Mk = [[AM[a][b] + (c if a == b else ZERO) for b in range(k)] for a in range(k)]
    return tuple(coeffs)


@dataclass(frozen=True)
class ConjugationInvariants:
    cycle_type: tuple
    exponent_sum: int
    charpoly: tuple


def conjugation_invariants(word: BraidWord) -> ConjugationInvariants:
    inv = invariants_of(word)
    return ConjugationInvariants(cycle_type(inv.permutation), inv.exponent_sum, charpoly(inv.burau))


# the Lambda family

def lambda_family(kind: str, arg: int, n: int) -> BraidWord:
    """Lambda(l) = s_l..s_1, bar(l) = s_{n-l}..s_{n-1}, plus(k) = s_1..s_k,
    minus(j) = s_{n-1}..s_{n-j}."""
    if kind == "plain":
        if not 0 <= arg <= n - 1:
            raise OutOfRange(f"Lambda({arg}) needs 0 <= l <= {n - 1}")
        letters = range(arg, 0, -1)
    elif kind == "bar":
        if not 1 <= arg <= n:
            raise OutOfRange(f"bar Lambda({arg}) needs 1 <= l <= {n}")
        letters = range(n - arg, n) if arg < n else ()
    elif kind == "plus":
        if not 0 <= arg <= n - 1:
            raise OutOfRange(f"Lambda+({arg}) needs 0 <= k <= {n - 1}")
        letters = range(1, arg + 1)
    elif kind == "minus":
        if not 1 <= arg <= n:
            raise OutOfRange(f"Lambda-({arg}) needs 1 <= j <= {n}")
        letters = range(n - 1, n - arg - 1, -1) if arg < n else ()
    else:
        raise OutOfRange(f"unknown kind {kind!r}")
    return BraidWord(n, tuple(letters))


def garside(n: int) -> BraidWord:
    """Delta = Lambda(1) ... Lambda(n-1)."""
    return reduce(lambda a, b: a * b, (lambda_family("plain", l, n) for l in range(1, n)), BraidWord(n))


def figure_word_zero_sigma() -> BraidWord:
    """The quintic diagram word Lambda(1) Lambda(3) Lambda(4)^5 Lambda^-(2)."""
    L = lambda k, a: lambda_family(k, a, 5)
    return L("plain", 1) * L("plain", 3) * L("plain", 4) ** 5 * L("minus", 2)


def figure_word_infinity() -> BraidWord:
    """The quintic reference word for the loop about infinity (27 letters)."""
    L = lambda k, a: lambda_family(k, a, 5)
    return L("minus", 2).inverse() * L("plain", 4) ** -5 * L("plain", 3).inverse() * L("plain", 2).inverse()
