"""Free-group words on x1..x4, the commutator-pair families and Fox calculus.

A word is a tuple of nonzero ints: ``k`` stands for x_k and ``-k`` for its
inverse.  Commutators follow [y, z] = y^-1 z^-1 y z and conjugation
y^x = x^-1 y x.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .ring import MultiLaurent

NGENS = 4


class FamilyCountMismatch(AssertionError):
    pass


class MalformedDerivation(ValueError):
    pass


def reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    out: List[int] = []
    for a in letters:
        if not a or abs(a) > NGENS:
            raise ValueError(f"invalid letter {a}")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    word: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "word", reduce(self.word))

    @classmethod
    def gen(cls, i: int) -> "GroupWord":
        return cls((i,))

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Parse ``"x1 x2^-1 x3"`` (whitespace separated)."""
        out = []
        for tok in text.split():
            base, _, exp = tok.partition("^")
            if not base.startswith("x"):
                raise ValueError(f"bad token {tok!r}")
            i = int(base[1:])
            e = int(exp) if exp else 1
            out.extend([i if e > 0 else -i] * abs(e))
        return cls(tuple(out))

    @property
    def letters(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((abs(a), 1 if a > 0 else -1) for a in self.word)

    def __len__(self):
        return len(self.word)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.word + other.word)

    def __invert__(self) -> "GroupWord":
        return GroupWord(tuple(-a for a in reversed(self.word)))

    inverse = __invert__

    def is_identity(self) -> bool:
        return not self.word

    def __str__(self):
        if not self.word:
            return "1"
        return " ".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in self.word)


def commutator(y: GroupWord, z: GroupWord) -> GroupWord:
    return ~y * ~z * y * z


def conjugate(y: GroupWord, x: GroupWord) -> GroupWord:
    """y^x = x^-1 y x."""
    return ~x * y * x


def abelianization(w: GroupWord) -> Tuple[int, ...]:
    v = [0] * NGENS
    for a in w.word:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(v)


def fox_derivative_ab(w: GroupWord, i: int) -> MultiLaurent:
    """Abelianized Fox derivative dw/dx_i in Z[t1^+-1, ..., t4^+-1]."""
    if not 1 <= i <= NGENS:
        raise ValueError("generator index out of range")
    prefix = [0] * NGENS
    acc: dict = {}
    for a in w.word:
        g = abs(a)
        if a > 0:
            if g == i:
                k = tuple(prefix)
                acc[k] = acc.get(k, 0) + 1
            prefix[g - 1] += 1
        else:
            prefix[g - 1] -= 1
            if g == i:
                k = tuple(prefix)
                acc[k] = acc.get(k, 0) - 1
    return MultiLaurent(acc)


def in_second_derived(w: GroupWord) -> bool:
    """Membership in F'' via the Magnus embedding of F/F''."""
    if any(abelianization(w)):
        return False
    return all(fox_derivative_ab(w, i).is_zero() for i in range(1, NGENS + 1))


# -- the recursive pair families ---------------------------------------------

BRANCHES = (1, 2, 3)


def _other(a: int, pair_: Tuple[int, int]) -> int:
    return pair_[1] if a == pair_[0] else pair_[0]


@dataclass(frozen=True)
class FamilySpec:
    a: int
    c: int
    n: int

    def __post_init__(self):
        if self.a not in (1, 2) or self.c not in (3, 4):
            raise ValueError("family label needs a in {1, 2} and c in {3, 4}")
        if self.n < 1:
            raise ValueError("family depth n must be >= 1")

    @property
    def b(self) -> int:
        return _other(self.a, (1, 2))

    @property
    def d(self) -> int:
        return _other(self.c, (3, 4))


def base_pair(a: int, c: int) -> Tuple[GroupWord, GroupWord]:
    b = _other(a, (1, 2))
    xa, xb, xc = GroupWord.gen(a), GroupWord.gen(b), GroupWord.gen(c)
    return commutator(xa, xb), commutator(xa, xc)


def step(y: GroupWord, z: GroupWord, xa: GroupWord, branch: int) -> Tuple[GroupWord, GroupWord]:
    """Child pair number ``branch`` (1, 2 or 3) of (y, z)."""
    if branch == 1:
        return commutator(y, conjugate(y, xa)), commutator(z, conjugate(z, xa))
    if branch == 2:
        return commutator(y, z), commutator(z, conjugate(z, xa))
    if branch == 3:
        return commutator(y, conjugate(y, xa)), commutator(y, z)
    raise MalformedDerivation(f"unknown branch {branch}")


@dataclass(frozen=True)
class CommPair:
    first: GroupWord
    second: GroupWord
    label: Tuple[int, int]
    depth: int
    derivation: Tuple[int, ...]  # branch taken at each level below the base pair

    @property
    def words(self) -> Tuple[GroupWord, GroupWord]:
        return self.first, self.second


def generate_family(spec: FamilySpec) -> List[CommPair]:
    """All 3^(n-1) pairs of depth n, children listed in branch order 1, 2, 3."""
    a, c = spec.a, spec.c
    xa = GroupWord.gen(a)
    y, z = base_pair(a, c)
    level = [CommPair(y, z, (a, c), 1, ())]
    for depth in range(2, spec.n + 1):
        nxt = []
        for p in level:
            for br in BRANCHES:
                u, v = step(p.first, p.second, xa, br)
                nxt.append(CommPair(u, v, (a, c), depth, p.derivation + (br,)))
        level = nxt
    return level


def certify_depth(p: CommPair) -> bool:
    """Re-derive the pair from its derivation path and check it matches.

    A valid certificate shows both words are iterated commutators p.depth
    levels deep, hence lie in the depth-th derived subgroup F^(depth).
    """
    if p.label[0] not in (1, 2) or p.label[1] not in (3, 4):
        raise MalformedDerivation(f"bad label {p.label}")
    if p.depth != len(p.derivation) + 1:
        return False
    a, c = p.label
    xa = GroupWord.gen(a)
    y, z = base_pair(a, c)
    for br in p.derivation:
        if br not in BRANCHES:
            raise MalformedDerivation(f"unknown branch {br}")
        y, z = step(y, z, xa, br)
    return (y, z) == (p.first, p.second)


def _distinct_pairs(specs: Sequence[FamilySpec]) -> int:
    seen = set()
    for s in specs:
        for p in generate_family(s):
            seen.add((p.first.word, p.second.word))
    return len(seen)


def family_union_count(m: int) -> int:
    """2 * |P^{1,3}_{m-1} u P^{1,4}_{m-1} u P^{2,3}_{m-1}|, enumerated and checked
    against the closed form 2 * 3^(m-1)."""
    if m < 2:
        raise ValueError("m must be >= 2")
    specs = [FamilySpec(1, 3, m - 1), FamilySpec(1, 4, m - 1), FamilySpec(2, 3, m - 1)]
    n = 2 * _distinct_pairs(specs)
    expected = 2 * 3 ** (m - 1)
    if n != expected:
        raise FamilyCountMismatch(f"enumerated {n} curves, closed form gives {expected}")
    return n


def mixed_family_union_count(k: int, l: int) -> int:
    """2 * |P^{1,3}_{k-1} u P^{1,4}_{k-1} u P^{2,3}_{k-1} u P^{2,4}_{l-1}|, checked
    against 2 * (3 * 3^(k-2) + 3^(l-2))."""
    if k < 2 or l < 2:
        raise ValueError("k and l must be >= 2")
    specs = [FamilySpec(1, 3, k - 1), FamilySpec(1, 4, k - 1), FamilySpec(2, 3, k - 1), FamilySpec(2, 4, l - 1)]
    n = 2 * _distinct_pairs(specs)
    expected = 2 * (3 * 3 ** (k - 2) + 3 ** (l - 2))
    if n != expected:
        raise FamilyCountMismatch(f"enumerated {n} curves, closed form gives {expected}")
    return n


SURFACE_RELATOR = commutator(GroupWord.gen(1), GroupWord.gen(2)) * commutator(GroupWord.gen(3), GroupWord.gen(4))
