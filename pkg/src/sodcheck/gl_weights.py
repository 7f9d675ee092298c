"""Integer weights of general linear groups and their basic combinatorics.

A weight of GL(r) is an r-tuple of integers; it is dominant when the entries
are non-increasing.  Dominant weights index the irreducible representations
(Schur functors of the standard representation, twisted by determinant
powers), and everything downstream -- cohomology of homogeneous bundles,
Chern characters, tensor decompositions -- reduces to arithmetic on these
tuples.  All arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator


class Weight:
    """An integer weight of GL(r), r = len(entries).

    Immutable and hashable.  ``dominant`` is checked at construction so that
    consumers can rely on the flag instead of re-scanning.
    """

    __slots__ = ("entries", "dominant")

    def __init__(self, entries: Iterable[int]):
        ent = tuple(int(e) for e in entries)
        if not ent:
            raise ValueError("weight needs at least one entry")
        object.__setattr__(self, "entries", ent)
        object.__setattr__(
            self, "dominant", all(a >= b for a, b in zip(ent, ent[1:]))
        )

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("Weight is immutable")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Weight) and self.entries == other.entries

    def __lt__(self, other: "Weight") -> bool:
        return self.entries < other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Weight{self.entries}"

    def __add__(self, other: "Weight") -> "Weight":
        if len(other) != len(self):
            raise ValueError("rank mismatch")
        return Weight(a + b for a, b in zip(self.entries, other.entries))

    def twist(self, t: int) -> "Weight":
        """Add the determinant character t times (entrywise shift)."""
        return Weight(a + t for a in self.entries)


def _as_entries(w) -> tuple[int, ...]:
    if isinstance(w, Weight):
        return w.entries
    return tuple(int(e) for e in w)


def weyl_dim(n: int, w) -> int:
    """Dimension of the irreducible GL(n) representation with highest weight w.

    Weyl dimension formula: the product over i < j of
    (w_i - w_j + j - i) / (j - i).  Requires a dominant weight of length n.
    """
    ent = _as_entries(w)
    if len(ent) != n:
        raise ValueError(f"weight has length {len(ent)}, expected {n}")
    if any(a < b for a, b in zip(ent, ent[1:])):
        raise ValueError(f"weight {ent} is not dominant")
    res = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            res *= Fraction(ent[i] - ent[j] + j - i, j - i)
    assert res.denominator == 1 and res > 0
    return int(res)


def dualize(w) -> Weight:
    """Highest weight of the dual representation: reverse and negate."""
    ent = _as_entries(w)
    return Weight(-e for e in reversed(ent))


class WeightSum:
    """A multiplicity-weighted multiset of weights (a virtual character basis).

    Canonical ordering: terms are reported sorted by entry tuple, so equal
    sums compare and print identically regardless of insertion order.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Weight, int]] = ()):
        self._terms: dict[Weight, int] = {}
        for w, m in terms:
            self.add(w, m)

    def add(self, w: Weight, mult: int = 1) -> None:
        m = self._terms.get(w, 0) + mult
        if m:
            self._terms[w] = m
        else:
            self._terms.pop(w, None)

    def items(self) -> list[tuple[Weight, int]]:
        return sorted(self._terms.items(), key=lambda t: t[0].entries)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Weight, int]]:
        return iter(self.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightSum) and self._terms == other._terms

    def __repr__(self) -> str:
        inner = " + ".join(
            (f"{m}*{w.entries}" if m != 1 else f"{w.entries}")
            for w, m in self.items()
        )
        return f"WeightSum({inner or '0'})"

    def total_dim(self, n: int) -> int:
        return sum(m * weyl_dim(n, w) for w, m in self.items())


def tensor_rank2(a, b) -> WeightSum:
    """Decompose the tensor product of two irreducible GL(2) representations.

    Clebsch--Gordan for GL(2): with a = (a1, a2), b = (b1, b2) dominant,
    the product is multiplicity-free,

        sum over i = 0 .. min(a1 - a2, b1 - b2) of (a1 + b1 - i, a2 + b2 + i).

    Raises on non-dominant input.
    """
    ea, eb = _as_entries(a), _as_entries(b)
    if len(ea) != 2 or len(eb) != 2:
        raise ValueError("tensor_rank2 needs GL(2) weights")
    if ea[0] < ea[1] or eb[0] < eb[1]:
        raise ValueError("weights must be dominant")
    out = WeightSum()
    for i in range(min(ea[0] - ea[1], eb[0] - eb[1]) + 1):
        out.add(Weight((ea[0] + eb[0] - i, ea[1] + eb[1] + i)))
    return out


def weight_multiset(w) -> list[tuple[int, ...]]:
    """All weights (with multiplicity) of the irreducible with highest weight w.

    Used to assemble characters and Chern characters.  Supported ranks:
      r = 1: the single weight;
      r = 2: the string (a1 - i, a2 + i), i = 0 .. a1 - a2;
      r = 3: Gelfand--Tsetlin patterns.
    Entries may be negative (determinant twists shift every weight entrywise).
    """
    ent = _as_entries(w)
    if any(x < y for x, y in zip(ent, ent[1:])):
        raise ValueError(f"weight {ent} is not dominant")
    r = len(ent)
    if r == 1:
        return [ent]
    if r == 2:
        a1, a2 = ent
        return [(a1 - i, a2 + i) for i in range(a1 - a2 + 1)]
    if r == 3:
        # Gelfand-Tsetlin: pick (m1, m2) interlacing (a1, a2, a3), then k in
        # [m2, m1]; weight entries are successive row-sum differences.
        a1, a2, a3 = ent
        out = []
        for m1 in range(a2, a1 + 1):
            for m2 in range(a3, a2 + 1):
                for k in range(m2, m1 + 1):
                    s2 = m1 + m2
                    out.append((k, s2 - k, a1 + a2 + a3 - s2))
        return out
    raise NotImplementedError(f"weight_multiset: rank {r} not needed/supported")
