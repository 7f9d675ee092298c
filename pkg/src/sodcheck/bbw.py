"""Cohomology of equivariant bundles on products of Grassmannian factors.

A factor is Gr(k, n) with tautological subbundle U of rank k and quotient
Q = V/U of rank n - k.  An equivariant bundle is a finite direct sum of
terms, each term a product over the factors of

    (irreducible with highest weight ``sub`` applied to U-dual)
  x (irreducible with highest weight ``quot`` applied to Q-dual).

With that bookkeeping the Bott algorithm is pure weight arithmetic: the full
weight is sub ++ quot; add the staircase rho = (n-1, ..., 1, 0); a repeated
entry kills the term; otherwise sorting decreasingly with ell inversions puts
all cohomology of the term in degree ell, equal to the irreducible ambient
representation with highest weight (sorted - rho).

Complexes of such bundles (resolutions, Koszul complexes) are evaluated by
their cohomology table: each term lands in a cell (position p, degree q), and
the answer is the direct sum over cells of homological degree q - p PROVIDED
no possible connecting differential joins two occupied cells.  A differential
of the r-th stage moves (p, q) -> (p - r, q + r - 1):

  * ``hypercohomology`` insists on determinacy for every r >= 1 and otherwise
    returns an :class:`Indeterminate` describing the clash -- it never
    guesses;
  * ``pushforward_complex`` collapses one factor only; there the r = 1
    arrows between adjacent cells are the differentials OF the resulting
    complex (they survive into the output), so only r >= 2 clashes make the
    output indeterminate.

Example conventions for a factor Gr(2, n): O(t) is sub-weight (t, t);
U = sub (0, -1); U-dual = sub (1, 0); S^2 U = sub (0, -2); Q-dual = quot
(1, 0).  On the projective-space factor Gr(1, 4), O(t) is sub-weight (t,).
Everything is exact integer arithmetic.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .gl_weights import Weight, dualize, tensor_rank2, weight_multiset, weyl_dim


class HomFactor:
    """The Grassmannian Gr(k, n) of k-dimensional subspaces, as a factor."""

    __slots__ = ("k", "n", "name")

    def __init__(self, k: int, n: int, name: str):
        if not 0 < k < n:
            raise ValueError("need 0 < k < n")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("HomFactor is immutable")

    @property
    def dim(self) -> int:
        return self.k * (self.n - self.k)

    @property
    def rho(self) -> tuple[int, ...]:
        return tuple(range(self.n - 1, -1, -1))

    @property
    def canonical_twist(self) -> int:
        """omega = O(canonical_twist) in units of the Pluecker generator."""
        return -self.n

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomFactor)
            and (self.k, self.n) == (other.k, other.n)
        )

    def __hash__(self) -> int:
        return hash((self.k, self.n))


#: the three factor types in actual use
P3 = HomFactor(1, 4, "P3")
GR23 = HomFactor(2, 3, "Gr23")
GR24 = HomFactor(2, 4, "Gr24")


def _pair(factor: HomFactor, sub, quot) -> tuple[Weight, Weight]:
    sw = sub if isinstance(sub, Weight) else Weight(sub)
    qw = quot if isinstance(quot, Weight) else Weight(quot)
    if len(sw) != factor.k or len(qw) != factor.n - factor.k:
        raise ValueError(f"weight ranks do not match {factor!r}")
    if not (sw.dominant and qw.dominant):
        raise ValueError("term weights must be dominant")
    return (sw, qw)


class Term:
    """One irreducible summand: per-factor (sub, quot) weights, an integer
    multiplicity, and a formal homological shift."""

    __slots__ = ("pairs", "mult", "shift")

    def __init__(self, pairs, mult: int = 1, shift: int = 0):
        object.__setattr__(self, "pairs", tuple(pairs))
        object.__setattr__(self, "mult", int(mult))
        object.__setattr__(self, "shift", int(shift))
        if self.mult <= 0:
            raise ValueError("multiplicity must be positive")

    def __setattr__(self, name, value):
        raise AttributeError("Term is immutable")

    def rank(self, space: Sequence[HomFactor]) -> int:
        r = self.mult
        for f, (sw, qw) in zip(space, self.pairs):
            r *= weyl_dim(f.k, sw) * weyl_dim(f.n - f.k, qw)
        return r

    def __repr__(self) -> str:
        body = " x ".join(
            f"({tuple(s)}|{tuple(q)})" for s, q in self.pairs
        )
        extra = (f" mult={self.mult}" if self.mult != 1 else "") + (
            f" shift={self.shift}" if self.shift else ""
        )
        return f"Term[{body}{extra}]"


class EquivariantBundle:
    """A direct sum of terms on a fixed product of factors."""

    __slots__ = ("space", "terms")

    def __init__(self, space, terms: Iterable[Term]):
        object.__setattr__(self, "space", tuple(space))
        object.__setattr__(self, "terms", tuple(terms))
        for t in self.terms:
            if len(t.pairs) != len(self.space):
                raise ValueError("term does not match the factor count")

    def __setattr__(self, name, value):
        raise AttributeError("EquivariantBundle is immutable")

    def rank(self) -> int:
        return sum(t.rank(self.space) for t in self.terms)

    def dual(self) -> "EquivariantBundle":
        return EquivariantBundle(
            self.space,
            (
                Term(
                    tuple((dualize(s), dualize(q)) for s, q in t.pairs),
                    t.mult,
                    -t.shift,
                )
                for t in self.terms
            ),
        )

    def twist(self, twists: Sequence[int]) -> "EquivariantBundle":
        """Tensor with the line bundle O(twists) (one Pluecker twist per factor)."""
        if len(twists) != len(self.space):
            raise ValueError("one twist per factor")
        out = []
        for t in self.terms:
            pairs = tuple(
                (s.twist(tw), q) for (s, q), tw in zip(t.pairs, twists)
            )
            out.append(Term(pairs, t.mult, t.shift))
        return EquivariantBundle(self.space, out)

    def tensor(self, other: "EquivariantBundle") -> "EquivariantBundle":
        if self.space != other.space:
            raise ValueError("tensor needs matching factor spaces")
        out: list[Term] = []
        for a in self.terms:
            for b in other.terms:
                out.extend(_tensor_terms(self.space, a, b))
        return EquivariantBundle(self.space, out)

    def shifted(self, s: int) -> "EquivariantBundle":
        return EquivariantBundle(
            self.space,
            (Term(t.pairs, t.mult, t.shift + s) for t in self.terms),
        )

    def __add__(self, other: "EquivariantBundle") -> "EquivariantBundle":
        if self.space != other.space:
            raise ValueError("direct sum needs matching factor spaces")
        return EquivariantBundle(self.space, self.terms + other.terms)

    def __repr__(self) -> str:
        return f"EquivariantBundle({list(self.terms)!r})"


def line(space, twists: Sequence[int]) -> EquivariantBundle:
    """The line bundle O(t_1, ..., t_m), t_i the Pluecker twist on factor i."""
    space = tuple(space)
    if len(twists) != len(space):
        raise ValueError("one twist per factor")
    pairs = []
    for f, t in zip(space, twists):
        pairs.append(_pair(f, (t,) * f.k, (0,) * (f.n - f.k)))
    return EquivariantBundle(space, [Term(pairs)])


def irr(space, pairs, mult: int = 1, shift: int = 0) -> EquivariantBundle:
    """A single irreducible term; ``pairs`` is one (sub, quot) per factor."""
    space = tuple(space)
    checked = tuple(_pair(f, s, q) for f, (s, q) in zip(space, pairs))
    if len(checked) != len(space):
        raise ValueError("one weight pair per factor")
    return EquivariantBundle(space, [Term(checked, mult, shift)])


def _tensor_weights(rank: int, a: Weight, b: Weight):
    """Decompose the GL(rank) product of two irreducibles as (weight, mult) pairs.

    Full decompositions are implemented for rank <= 2; in rank 3 one side
    must be a power of the determinant (all catalog data keeps within this).
    """
    if rank == 1:
        return [(a + b, 1)]
    if rank == 2:
        return [(w, m) for w, m in tensor_rank2(a, b)]
    det_a = len(set(a.entries)) == 1
    det_b = len(set(b.entries)) == 1
    if det_a or det_b:
        return [(a + b, 1)]
    raise NotImplementedError(
        f"GL({rank}) tensor of two non-determinant weights is not needed"
    )


def _tensor_terms(space, a: Term, b: Term) -> list[Term]:
    partial: list[tuple[tuple[tuple[Weight, Weight], ...], int]] = [((), 1)]
    for f, (sa, qa), (sb, qb) in zip(space, a.pairs, b.pairs):
        subs = _tensor_weights(f.k, sa, sb)
        quots = _tensor_weights(f.n - f.k, qa, qb)
        nxt = []
        for pairs, m in partial:
            for sw, sm in subs:
                for qw, qm in quots:
                    nxt.append((pairs + ((sw, qw),), m * sm * qm))
        partial = nxt
    return [
        Term(pairs, a.mult * b.mult * m, a.shift + b.shift)
        for pairs, m in partial
    ]


def bott_factor(factor: HomFactor, sub: Weight, quot: Weight):
    """Bott's algorithm on one factor.

    Returns None when all cohomology vanishes, else (degree, ambient_weight)
    where ambient_weight is the dominant GL(n) highest weight of the (unique)
    nonzero cohomology group, sitting in the returned degree.
    """
    full = sub.entries + quot.entries
    rho = factor.rho
    v = tuple(a + r for a, r in zip(full, rho))
    if len(set(v)) < len(v):
        return None
    inversions = 0
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if v[i] < v[j]:
                inversions += 1
    lam = tuple(x - r for x, r in zip(sorted(v, reverse=True), rho))
    return inversions, Weight(lam)


class GradedSpace:
    """Graded vector space with ambient-weight labels: degree -> {key: mult}.

    Keys are tuples of per-factor ambient weights, so the answer remembers
    not just dimensions but which representation showed up (e.g. the dual of
    the defining representation).
    """

    __slots__ = ("space", "layers")
    determinate = True

    def __init__(self, space, layers=None):
        self.space = tuple(space)
        self.layers: dict[int, dict[tuple[Weight, ...], int]] = {}
        if layers:
            for deg, cell in layers.items():
                for key, m in cell.items():
                    self.add(deg, key, m)

    def add(self, degree: int, key: tuple[Weight, ...], mult: int) -> None:
        cell = self.layers.setdefault(degree, {})
        cell[key] = cell.get(key, 0) + mult

    def dimension(self, degree: int) -> int:
        cell = self.layers.get(degree, {})
        return sum(
            m * _key_dim(self.space, key) for key, m in cell.items()
        )

    def dims(self) -> dict[int, int]:
        out = {}
        for deg in self.layers:
            d = self.dimension(deg)
            if d:
                out[deg] = d
        return dict(sorted(out.items()))

    def weights(self, degree: int) -> list[tuple[tuple[Weight, ...], int]]:
        return sorted(
            self.layers.get(degree, {}).items(),
            key=lambda kv: tuple(w.entries for w in kv[0]),
        )

    @property
    def is_zero(self) -> bool:
        return not self.dims()

    def euler(self) -> int:
        return sum((-1) ** deg * d for deg, d in self.dims().items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedSpace)
            and self.space == other.space
            and self.dims() == other.dims()
        )

    def describe(self) -> str:
        dims = self.dims()
        if not dims:
            return "0"
        return " + ".join(f"C^{d}[{deg}]" for deg, d in dims.items())

    def __repr__(self) -> str:
        return f"GradedSpace({self.describe()})"


def _key_dim(space, key: tuple[Weight, ...]) -> int:
    d = 1
    for f, w in zip(space, key):
        d *= weyl_dim(f.n, w)
    return d


class Indeterminate:
    """A cohomology table whose total answer is not forced by the staircase.

    ``entries`` lists the occupied cells (position, degree, dimension);
    ``collisions`` the pairs joined by a possible differential.  This is a
    first-class result: callers decide what to do, nothing is guessed.
    """

    __slots__ = ("space", "entries", "collisions")
    determinate = False

    def __init__(self, space, entries, collisions):
        self.space = tuple(space)
        self.entries = entries
        self.collisions = collisions

    @property
    def is_zero(self) -> bool:
        return False

    def describe(self) -> str:
        cells = ", ".join(f"(p={p}, q={q}, dim={d})" for p, q, d in self.entries)
        return f"indeterminate table [{cells}]"

    def __repr__(self) -> str:
        return f"Indeterminate({self.describe()})"


class TermComplex:
    """A finite complex of equivariant bundles; slot p maps to slot p - 1."""

    __slots__ = ("space", "slots")

    def __init__(self, space, slots: dict[int, EquivariantBundle]):
        self.space = tuple(space)
        self.slots = {int(p): b for p, b in slots.items() if b.terms}
        for b in self.slots.values():
            if b.space != self.space:
                raise ValueError("all slots must live on the complex's space")

    def twist(self, twists: Sequence[int]) -> "TermComplex":
        return TermComplex(
            self.space, {p: b.twist(twists) for p, b in self.slots.items()}
        )

    def tensor(self, bundle: EquivariantBundle) -> "TermComplex":
        return TermComplex(
            self.space, {p: b.tensor(bundle) for p, b in self.slots.items()}
        )

    def ranks(self) -> dict[int, int]:
        return {p: b.rank() for p, b in sorted(self.slots.items())}

    def __repr__(self) -> str:
        return f"TermComplex(positions {sorted(self.slots)})"


def cohomology(bundle: EquivariantBundle) -> GradedSpace:
    """Sheaf cohomology of a single equivariant bundle (always determinate)."""
    out = GradedSpace(bundle.space)
    for term in bundle.terms:
        res = _term_cohomology(bundle.space, term)
        if res is None:
            continue
        degree, key = res
        out.add(degree - term.shift, key, term.mult)
    return out


def _term_cohomology(space, term: Term):
    degree = 0
    key = []
    for f, (sw, qw) in zip(space, term.pairs):
        r = bott_factor(f, sw, qw)
        if r is None:
            return None
        degree += r[0]
        key.append(r[1])
    return degree, tuple(key)


def _cell_table(cx: TermComplex):
    """E_1-style table: {(p, q): {key: mult}} plus per-cell dimensions."""
    cells: dict[tuple[int, int], dict[tuple[Weight, ...], int]] = {}
    for p, bundle in cx.slots.items():
        for term in bundle.terms:
            res = _term_cohomology(cx.space, term)
            if res is None:
                continue
            q, key = res
            cell = cells.setdefault((p, q - term.shift), {})
            cell[key] = cell.get(key, 0) + term.mult
    return cells


def _collisions(cells, min_r: int):
    found = []
    occupied = sorted(cells)
    for p1, q1 in occupied:
        for p2, q2 in occupied:
            r = p1 - p2
            if r >= min_r and q2 - q1 == r - 1:
                found.append(((p1, q1), (p2, q2), r))
    return found


def _cell_entries(space, cells):
    return [
        (p, q, sum(m * _key_dim(space, k) for k, m in cell.items()))
        for (p, q), cell in sorted(cells.items())
    ]


def hypercohomology(cx: TermComplex):
    """Total cohomology of the complex, or Indeterminate.

    Determinate exactly when no possible differential (any stage r >= 1)
    connects two occupied cells; then the table collapses by degree q - p.
    """
    cells = _cell_table(cx)
    clashes = _collisions(cells, min_r=1)
    if clashes:
        return Indeterminate(cx.space, _cell_entries(cx.space, cells), clashes)
    out = GradedSpace(cx.space)
    for (p, q), cell in cells.items():
        for key, m in cell.items():
            out.add(q - p, key, m)
    return out


def pushforward_complex(cx: TermComplex, along: int):
    """Collapse one factor of the complex by its cohomology.

    The result is a complex on the remaining factors: a term in slot p whose
    ``along``-factor cohomology sits in degree q lands in slot p - q, with
    multiplicity scaled by the dimension of that cohomology representation.
    Differentials between adjacent output slots are the r = 1 arrows of the
    table, so those do not obstruct; a possible r >= 2 arrow does, and then
    Indeterminate is returned instead.
    """
    space = cx.space
    if not 0 <= along < len(space):
        raise ValueError("factor index out of range")
    rest = tuple(f for i, f in enumerate(space) if i != along)
    if not rest:
        raise ValueError("pushforward must leave at least one factor")
    factor = space[along]

    cells: dict[tuple[int, int], list[Term]] = {}
    for p, bundle in cx.slots.items():
        for term in bundle.terms:
            sw, qw = term.pairs[along]
            res = bott_factor(factor, sw, qw)
            if res is None:
                continue
            q, lam = res
            rest_pairs = tuple(
                pr for i, pr in enumerate(term.pairs) if i != along
            )
            mult = term.mult * weyl_dim(factor.n, lam)
            cells.setdefault((p, q), []).append(
                Term(rest_pairs, mult, term.shift)
            )

    dim_cells = {
        pq: {(): sum(t.mult for t in ts)} for pq, ts in cells.items()
    }
    clashes = _collisions(dim_cells, min_r=2)
    if clashes:
        entries = [
            (p, q, sum(t.rank(rest) for t in ts))
            for (p, q), ts in sorted(cells.items())
        ]
        return Indeterminate(space, entries, clashes)

    slots: dict[int, list[Term]] = {}
    for (p, q), ts in cells.items():
        slots.setdefault(p - q, []).extend(ts)
    return TermComplex(
        rest, {pos: EquivariantBundle(rest, ts) for pos, ts in slots.items()}
    )
