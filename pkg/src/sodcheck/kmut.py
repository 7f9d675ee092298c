"""K-theory lattices, Smith normal form, and the mutation calculus.

Two lattice flavors share one interface (``pair``, ``eq``, ``serre``):

* an ambient lattice presented by a Chow ring -- classes are Chern
  characters, the pairing is the exact Euler pairing, and the Serre twist
  multiplies by the character of the canonical bundle;
* a formal lattice on named generators -- the pairing is supplied by an
  oracle (typically backed by cohomology rules), optional integral relations
  identify classes, and the Serre twist acts on generator names.

Mutations are the universal K-class formulas

    left:   [L_E F] = [F] - chi(E, F) [E]
    right:  [R_E F] = [F] - chi(F, E) [E]

valid over either lattice.  L_E and R_E are mutually inverse exactly between
the numerical orthogonals (chi(-, E) = 0 resp. chi(E, -) = 0); the property
tests sample those domains by projecting with the opposite mutation first.

Membership of a class in the integer span of a relation set is decided by
Smith normal form over the integers, and every positive answer carries a
certificate (the integer combination) that is re-verified by multiplication.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence


# --------------------------------------------------------------------------
# integer matrices / Smith normal form

def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]):
    out = []
    for row in a:
        out.append(
            [sum(row[k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))]
        )
    return out


def mat_det(a: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(a)
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """U * A * V = D with U, V unimodular and D in Smith normal form.

    Returns (diag, U, V) where diag is the list of diagonal entries of D
    (nonnegative, each dividing the next, zeros at the end).
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot of minimal absolute value
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (
                    pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])
                ):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            # clear column t; a nonzero remainder is smaller than the pivot,
            # so promote it and restart the pass
            restart = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            # clear row t
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            # enforce divisibility of the remaining block by the pivot
            culprit = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            row_op(t, culprit, -1)  # add the offending row to the pivot row

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    diag = [a[i][i] for i in range(min(m, n))]
    return diag, u, v


def relation_membership(relations: Sequence[Sequence[int]],
                        target: Sequence[int]):
    """Is ``target`` an integer combination of the relation rows?

    Returns (True, certificate) with certificate . relations == target
    (re-verified exactly before returning), or (False, None).
    """
    target = list(map(int, target))
    rows = [list(map(int, r)) for r in relations]
    if not rows:
        return (not any(target), [] if not any(target) else None)
    n = len(rows[0])
    if len(target) != n:
        raise ValueError("target length does not match relation width")

    diag, u, v = smith_normal_form(rows)
    m = len(rows)
    # y . A = t  <=>  (y U^-1) D = t V; w := y U^-1
    tv = [sum(target[i] * v[i][j] for i in range(n)) for j in range(n)]
    w = [0] * m
    for j in range(n):
        d = diag[j] if j < len(diag) else 0
        if d:
            if tv[j] % d:
                return (False, None)
            if j < m:
                w[j] = tv[j] // d
        elif tv[j]:
            return (False, None)
    cert = [sum(w[i] * u[i][j] for i in range(m)) for j in range(m)]
    # exact verification of the certificate
    check = [
        sum(cert[i] * rows[i][j] for i in range(m)) for j in range(n)
    ]
    if check != target:
        return (False, None)
    return (True, cert)


# --------------------------------------------------------------------------
# lattices

class AmbientLattice:
    """K-classes as Chern characters over a Chow ring."""

    kind = "ambient"

    def __init__(self, ring, name: str | None = None):
        self.ring = ring
        self.name = name or ring.name

    def pair(self, a, b) -> int:
        from .chow import euler_pairing

        return euler_pairing(self.ring, a, b)

    def eq(self, a, b) -> bool:
        return a == b

    def serre(self, a, inverse: bool = False):
        tw = self.ring.canonical_ch
        if inverse:
            tw = tw.dual()  # exp(-c1) -> exp(c1): odd parts flip sign
        return a * tw

    def zero(self):
        return self.ring.zero()

    def __repr__(self) -> str:
        return f"AmbientLattice({self.name})"


class FormalClass:
    """Integer combination of named generators of a formal lattice."""

    __slots__ = ("lattice", "coeffs")

    def __init__(self, lattice: "FormalLattice", coeffs: dict[str, int]):
        self.lattice = lattice
        self.coeffs = {g: int(c) for g, c in coeffs.items() if c}
        for g in self.coeffs:
            lattice.ensure(g)

    def __add__(self, other: "FormalClass") -> "FormalClass":
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return FormalClass(self.lattice, out)

    def __sub__(self, other: "FormalClass") -> "FormalClass":
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) - c
        return FormalClass(self.lattice, out)

    def __neg__(self) -> "FormalClass":
        return FormalClass(self.lattice, {g: -c for g, c in self.coeffs.items()})

    def scale(self, k: int) -> "FormalClass":
        return FormalClass(
            self.lattice, {g: k * c for g, c in self.coeffs.items()}
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FormalClass)
            and self.lattice is other.lattice
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.lattice), tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for g, c in sorted(self.coeffs.items()):
            if c == 1:
                parts.append(f"[{g}]")
            elif c == -1:
                parts.append(f"-[{g}]")
            else:
                parts.append(f"{c}[{g}]")
        return " + ".join(parts).replace("+ -", "- ")


class FormalLattice:
    """Free module on named generators with an oracle-backed pairing.

    ``pair_oracle(a, b)`` must return the Euler pairing of two generators
    (or None when genuinely unknown, which raises at use).  Optional
    ``relations`` (dicts generator -> coefficient) define identifications;
    class equality is then membership of the difference in their span,
    decided by Smith normal form.  ``serre_name(name, inverse)`` gives the
    Serre-twist action on generators.
    """

    kind = "formal"

    def __init__(self, name: str,
                 pair_oracle: Callable[[str, str], int | None],
                 serre_name: Callable[[str, bool], str] | None = None,
                 relations: Iterable[dict[str, int]] = ()):
        self.name = name
        self.generators: list[str] = []
        self._index: dict[str, int] = {}
        self._oracle = pair_oracle
        self._serre_name = serre_name
        self.relations: list[dict[str, int]] = [dict(r) for r in relations]
        self._pair_cache: dict[tuple[str, str], int] = {}
        for r in self.relations:
            for g in r:
                self.ensure(g)

    def ensure(self, gen: str) -> None:
        if gen not in self._index:
            self._index[gen] = len(self.generators)
            self.generators.append(gen)

    def cls(self, gen: str) -> FormalClass:
        return FormalClass(self, {gen: 1})

    def combo(self, coeffs: dict[str, int]) -> FormalClass:
        return FormalClass(self, coeffs)

    def zero(self) -> FormalClass:
        return FormalClass(self, {})

    def gen_pair(self, a: str, b: str) -> int:
        key = (a, b)
        if key not in self._pair_cache:
            val = self._oracle(a, b)
            if val is None:
                raise LookupError(
                    f"pairing oracle of {self.name} cannot pair "
                    f"({a!r}, {b!r})"
                )
            self._pair_cache[key] = int(val)
        return self._pair_cache[key]

    def pair(self, a: FormalClass, b: FormalClass) -> int:
        total = 0
        for g, c in a.coeffs.items():
            for h, d in b.coeffs.items():
                total += c * d * self.gen_pair(g, h)
        return total

    def eq(self, a: FormalClass, b: FormalClass) -> bool:
        diff = a - b
        if diff.is_zero():
            return True
        if not self.relations:
            return False
        ok, _ = self.membership(diff)
        return ok

    def membership(self, target: FormalClass):
        """Certificate for target lying in the span of the relations."""
        gens = list(self.generators)
        idx = {g: i for i, g in enumerate(gens)}
        rows = []
        for r in self.relations:
            vec = [0] * len(gens)
            for g, c in r.items():
                vec[idx[g]] = c
            rows.append(vec)
        tvec = [0] * len(gens)
        for g, c in target.coeffs.items():
            tvec[idx[g]] = c
        return relation_membership(rows, tvec)

    def serre(self, a: FormalClass, inverse: bool = False) -> FormalClass:
        if self._serre_name is None:
            raise LookupError(f"{self.name} has no Serre-twist action")
        out: dict[str, int] = {}
        for g, c in a.coeffs.items():
            ng = self._serre_name(g, inverse)
            out[ng] = out.get(ng, 0) + c
        return FormalClass(self, out)

    def __repr__(self) -> str:
        return f"FormalLattice({self.name}, {len(self.generators)} generators)"


# --------------------------------------------------------------------------
# mutations

def mutate_left(lattice, e, f):
    """[L_E F] = [F] - chi(E, F) [E]."""
    return f - e.scale(lattice.pair(e, f))


def mutate_right(lattice, e, f):
    """[R_E F] = [F] - chi(F, E) [E]."""
    return f - e.scale(lattice.pair(f, e))


def is_exceptional(lattice, c) -> bool:
    return lattice.pair(c, c) == 1


def gram(lattice, classes: Sequence) -> list[list[int]]:
    """G[i][j] = chi(classes[i], classes[j])."""
    return [[lattice.pair(a, b) for b in classes] for a in classes]


def is_unitriangular(matrix: Sequence[Sequence[int]]) -> bool:
    """Unit diagonal, zeros strictly below: the numerical shadow of an
    exceptional collection."""
    n = len(matrix)
    for i in range(n):
        if matrix[i][i] != 1:
            return False
        for j in range(i):
            if matrix[i][j] != 0:
                return False
    return True


def integer_coordinates(basis_vectors, target):
    """Solve target = sum x_i basis_vectors[i] with integer x_i.

    Vectors are sequences of Fractions (coefficient tuples of ChowClasses).
    Returns the integer list or None (no rational solution, or a
    non-integral one).
    """
    from fractions import Fraction

    rows = [list(map(Fraction, v)) for v in basis_vectors]
    t = list(map(Fraction, target))
    if not rows:
        return [] if not any(t) else None
    ncols = len(rows[0])
    # solve x . rows = t by Gaussian elimination on the transposed system
    aug = [[rows[i][j] for i in range(len(rows))] + [t[j]]
           for j in range(ncols)]
    nvars = len(rows)
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        head = aug[r][c]
        aug[r] = [x / head for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    x = [Fraction(0)] * nvars
    for row_idx, c in enumerate(pivots):
        x[c] = aug[row_idx][nvars]
    # rows beyond the pivot rank must be consistent
    for i in range(r, len(aug)):
        if aug[i][nvars]:
            return None
    if any(v.denominator != 1 for v in x):
        return None
    # verify
    for j in range(ncols):
        if sum(x[i] * rows[i][j] for i in range(nvars)) != t[j]:
            return None
    return [int(v) for v in x]
