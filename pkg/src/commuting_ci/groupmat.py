"""Coordinate matrices of triangular matrix groups and their commutator words.

Two group families are supported: upper triangular matrices with unit
diagonal ("unipotent") and with invertible diagonal ("borel").  Each of the
2g copies in a genus-g word gets its own block of entry variables; borel
copies additionally get one inverse variable per diagonal entry, with the
unit relation d * x_diag = 1 registered on the ring and rewritten eagerly
inside every matrix operation, so no fractions ever appear.

The variable order is fixed and deterministic: the x-block of copy 1, then
the y-block of copy 1, then copy 2, and so on, each block row-major, with a
borel copy's inverse variables appended directly after its entry block.
Entry variables are named ``x_t_i_j`` / ``y_t_i_j`` (t the copy pair index);
inverse variables are named ``d_s_i`` where s = 1..2g numbers the matrices
X_1, Y_1, X_2, Y_2, ... in order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .polyring import Field, Polynomial, QQ, RingDescriptor, format_poly

UNIPOTENT = "unipotent"
BOREL = "borel"

_KIND_ALIASES = {
    "un": UNIPOTENT,
    "unipotent": UNIPOTENT,
    "u": UNIPOTENT,
    "bn": BOREL,
    "borel": BOREL,
    "b": BOREL,
}


def normalize_kind(kind: str) -> str:
    try:
        return _KIND_ALIASES[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown group kind {kind!r} (expected 'un' or 'bn')") from None


class ShapeError(ValueError):
    """A matrix does not have the coordinate shape required here."""


class MissingInverseVariableError(ValueError):
    """A diagonal entry has no registered inverse variable."""


class VanishingPatternError(RuntimeError):
    """The commutator word violated its forced vanishing pattern.

    This cannot happen for correct arithmetic; it aborts the run instead of
    producing a wrong generator sequence.
    """


class PolyMatrix:
    """Square matrix of polynomials over one shared ring (immutable)."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: RingDescriptor, rows: Sequence[Sequence[Polynomial]]) -> None:
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ShapeError("matrix must be square")
            for p in row:
                if p.ring != ring:
                    raise ShapeError("all entries must share one ring")
        self.ring = ring
        self.n = n
        self.rows = tuple(tuple(row) for row in rows)

    @staticmethod
    def identity(ring: RingDescriptor, n: int) -> "PolyMatrix":
        one = ring.one()
        zero = ring.zero()
        return PolyMatrix(
            ring, [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    def entry(self, i: int, j: int) -> Polynomial:
        """1-based entry access, matching the (i, j) position convention."""
        return self.rows[i - 1][j - 1]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ring != other.ring or self.n != other.n:
            raise ShapeError("matrix shapes or rings do not match")
        n = self.n
        reduce_units = bool(self.ring.unit_pairs)
        zero = self.ring.zero()
        out: List[List[Polynomial]] = []
        for i in range(n):
            arow = self.rows[i]
            orow: List[Polynomial] = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a = arow[k]
                    if a.is_zero:
                        continue
                    b = other.rows[k][j]
                    if b.is_zero:
                        continue
                    acc = acc + a * b
                if reduce_units:
                    acc = acc.reduce_units()
                orow.append(acc)
            out.append(orow)
        return PolyMatrix(self.ring, out)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ring != other.ring or self.n != other.n:
            raise ShapeError("matrix shapes or rings do not match")
        return PolyMatrix(
            self.ring,
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.n)]
                for i in range(self.n)
            ],
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ring != other.ring or self.n != other.n:
            raise ShapeError("matrix shapes or rings do not match")
        return PolyMatrix(
            self.ring,
            [
                [self.rows[i][j] - other.rows[i][j] for j in range(self.n)]
                for i in range(self.n)
            ],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ring, self.rows))

    def __repr__(self) -> str:
        return f"PolyMatrix({self.n}x{self.n})"


def commutator_ring(kind: str, n: int, genus: int, field: Field = QQ) -> RingDescriptor:
    """Coordinate ring of 2*genus copies of the group, with internal weights."""
    kind = normalize_kind(kind)
    if n < 2:
        raise ValueError("matrix size must be at least 2")
    if genus < 1:
        raise ValueError("genus must be at least 1")
    variables: List[Tuple[str, int]] = []
    unit_pairs: List[Tuple[int, int]] = []
    for s in range(1, 2 * genus + 1):
        t = (s + 1) // 2
        prefix = "x" if s % 2 else "y"
        diag_index: Dict[int, int] = {}
        if kind == UNIPOTENT:
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    variables.append((f"{prefix}_{t}_{i}_{j}", j - i))
        else:
            for i in range(1, n + 1):
                for j in range(i, n + 1):
                    if i == j:
                        diag_index[i] = len(variables)
                    variables.append((f"{prefix}_{t}_{i}_{j}", j - i))
            for i in range(1, n + 1):
                unit_pairs.append((len(variables), diag_index[i]))
                variables.append((f"d_{s}_{i}", 0))
    return RingDescriptor(variables, field, tuple(unit_pairs))


def coordinate_matrix(
    ring: RingDescriptor, kind: str, n: int, copy: int, role: str
) -> PolyMatrix:
    """Generic matrix of the `copy`-th x- or y-factor inside `ring`."""
    kind = normalize_kind(kind)
    if n < 2:
        raise ValueError("matrix size must be at least 2")
    if role not in ("x", "y"):
        raise ValueError("role must be 'x' or 'y'")
    rows: List[List[Polynomial]] = []
    for i in range(1, n + 1):
        row: List[Polynomial] = []
        for j in range(1, n + 1):
            if j < i:
                row.append(ring.zero())
            elif j == i and kind == UNIPOTENT:
                row.append(ring.one())
            else:
                row.append(ring.gen(f"{role}_{copy}_{i}_{j}"))
        rows.append(row)
    return PolyMatrix(ring, rows)


def inverse(M: PolyMatrix, kind: str) -> PolyMatrix:
    """Exact two-sided inverse of a coordinate-shaped triangular matrix.

    Unipotent: I + N with N strictly upper, inverted by the alternating
    geometric sum.  Borel: the diagonal is cleared with the registered
    inverse variables first; unit relations are rewritten eagerly so the
    result is polynomial in the entry and inverse variables.
    """
    kind = normalize_kind(kind)
    ring = M.ring
    n = M.n
    for i in range(n):
        for j in range(i):
            if not M.rows[i][j].is_zero:
                raise ShapeError("matrix is not upper triangular")
    if kind == UNIPOTENT:
        one = ring.one()
        for i in range(n):
            if M.rows[i][i] != one:
                raise ShapeError("unipotent matrix needs unit diagonal")
        dinv = PolyMatrix.identity(ring, n)
        A = M
    else:
        partner = {b: a for a, b in ring.unit_pairs}
        dinv_rows = [[ring.zero() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            diag = M.rows[i][i]
            items = list(diag.terms.items())
            if len(items) != 1 or items[0][1] != 1 or sum(items[0][0]) != 1:
                raise ShapeError("borel diagonal entries must be single variables")
            var_idx = items[0][0].index(1)
            if var_idx not in partner:
                raise MissingInverseVariableError(
                    f"no inverse variable registered for {ring.variables[var_idx]!r}"
                )
            dinv_rows[i][i] = ring.gen(partner[var_idx])
        dinv = PolyMatrix(ring, dinv_rows)
        A = dinv @ M  # unit-reduced: unit diagonal, entries carry d-variables
    N = A - PolyMatrix.identity(ring, n)
    acc = PolyMatrix.identity(ring, n)
    power = PolyMatrix.identity(ring, n)
    for k in range(1, n):
        power = power @ N
        acc = acc - power if k % 2 else acc + power
    return acc @ dinv


@dataclass(frozen=True)
class CommutatorSystem:
    """The commutator word of a group family, with its generator sequence.

    `generators` holds the 1-based positions (i, j) and entries that present
    the variety; `zero_positions` are the entries forced to vanish, which
    only contribute an exterior tensor factor downstream.  Borel systems also
    carry the unit relations d * x_diag - 1, one per diagonal entry per copy.
    """

    kind: str
    n: int
    genus: int
    ring: RingDescriptor
    word_matrix: PolyMatrix
    generators: Tuple[Tuple[Tuple[int, int], Polynomial], ...]
    unit_relations: Tuple[Polynomial, ...]
    zero_positions: Tuple[Tuple[int, int], ...]

    def generator_at(self, i: int, j: int) -> Polynomial:
        for (a, b), f in self.generators:
            if (a, b) == (i, j):
                return f
        raise KeyError(f"no generator at position ({i}, {j})")


def commutator_word(kind: str, n: int, genus: int, field: Field = QQ) -> CommutatorSystem:
    """Build the product of commutators and extract the generator sequence.

    For the unipotent family the word matrix is the product itself; its
    subdiagonal entries must vanish identically and every entry above them is
    weight-homogeneous of weight j - i.  For the borel family the word matrix
    is the product minus the identity and the diagonal must vanish.  Any
    violation aborts: it would mean the arithmetic itself is broken.
    """
    kind = normalize_kind(kind)
    ring = commutator_ring(kind, n, genus, field)
    word = PolyMatrix.identity(ring, n)
    for t in range(1, genus + 1):
        X = coordinate_matrix(ring, kind, n, t, "x")
        Y = coordinate_matrix(ring, kind, n, t, "y")
        word = word @ X @ Y @ inverse(X, kind) @ inverse(Y, kind)

    F = word if kind == UNIPOTENT else word - PolyMatrix.identity(ring, n)

    zero_positions: List[Tuple[int, int]] = []
    generators: List[Tuple[Tuple[int, int], Polynomial]] = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            e = F.entry(i, j)
            if j < i:
                if not e.is_zero:
                    raise VanishingPatternError(f"nonzero below the diagonal at ({i}, {j})")
            elif j == i:
                expected = ring.one() if kind == UNIPOTENT else ring.zero()
                if e != expected:
                    raise VanishingPatternError(f"diagonal entry at ({i}, {i}) not forced value")
                if kind == BOREL:
                    zero_positions.append((i, i))
            elif kind == UNIPOTENT and j == i + 1:
                if not e.is_zero:
                    raise VanishingPatternError(f"subdiagonal entry at ({i}, {j}) is nonzero")
                zero_positions.append((i, j))
            else:
                if e.weight_of() != j - i:
                    raise VanishingPatternError(
                        f"entry at ({i}, {j}) is not weight-homogeneous of weight {j - i}"
                    )
                generators.append(((i, j), e))

    unit_relations: List[Polynomial] = []
    if kind == BOREL:
        for s in range(1, 2 * genus + 1):
            t = (s + 1) // 2
            prefix = "x" if s % 2 else "y"
            for i in range(1, n + 1):
                rel = ring.gen(f"d_{s}_{i}") * ring.gen(f"{prefix}_{t}_{i}_{i}") - 1
                unit_relations.append(rel)

    return CommutatorSystem(
        kind,
        n,
        genus,
        ring,
        F,
        tuple(generators),
        tuple(unit_relations),
        tuple(zero_positions),
    )


def dump_generators(system: CommutatorSystem, order=None) -> str:
    """Generator list, one line per position, in the textual polynomial format."""
    lines = [
        f"f[{i}][{j}]: {format_poly(f, order)}" for (i, j), f in system.generators
    ]
    return "\n".join(lines)
