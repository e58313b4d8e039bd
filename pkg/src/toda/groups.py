"""Secondary-diagonal bilinear forms, symplectic/orthogonal matrices, minors.

The form J_k has entries (J_k)[i][k-1-i] = (-1)^i (0-indexed rows top-down);
it is skew for even k and symmetric for odd k, with J^-1 = (-1)^(k-1) J.
A matrix A belongs to the group when A^t J A = J and det A = 1; the even
case is the symplectic group, the odd case the special orthogonal group.

Also here: exact minors over index sets, the all-minors dynamic program, the
two-sided minor characterization of group membership, the reversed Cholesky
factorization H = B^dag B with B lower-triangular, the diagonal/unipotent
split, the constraint solver filling a unipotent group element from its free
coordinates, and a seeded sampler of exact group elements.

Index sets for the public minor API are 1-based sorted tuples, matching the
inversion iota(j) = k+1-j.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exact import (
    ExactScalar,
    SCALAR_ONE,
    SCALAR_ZERO,
    as_fraction,
    sqrt_fraction,
)
from .lie import Algebra, Root, coordinate_map
from .linalg import det as generic_det
from .linalg import identity_rows, mat_mul, transpose


class CardinalityError(ValueError):
    """Row and column index sets must have the same size."""


class IdentityViolation(AssertionError):
    """A minor identity required of group elements failed; carries (S, T)."""

    def __init__(self, S, T, lhs, rhs):
        super().__init__(f"minor identity fails at S={S}, T={T}: {lhs} != {rhs}")
        self.witness = (S, T)
        self.lhs = lhs
        self.rhs = rhs


class NotPositiveDefinite(ValueError):
    """Hermitian input has a non-positive leading principal minor."""

    def __init__(self, order, value):
        super().__init__(f"leading principal minor of order {order} is {value}")
        self.order = order
        self.value = value


class SingularDiagonal(ValueError):
    """Lower-triangular matrix has a zero diagonal entry."""


class NonzeroForbiddenCoordinate(ValueError):
    """A supplied coordinate is nonzero but its root is not integral."""

    def __init__(self, slot_name, value):
        super().__init__(f"coordinate {slot_name} = {value} must vanish")
        self.slot_name = slot_name


MatrixRows = tuple[tuple[ExactScalar, ...], ...]


def _coerce_rows(rows: Sequence[Sequence]) -> MatrixRows:
    out = []
    for row in rows:
        coerced = []
        for x in row:
            if isinstance(x, ExactScalar):
                coerced.append(x)
            else:
                coerced.append(ExactScalar.of(as_fraction(x)))
        out.append(tuple(coerced))
    return tuple(out)


@dataclass(frozen=True)
class GroupElement:
    """Square matrix over ExactScalar, optionally tagged Sp or SO."""

    entries: MatrixRows
    form_tag: str | None = None

    def __post_init__(self):
        k = len(self.entries)
        if any(len(row) != k for row in self.entries):
            raise ValueError("matrix must be square")
        if self.form_tag not in (None, "Sp", "SO"):
            raise ValueError(f"bad form tag {self.form_tag!r}")

    @staticmethod
    def from_rows(rows: Sequence[Sequence], form_tag: str | None = None) -> GroupElement:
        return GroupElement(_coerce_rows(rows), form_tag)

    @staticmethod
    def identity(k: int, form_tag: str | None = None) -> GroupElement:
        return GroupElement(identity_rows(k, SCALAR_ZERO, SCALAR_ONE), form_tag)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> ExactScalar:
        return self.entries[ij[0]][ij[1]]

    def __matmul__(self, other: GroupElement) -> GroupElement:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return GroupElement(mat_mul(self.entries, other.entries, SCALAR_ZERO))

    def transpose(self) -> GroupElement:
        return GroupElement(transpose(self.entries))

    def conj_transpose(self) -> GroupElement:
        return GroupElement(
            tuple(tuple(x.conjugate() for x in row) for row in transpose(self.entries))
        )

    def det(self) -> ExactScalar:
        return generic_det(self.entries, SCALAR_ZERO, SCALAR_ONE)

    def is_hermitian(self) -> bool:
        k = self.dim
        return all(
            self.entries[i][j] == self.entries[j][i].conjugate()
            for i in range(k)
            for j in range(k)
        )


def form_matrix(k: int) -> GroupElement:
    """The secondary-diagonal form J_k with alternating signs."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rows = [[SCALAR_ZERO] * k for _ in range(k)]
    for i in range(k):
        rows[i][k - 1 - i] = ExactScalar.of(1 if i % 2 == 0 else -1)
    return GroupElement(tuple(tuple(r) for r in rows))


def expected_tag(k: int) -> str:
    return "Sp" if k % 2 == 0 else "SO"


def is_in_group(a: GroupElement) -> bool:
    """Exact test of A^t J A = J together with det A = 1."""
    j = form_matrix(a.dim)
    lhs = (a.transpose() @ j @ a).entries
    if lhs != j.entries:
        return False
    return a.det() == SCALAR_ONE


# -- index sets (1-based, sorted) --------------------------------------


def _check_index_set(s: Sequence[int], k: int) -> tuple[int, ...]:
    t = tuple(s)
    if any(not 1 <= x <= k for x in t) or list(t) != sorted(set(t)):
        raise ValueError(f"index set {s} must be strictly increasing within 1..{k}")
    return t


def complement(s: Sequence[int], k: int) -> tuple[int, ...]:
    inside = set(s)
    return tuple(x for x in range(1, k + 1) if x not in inside)


def iota(s: Sequence[int], k: int) -> tuple[int, ...]:
    """Index inversion j -> k+1-j, re-sorted increasing."""
    return tuple(sorted(k + 1 - x for x in s))


def minor(a: GroupElement, rows: Sequence[int], cols: Sequence[int]) -> ExactScalar:
    """Exact determinant of the submatrix with 1-based row/column sets."""
    k = a.dim
    s = _check_index_set(rows, k)
    t = _check_index_set(cols, k)
    if len(s) != len(t):
        raise CardinalityError(f"|rows|={len(s)} but |cols|={len(t)}")
    if not s:
        return SCALAR_ONE
    sub = tuple(tuple(a.entries[i - 1][j - 1] for j in t) for i in s)
    return generic_det(sub, SCALAR_ZERO, SCALAR_ONE)


def all_minors(a: GroupElement) -> dict[tuple[tuple[int, ...], tuple[int, ...]], ExactScalar]:
    """Every minor of A, keyed by 1-based (rows, cols) sorted tuples.

    Built size by size with Laplace expansion along the last column, so the
    whole table costs O(sum_m m * C(k,m)^2) scalar operations.
    """
    k = a.dim
    table: dict[tuple[tuple[int, ...], tuple[int, ...]], ExactScalar] = {((), ()): SCALAR_ONE}
    prev: dict[tuple[tuple[int, ...], tuple[int, ...]], ExactScalar] = {((), ()): SCALAR_ONE}
    for m in range(1, k + 1):
        cur: dict[tuple[tuple[int, ...], tuple[int, ...]], ExactScalar] = {}
        for s in combinations(range(1, k + 1), m):
            for t in combinations(range(1, k + 1), m):
                last_col = t[-1]
                acc = SCALAR_ZERO
                for pos in range(m):
                    entry = a.entries[s[pos] - 1][last_col - 1]
                    if entry.is_zero:
                        continue
                    sub = prev[(s[:pos] + s[pos + 1:], t[:-1])]
                    term = entry * sub
                    acc = acc + term if (pos + m) % 2 != 0 else acc - term
                cur[(s, t)] = acc
        table.update(cur)
        prev = cur
    return table


@dataclass(frozen=True)
class MinorIdentityReport:
    dim: int
    tag: str
    pairs_checked: int
    exhaustive: bool


def check_minor_identity(
    a: GroupElement, *, exhaustive_limit: int = 7, samples: int = 2000, seed: int = 0
) -> MinorIdentityReport:
    """Verify A[S,T] == A[iota(comp S), iota(comp T)] for same-size S, T.

    Exhaustive for dim <= exhaustive_limit, sampled beyond.  Requires the
    input to be exactly in its group; raises IdentityViolation with the
    witness pair on failure.
    """
    if not is_in_group(a):
        raise ValueError("input is not exactly symplectic/orthogonal")
    k = a.dim
    if k <= exhaustive_limit:
        table = all_minors(a)
        checked = 0
        for (s, t), val in table.items():
            key = (iota(complement(s, k), k), iota(complement(t, k), k))
            other = table[key]
            if val != other:
                raise IdentityViolation(s, t, val, other)
            checked += 1
        return MinorIdentityReport(k, expected_tag(k), checked, True)
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        m = rng.randint(1, k - 1)
        s = tuple(sorted(rng.sample(range(1, k + 1), m)))
        t = tuple(sorted(rng.sample(range(1, k + 1), m)))
        lhs = minor(a, s, t)
        rhs = minor(a, iota(complement(s, k), k), iota(complement(t, k), k))
        if lhs != rhs:
            raise IdentityViolation(s, t, lhs, rhs)
        checked += 1
    return MinorIdentityReport(k, expected_tag(k), checked, False)


def classify_by_minors(a: GroupElement) -> str | None:
    """Recover the group tag of a determinant-1 matrix from entry-level minors.

    Tests a[s][t] == minor over (complement of iota(s), complement of iota(t))
    for all 1 <= s, t <= k.  Returns "Sp"/"SO" by parity when all hold (and
    the full group relation is then asserted), else None.
    """
    if a.det() != SCALAR_ONE:
        raise ValueError("classification requires det A = 1")
    k = a.dim
    for s in range(1, k + 1):
        for t in range(1, k + 1):
            big = minor(a, complement((k + 1 - s,), k), complement((k + 1 - t,), k))
            if a.entries[s - 1][t - 1] != big:
                return None
    tag = expected_tag(k)
    if not is_in_group(a):
        raise ArithmeticError("minor tests passed but the group relation fails")
    return tag


# -- Cholesky in the reversed orientation -------------------------------


def ul_cholesky(h: GroupElement) -> GroupElement:
    """Factor a Hermitian positive-definite H as B^dag B, B lower-triangular.

    Positive-definiteness is tested exactly through the leading principal
    minors.  Elimination runs from the last row upward; each diagonal entry
    is the exact square root of a rational, so the input must be a B^dag B
    product of a rational matrix (otherwise NotASquareError propagates).
    """
    k = h.dim
    if not h.is_hermitian():
        raise ValueError("input must be Hermitian")
    for m in range(1, k + 1):
        lead = minor(h, tuple(range(1, m + 1)), tuple(range(1, m + 1)))
        if not lead.is_real or lead.re <= 0:
            raise NotPositiveDefinite(m, lead)
    rows: list[list[ExactScalar]] = [[SCALAR_ZERO] * k for _ in range(k)]
    for i in range(k - 1, -1, -1):
        acc = h.entries[i][i]
        for r in range(i + 1, k):
            acc = acc - rows[r][i].conjugate() * rows[r][i]
        diag = sqrt_fraction(acc.re)
        rows[i][i] = ExactScalar.of(diag)
        for j in range(i - 1, -1, -1):
            s = h.entries[i][j]
            for r in range(i + 1, k):
                s = s - rows[r][i].conjugate() * rows[r][j]
            rows[i][j] = s / rows[i][i]
    b = GroupElement(tuple(tuple(r) for r in rows))
    if (b.conj_transpose() @ b).entries != h.entries:
        raise ArithmeticError("factorization failed to reproduce the input")
    return b


def split_diagonal_unipotent(b: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Split lower-triangular B as (diagonal, unipotent) with B = diag * unip."""
    k = b.dim
    for i in range(k):
        for j in range(i + 1, k):
            if not b.entries[i][j].is_zero:
                raise ValueError("input must be lower-triangular")
        if b.entries[i][i].is_zero:
            raise SingularDiagonal(f"zero diagonal entry at {i}")
    diag = tuple(
        tuple(b.entries[i][i] if i == j else SCALAR_ZERO for j in range(k)) for i in range(k)
    )
    unip = tuple(
        tuple(b.entries[i][j] / b.entries[i][i] for j in range(k)) for i in range(k)
    )
    return GroupElement(diag), GroupElement(unip)


# -- unipotent coordinates ----------------------------------------------


class UnipotentCoords:
    """Values for the free coordinates of a unipotent lower-triangular element.

    Keys are (row, col) pairs that must be free slots of the algebra's
    coordinate map; missing slots read as zero.
    """

    def __init__(self, algebra: Algebra, values: Mapping[tuple[int, int], ExactScalar] | None = None):
        self.algebra = algebra
        free = {(s.row, s.col) for s in coordinate_map(algebra)}
        vals: dict[tuple[int, int], ExactScalar] = {}
        for key, raw in (values or {}).items():
            if key not in free:
                raise KeyError(f"({key[0]},{key[1]}) is not a free coordinate slot of {algebra}")
            v = raw if isinstance(raw, ExactScalar) else ExactScalar.of(as_fraction(raw))
            if not v.is_zero:
                vals[key] = v
        self.values = vals

    def get(self, i: int, j: int) -> ExactScalar:
        return self.values.get((i, j), SCALAR_ZERO)

    def items(self):
        return sorted(self.values.items())

    def __eq__(self, other):
        return (
            isinstance(other, UnipotentCoords)
            and self.algebra == other.algebra
            and self.values == other.values
        )

    def __repr__(self):
        body = ", ".join(f"c{i}{j}={v}" for (i, j), v in self.items())
        return f"UnipotentCoords({self.algebra}, {body})"


def unipotent_from_coords(algebra: Algebra, coords: UnipotentCoords) -> GroupElement:
    """Unique unipotent lower-triangular group element extending the free slots.

    Dependent entries are solved by forward substitution in increasing band
    i-j: each constraint row of C^t J C = J is linear in the single newest
    unknown.  For family A there are no constraints.
    """
    if coords.algebra != algebra:
        raise ValueError("coordinate set belongs to a different algebra")
    k = algebra.k
    rows: list[list[ExactScalar]] = [
        [SCALAR_ONE if i == j else SCALAR_ZERO for j in range(k)] for i in range(k)
    ]
    free = {(s.row, s.col) for s in coordinate_map(algebra)}
    for (i, j), v in coords.values.items():
        rows[i][j] = v
    if algebra.family == "A":
        return GroupElement(tuple(tuple(r) for r in rows))

    dependent = [
        (i, j) for j in range(k) for i in range(j + 1, k) if (i, j) not in free
    ]
    dependent.sort(key=lambda ij: (ij[0] - ij[1], ij[1]))
    for (i, j) in dependent:
        p, q = k - 1 - i, j
        coeff = SCALAR_ZERO
        const = SCALAR_ZERO
        for r in range(p, k - q):
            sign = -1 if r % 2 else 1
            left = (r, p)
            right = (k - 1 - r, q)
            if left == (i, j):
                partner = rows[right[0]][right[1]]
                coeff = coeff + sign * partner
            elif right == (i, j):
                partner = rows[left[0]][left[1]]
                coeff = coeff + sign * partner
            else:
                term = rows[left[0]][left[1]] * rows[right[0]][right[1]]
                const = const + sign * term
        # Target is J[p][q]; here p + q < k - 1 always, so the target is 0.
        rows[i][j] = (-const) / coeff
    g = GroupElement(tuple(tuple(r) for r in rows), expected_tag(k))
    jm = form_matrix(k)
    if (g.transpose() @ jm @ g).entries != jm.entries:
        raise ArithmeticError("constraint solver produced a non-group element")
    return g


def extract_free_coords(algebra: Algebra, g: GroupElement) -> UnipotentCoords:
    """Read the free coordinates back off a unipotent lower-triangular element."""
    vals = {
        (s.row, s.col): g.entries[s.row][s.col]
        for s in coordinate_map(algebra)
        if not g.entries[s.row][s.col].is_zero
    }
    return UnipotentCoords(algebra, vals)


def restrict_to_ngamma(
    coords: UnipotentCoords, integral_roots: Iterable[Root], *, strict: bool = False
) -> tuple[UnipotentCoords, tuple[str, ...]]:
    """Zero every free coordinate whose root is outside the integral set.

    Returns the restricted coordinates and the names of the slots that were
    zeroed.  In strict mode a nonzero forbidden coordinate raises instead.
    """
    allowed = {r.coeffs for r in integral_roots}
    slots = {(s.row, s.col): s for s in coordinate_map(coords.algebra)}
    kept: dict[tuple[int, int], ExactScalar] = {}
    zeroed: list[str] = []
    for key, v in coords.items():
        slot = slots[key]
        if slot.root.coeffs in allowed:
            kept[key] = v
        else:
            if strict:
                raise NonzeroForbiddenCoordinate(slot.name, v)
            zeroed.append(slot.name)
    return UnipotentCoords(coords.algebra, kept), tuple(zeroed)


# -- sampling -------------------------------------------------------------


def _random_fraction(rng: random.Random, bound: int) -> Fraction:
    num = rng.randint(1, bound) * rng.choice((1, -1))
    den = rng.randint(1, 3)
    return Fraction(num, den)


def random_coords(algebra: Algebra, rng: random.Random, bound: int) -> UnipotentCoords:
    """Free coordinates with nonzero small rational real and imaginary parts."""
    if bound <= 0:
        return UnipotentCoords(algebra)
    vals = {
        (s.row, s.col): ExactScalar(_random_fraction(rng, bound), _random_fraction(rng, bound))
        for s in coordinate_map(algebra)
    }
    return UnipotentCoords(algebra, vals)


def random_paired_diagonal(k: int, rng: random.Random, bound: int) -> tuple[Fraction, ...]:
    """Positive diagonal with entry_i * entry_{k-1-i} = 1 (middle entry 1 for odd k)."""
    half = []
    for _ in range(k // 2):
        if bound <= 0:
            half.append(Fraction(1))
        else:
            half.append(Fraction(rng.randint(1, bound), rng.randint(1, bound)))
    full = list(half)
    if k % 2 == 1:
        full.append(Fraction(1))
    full.extend(1 / x for x in reversed(half))
    return tuple(full)


def diagonal_element(diag: Sequence[Fraction]) -> GroupElement:
    k = len(diag)
    return GroupElement.from_rows(
        [[diag[i] if i == j else 0 for j in range(k)] for i in range(k)]
    )


def sample_group_element(algebra: Algebra, seed: int, bound: int = 3) -> GroupElement:
    """Seeded exact group element: lower-unipotent x diagonal x upper-unipotent.

    Both unipotent factors are constraint-solved, the diagonal satisfies the
    pairing condition, so the product is in the group by construction.  With
    bound 0 the sample is the identity.
    """
    if algebra.family == "A":
        raise ValueError("sampler is defined for the C and B families")
    rng = random.Random(seed)
    c1 = unipotent_from_coords(algebra, random_coords(algebra, rng, bound))
    lam = diagonal_element(random_paired_diagonal(algebra.k, rng, bound))
    c2 = unipotent_from_coords(algebra, random_coords(algebra, rng, bound))
    g = GroupElement((c1 @ lam @ c2.transpose()).entries, expected_tag(algebra.k))
    if not is_in_group(g):
        raise ArithmeticError("sampler produced a non-group element")
    return g


def sample_positive_hermitian(algebra: Algebra, seed: int, bound: int = 3) -> GroupElement:
    """Seeded Hermitian positive-definite group element H = B^dag B, B = diag * unip."""
    rng = random.Random(seed)
    c = unipotent_from_coords(algebra, random_coords(algebra, rng, bound))
    lam = diagonal_element(random_paired_diagonal(algebra.k, rng, bound))
    b = lam @ c
    h = GroupElement((b.conj_transpose() @ b).entries, expected_tag(algebra.k))
    if not is_in_group(h):
        raise ArithmeticError("Hermitian sample left the group")
    return h
