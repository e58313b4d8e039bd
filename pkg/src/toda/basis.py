"""Holomorphic basis vector, its Wronskian matrix and pairing normalization.

From exponents mu_1..mu_{k-1} (all > 0) the closed-form nested antiderivatives
of the power integrands are single monomials

    sigma_0 = 1,
    sigma_i = z^(mu_1+...+mu_i) / (mu_i (mu_i+mu_{i-1}) ... (mu_i+...+mu_1)),

and the basis entries nu_i = sigma_i / z^(xi_exponent) are monomials
chi_i * z^(beta_i) with strictly increasing exponents beta.  The k x k
Wronskian matrix of nu has determinant exactly 1, its column minors are
single monomials with a Vandermonde coefficient, and for palindromic mu the
pairing W^t J W has an exact zero/sign pattern that a Gram-Schmidt pass
turns into J itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .config import TodaConfig
from .exact import SCALAR_ONE, ZExpr, as_fraction
from .groups import GroupElement
from .linalg import det as generic_det
from .linalg import transpose

Z_ZERO = ZExpr.zero()
Z_ONE = ZExpr.one()


class StructureError(AssertionError):
    """An exact structural pattern required by the construction failed."""


def sigma_vector(mu: Sequence) -> tuple[ZExpr, ...]:
    """Closed-form nested antiderivatives of the powers z^(mu_i - 1)."""
    m = tuple(as_fraction(x) for x in mu)
    if any(x <= 0 for x in m):
        raise ValueError("all mu_i must be positive")
    out = [Z_ONE]
    for i in range(1, len(m) + 1):
        exponent = sum(m[:i], Fraction(0))
        denom = Fraction(1)
        partial = Fraction(0)
        for j in range(i - 1, -1, -1):
            partial += m[j]
            denom *= partial
        out.append(ZExpr.monomial(Fraction(1) / denom, exponent))
    return tuple(out)


@dataclass(frozen=True)
class NuVector:
    """Basis entries nu_i = chi_i z^(beta_i), beta strictly increasing."""

    nu: tuple[ZExpr, ...]
    chi: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    xi_exponent: Fraction

    @property
    def k(self) -> int:
        return len(self.nu)


def nu_vector(config: TodaConfig) -> NuVector:
    """Basis vector for a configuration, scaled by z^(-alpha_tilde_1)."""
    return nu_vector_from_mu(config.mu_tilde, config.alpha_tilde[0])


def nu_vector_from_mu(mu: Sequence, xi_exponent) -> NuVector:
    m = tuple(as_fraction(x) for x in mu)
    xi = as_fraction(xi_exponent)
    sigmas = sigma_vector(m)
    nus = []
    chis = []
    betas = []
    for s in sigmas:
        term = s.single_monomial()
        chis.append(term.coeff.re)
        betas.append(term.exp_z - xi)
        nus.append(ZExpr.monomial(term.coeff, term.exp_z - xi))
    for a, b in zip(betas, betas[1:]):
        if not a < b:
            raise StructureError("basis exponents must increase strictly")
    return NuVector(tuple(nus), tuple(chis), tuple(betas), xi)


@dataclass(frozen=True)
class WronskianMatrix:
    """Columns are successive z-derivatives of the basis vector; det = 1."""

    entries: tuple[tuple[ZExpr, ...], ...]
    nu: NuVector

    @property
    def k(self) -> int:
        return len(self.entries)


def wronskian(nu: NuVector) -> WronskianMatrix:
    k = nu.k
    cols: list[tuple[ZExpr, ...]] = [nu.nu]
    for _ in range(k - 1):
        cols.append(tuple(e.diff_z() for e in cols[-1]))
    entries = transpose(cols)
    w = WronskianMatrix(entries, nu)
    d = generic_det(entries, Z_ZERO, Z_ONE)
    if d != Z_ONE:
        raise StructureError(f"Wronskian determinant is {d}, expected 1")
    return w


def column_minor(w: WronskianMatrix, rows: Sequence[int]) -> ZExpr:
    """Minor over 0-based `rows` and the first len(rows) columns, closed form.

    Each basis entry is a monomial, so the minor collapses to a product of
    the coefficients, a Vandermonde factor in the exponents, and one power
    of z.
    """
    s = tuple(rows)
    m = len(s)
    if m == 0:
        return Z_ONE
    beta = w.nu.beta
    chi = w.nu.chi
    coeff = Fraction(1)
    for r in s:
        coeff *= chi[r]
    for a, b in combinations(s, 2):
        coeff *= beta[b] - beta[a]
    exponent = sum((beta[r] for r in s), Fraction(0)) - Fraction(m * (m - 1), 2)
    return ZExpr.monomial(coeff, exponent)


def pairing_matrix(w: WronskianMatrix, j: GroupElement) -> tuple[tuple[ZExpr, ...], ...]:
    """P = W^t J W with the exact zero / (-1)^i / zero pattern enforced.

    Entries above the secondary diagonal vanish, the secondary diagonal
    alternates +1/-1 down from the top-right corner, and the first band
    below it vanishes as well.  A violation (non-palindromic exponent data)
    raises StructureError.
    """
    k = w.k
    if j.dim != k:
        raise ValueError("form dimension mismatch")
    jz = tuple(
        tuple(ZExpr.const(x) for x in row) for row in j.entries
    )
    wt = transpose(w.entries)
    p = _mat_mul_z(_mat_mul_z(wt, jz), w.entries)
    for a in range(k):
        for b in range(k):
            entry = p[a][b]
            if a + b < k - 1 or a + b == k:
                if not entry.is_zero:
                    raise StructureError(
                        f"pairing entry ({a},{b}) should vanish, got {entry}"
                    )
            elif a + b == k - 1:
                want = ZExpr.const(1 if a % 2 == 0 else -1)
                if entry != want:
                    raise StructureError(
                        f"pairing entry ({a},{b}) should be {want}, got {entry}"
                    )
    return p


def _mat_mul_z(a, b):
    bt = transpose(b)
    return tuple(
        tuple(
            sum((x * y for x, y in zip(row, col)), Z_ZERO) for col in bt
        )
        for row in a
    )


def gram_schmidt_normalizer(
    w: WronskianMatrix, j: GroupElement
) -> tuple[tuple[ZExpr, ...], ...]:
    """Unipotent upper-triangular U with (WU)^t J (WU) = J, exactly.

    Works plane by plane from the outermost pair of columns inward: first
    normalize the self-pairing of the high column against the low one, then
    clear the pairing of every middle column against the high column.  All
    corrections add multiples of earlier columns only, so U stays unipotent
    upper-triangular; divisions are by the constant +-1 pairings of the
    secondary diagonal.
    """
    k = w.k
    pairing_matrix(w, j)  # rejects non-palindromic exponent data up front
    cols: list[list[ZExpr]] = [list(col) for col in transpose(w.entries)]
    u: list[list[ZExpr]] = [
        [Z_ONE if a == b else Z_ZERO for b in range(k)] for a in range(k)
    ]
    jrows = j.entries

    def pair(x: list[ZExpr], y: list[ZExpr]) -> ZExpr:
        acc = Z_ZERO
        for r in range(k):
            jv = jrows[r][k - 1 - r]
            term = x[r] * y[k - 1 - r]
            acc = acc + (term if jv.re > 0 else -term)
        return acc

    def add_multiple(target: int, source: int, factor: ZExpr):
        # column[target] += factor * column[source]; source < target keeps U upper.
        if factor.is_zero:
            return
        for r in range(k):
            cols[target][r] = cols[target][r] + factor * cols[source][r]
        for r in range(k):
            u[r][target] = u[r][target] + factor * u[r][source]

    for lo in range(k // 2):
        hi = k - 1 - lo
        e = pair(cols[lo], cols[hi]).constant_value()
        want = SCALAR_ONE if lo % 2 == 0 else -SCALAR_ONE
        if e != want:
            raise StructureError(f"plane ({lo},{hi}) pairing is {e}, expected {want}")
        q = pair(cols[hi], cols[hi])
        add_multiple(hi, lo, q.scale_div(-2 * e.re))
        for mid in range(lo + 1, hi):
            a = pair(cols[mid], cols[hi])
            add_multiple(mid, lo, a.scale_div(-e.re))
            low_pair = pair(cols[mid], cols[lo])
            if not low_pair.is_zero:
                raise StructureError(
                    f"column {mid} unexpectedly pairs with column {lo}"
                )
    # Exact verification of the final identity.
    jz = tuple(tuple(ZExpr.const(x) for x in row) for row in jrows)
    v = transpose(tuple(tuple(c) for c in cols))
    lhs = _mat_mul_z(_mat_mul_z(transpose(v), jz), v)
    for a in range(k):
        for b in range(k):
            want = ZExpr.const(jrows[a][b])
            if lhs[a][b] != want:
                raise StructureError("normalized columns do not reproduce the form")
    return tuple(tuple(row) for row in u)
