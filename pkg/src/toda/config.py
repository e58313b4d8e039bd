"""Problem configuration: algebra family, rank and singularity weights.

A TodaConfig derives everything downstream code needs from (family, rank,
gamma): the ambient size k, the palindromic A-side weights, the shifted
exponents mu, and both alpha vectors (the family's own and the ambient
A-side one).  The cross-family relations between the two alpha vectors are
verified exactly at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import as_fraction
from .lie import Algebra, a_side_alpha, alpha_from_gamma, check_gamma, symmetrized_gamma


@dataclass(frozen=True)
class TodaConfig:
    algebra: Algebra
    gamma: tuple[Fraction, ...]

    # Derived, filled in __post_init__.
    gamma_tilde: tuple[Fraction, ...] = field(init=False)
    mu_tilde: tuple[Fraction, ...] = field(init=False)
    alpha: tuple[Fraction, ...] = field(init=False)
    alpha_tilde: tuple[Fraction, ...] = field(init=False)

    def __post_init__(self):
        g = check_gamma(self.algebra, self.gamma)
        object.__setattr__(self, "gamma", g)
        gt = symmetrized_gamma(self.algebra, g)
        object.__setattr__(self, "gamma_tilde", gt)
        object.__setattr__(self, "mu_tilde", tuple(x + 1 for x in gt))
        alpha = alpha_from_gamma(self.algebra, g)
        object.__setattr__(self, "alpha", alpha)
        at = a_side_alpha(gt)
        object.__setattr__(self, "alpha_tilde", at)
        self._check_alpha_relations()

    def _check_alpha_relations(self):
        n = self.algebra.rank
        fam = self.algebra.family
        at, alpha = self.alpha_tilde, self.alpha
        if fam == "A":
            if at != alpha:
                raise ArithmeticError("A-side alphas disagree with the family alphas")
            return
        if fam == "C":
            expected = [alpha[i] for i in range(n)]
        else:
            expected = [(2 if i == n - 1 else 1) * alpha[i] for i in range(n)]
        for i in range(n):
            if at[i] != expected[i]:
                raise ArithmeticError(f"alpha relation fails at index {i + 1}")
        for i in range(len(at)):
            if at[i] != at[len(at) - 1 - i]:
                raise ArithmeticError("A-side alpha vector must be palindromic")

    @property
    def k(self) -> int:
        return self.algebra.k

    @property
    def rank(self) -> int:
        return self.algebra.rank

    @property
    def family(self) -> str:
        return self.algebra.family


def make_config(family: str, rank: int, gamma: Sequence) -> TodaConfig:
    return TodaConfig(Algebra(family, rank), tuple(as_fraction(x) for x in gamma))
