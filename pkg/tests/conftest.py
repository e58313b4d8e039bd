import random
from fractions import Fraction

from toda import SolutionParams
from toda.groups import random_coords, restrict_to_ngamma
from toda.lie import delta_gamma


def random_gamma(rng: random.Random, rank: int, max_den: int = 4) -> tuple[Fraction, ...]:
    """Rational weights > -1 with small denominators."""
    out = []
    for _ in range(rank):
        den = rng.randint(1, max_den)
        num = rng.randint(-den + 1, 2 * den)
        out.append(Fraction(num, den))
    return tuple(out)


def random_palindromic_gamma(rng: random.Random, rank: int) -> tuple[Fraction, ...]:
    """A-family weights whose symmetrized vector is itself (palindrome)."""
    g = list(random_gamma(rng, (rank + 1) // 2))
    full = g + list(reversed(g[: rank // 2]))
    return tuple(full)


def random_params(config, rng: random.Random, bound: int = 2, restrict: bool = True) -> SolutionParams:
    """Random positive diagonal weights and (optionally restricted) coordinates."""
    alg = config.algebra
    if config.family == "A":
        lams = [Fraction(rng.randint(1, bound + 1), rng.randint(1, bound + 1)) for _ in range(config.k - 1)]
        prod = Fraction(1)
        for x in lams:
            prod *= x
        lams.append(1 / prod)
        coords = random_coords(alg, rng, bound)
    else:
        lams = [Fraction(rng.randint(1, bound + 1), rng.randint(1, bound + 1)) for _ in range(config.k // 2)]
        coords = random_coords(alg, rng, bound)
    if restrict:
        coords, _ = restrict_to_ngamma(coords, delta_gamma(alg, config.gamma))
    return SolutionParams.of(lams, coords)
