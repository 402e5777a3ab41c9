"""Exact checkers for the growth inequalities behind the radius choice.

Everything here is integer or :class:`fractions.Fraction` arithmetic.  Sources
are either a finite :class:`~coarsecolor.graph.Graph` (checked at every vertex)
or a :class:`GrowthFormula` giving closed-form sphere sizes of an infinite
vertex-transitive family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import Callable, Iterable, Sequence, Union

from . import kernels
from .graph import BudgetExceeded, Graph, sphere_sizes


class ParameterError(ValueError):
    """Parameters outside the range where a check is defined."""


class InsufficientData(ValueError):
    """A finite growth sequence is too short for the requested radius."""


@dataclass(frozen=True)
class GrowthFormula:
    """Sphere sizes ``sigma(r)`` of a family, uniform over base points.

    ``max_radius`` is ``None`` for closed forms and the last known radius for
    tabulated sequences.
    """

    name: str
    delta: int
    sigma_fn: Callable[[int], int] = field(repr=False)
    beta_fn: Callable[[int], int] | None = field(default=None, repr=False)
    max_radius: int | None = None

    def _check(self, r: int) -> None:
        if r < 0:
            raise ParameterError("radius must be nonnegative")
        if self.max_radius is not None and r > self.max_radius:
            raise InsufficientData(f"{self.name}: growth data stops at radius {self.max_radius}, need {r}")

    def sigma(self, r: int) -> int:
        self._check(r)
        return self.sigma_fn(r)

    def beta(self, r: int) -> int:
        self._check(r)
        if self.beta_fn is not None:
            return self.beta_fn(r)
        return sum(self.sigma_fn(s) for s in range(r + 1))


def path_formula() -> GrowthFormula:
    """Two-sided infinite path."""
    return GrowthFormula("path", 2, lambda r: 1 if r == 0 else 2, lambda r: 2 * r + 1)


def tree_formula(d: int) -> GrowthFormula:
    """The ``d``-regular tree."""
    if d < 3:
        raise ParameterError("regular tree needs degree >= 3")

    def beta(r):
        return 1 + d * ((d - 1) ** r - 1) // (d - 2)

    return GrowthFormula(f"tree{d}", d, lambda r: 1 if r == 0 else d * (d - 1) ** (r - 1), beta)


def grid_formula() -> GrowthFormula:
    """The square lattice Z^2."""
    return GrowthFormula("grid", 4, lambda r: 1 if r == 0 else 4 * r, lambda r: 2 * r * r + 2 * r + 1)


def sequence_formula(sigma: Sequence[int], delta: int, name: str = "table") -> GrowthFormula:
    """Tabulated sphere sizes ``sigma[0..k]``; radii beyond ``k`` raise :class:`InsufficientData`."""
    table = list(sigma)
    return GrowthFormula(name, delta, lambda r: table[r], None, len(table) - 1)


def formula_by_name(name: str) -> GrowthFormula:
    if name == "path":
        return path_formula()
    if name == "grid":
        return grid_formula()
    if name.startswith("tree") and name[4:].isdigit():
        return tree_formula(int(name[4:]))
    raise ParameterError(f"unknown growth family {name!r} (path, grid, tree<d>)")


GrowthSource = Union[Graph, GrowthFormula]


def _profiles(source: GrowthSource, r_max: int, vertices: Iterable[int] | None = None):
    """Yield ``(label, sigma, beta)`` with exact int lists for radii ``0..r_max``."""
    if isinstance(source, GrowthFormula):
        sigma = [source.sigma(r) for r in range(r_max + 1)]
        beta = []
        total = 0
        for s in sigma:
            total += s
            beta.append(total)
        if source.beta_fn is not None and beta[-1] != source.beta(r_max):
            raise AssertionError(f"{source.name}: closed-form beta disagrees with summed spheres")
        yield source.name, sigma, beta
        return
    verts = range(source.n) if vertices is None else vertices
    for x in verts:
        sigma = [int(s) for s in sphere_sizes(source, x, r_max)]
        sigma += [0] * (r_max + 1 - len(sigma))
        beta = []
        total = 0
        for s in sigma:
            total += s
            beta.append(total)
        yield x, sigma, beta


def _delta(source: GrowthSource) -> int:
    return source.delta if isinstance(source, GrowthFormula) else source.max_degree


# -- constrained product minimization ------------------------------------------------


@dataclass
class OracleResult:
    delta: int
    R: int
    Q: int
    min_value: int | None
    minimizers: list[tuple[int, ...]]
    feasible_count: int
    witness: tuple[int, ...] | None = None
    witness_I: int | None = None


def check_claim_parameters(delta: int, R: int, Q: int) -> None:
    if not (delta > 2 and R > 3 and Q > delta**2 + R - 1):
        raise ParameterError(f"need delta > 2, R > 3 and Q > delta^2 + R - 1 (got delta={delta}, R={R}, Q={Q})")


def feasible(a: Sequence[int], delta: int, Q: int) -> bool:
    """Positivity, ``a_1 <= delta``, ``a_i <= a_{i-1}(delta-1)`` and ``sum = Q - 1``."""
    if any(v < 1 for v in a) or a[0] > delta:
        return False
    if any(a[i] > a[i - 1] * (delta - 1) for i in range(1, len(a))):
        return False
    return sum(a) == Q - 1


def objective(a: Sequence[int]) -> int:
    """Product of ``a_i + 1`` over the third coordinate onward."""
    out = 1
    for v in a[2:]:
        out *= v + 1
    return out


CLAIM_VARIANTS = ("stated", "corrected")


def claim_index(a: Sequence[int], delta: int, variant: str = "stated") -> int | None:
    """Smallest ``I`` for which ``a`` has the three minimizer properties, else ``None``.

    With 1-based ``a``: ``a_1 = delta`` and ``a_2 = delta(delta-1)``;
    ``a_2..a_{2+I}`` nondecreasing with ``a_i < delta(delta-1)`` beyond ``2+I``;
    and ``a_i + 1 > (a_{i-1} - 1)(delta - 1)`` for ``3 <= i <= 2+I``.

    The ``corrected`` variant starts the last condition at ``i = 4``.  At
    ``i = 3`` it can fail for every minimizer, e.g. ``(3, 6, 9, 1, 1)`` is the
    only minimizer for ``delta=3, R=5, Q=21`` and gives ``10 > 10``.
    """
    if variant not in CLAIM_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    first = 3 if variant == "stated" else 4
    R = len(a)
    top = delta * (delta - 1)
    if a[0] != delta or a[1] != top:
        return None
    for I in range(0, R - 1):
        # 0-based: a[1..1+I] is the run, a[2+I..] the tail
        run = a[1 : 2 + I]
        if any(run[k] > run[k + 1] for k in range(len(run) - 1)):
            break
        if any(v >= top for v in a[2 + I :]):
            continue
        if all(a[i - 1] + 1 > (a[i - 2] - 1) * (delta - 1) for i in range(first, 3 + I)):
            return I
    return None


def min_product_oracle(delta: int, R: int, Q: int, budget: int = 50_000_000) -> OracleResult:
    """Exhaustive minimization over all feasible positive integer ``R``-tuples."""
    check_claim_parameters(delta, R, Q)
    # compositions of Q-1 into R positive parts bound the search space
    if comb(Q - 2, R - 1) > budget:
        raise BudgetExceeded(f"search space C({Q - 2},{R - 1}) exceeds budget {budget}")
    best, minimizers, count = kernels.min_product_search(delta, R, Q - 1)
    res = OracleResult(delta, R, Q, best, [tuple(m) for m in minimizers], count)
    # several minimizers may qualify; report the lexicographically largest one
    for m in reversed(res.minimizers):
        I = claim_index(m, delta)
        if I is not None:
            res.witness, res.witness_I = m, I
            break
    return res


@dataclass
class ClaimReport:
    holds: bool  # some minimizer has the properties as stated
    holds_corrected: bool  # same with the last property from i = 4
    oracle: OracleResult
    satisfying: list[tuple[int, ...]]  # minimizers with the stated properties
    corrected_witness: tuple[int, ...] | None = None
    corrected_I: int | None = None

    @property
    def witness(self):
        return self.oracle.witness

    @property
    def I(self):
        return self.oracle.witness_I


def verify_claim_minimum(delta: int, R: int, Q: int) -> ClaimReport:
    """True iff some exact minimizer has the three structural properties."""
    res = min_product_oracle(delta, R, Q)
    ok = [m for m in res.minimizers if claim_index(m, delta) is not None]
    rep = ClaimReport(bool(ok), False, res, ok)
    for m in reversed(res.minimizers):
        I = claim_index(m, delta, "corrected")
        if I is not None:
            rep.holds_corrected, rep.corrected_witness, rep.corrected_I = True, m, I
            break
    return rep


# -- product of spheres vs squared ball -------------------------------------------------


@dataclass
class ProdSpheresReport:
    R: int
    delta: int
    holds_statement: bool  # LHS > (D-1)(beta(4R+1)+1)^2
    holds_proof: bool  # LHS > (D-1) beta(4R+1)^2
    failures_statement: list = field(default_factory=list)
    failures_proof: list = field(default_factory=list)
    sample: dict = field(default_factory=dict)  # lhs/rhs at the first evaluated point


def prodspheres_check(source: GrowthSource, R: int) -> ProdSpheresReport:
    """Compare ``prod_{r=3..R}(sigma(r)+1)`` with ``(D-1)(beta(4R+1)+1)^2`` and with
    ``(D-1) beta(4R+1)^2``, exactly, at every base point."""
    if R < 3:
        raise ParameterError("R must be >= 3")
    delta = _delta(source)
    reach = 4 * R + 1
    rep = ProdSpheresReport(R, delta, True, True)
    for label, sigma, beta in _profiles(source, reach):
        lhs = 1
        for r in range(3, R + 1):
            lhs *= sigma[r] + 1
        rhs_statement = (delta - 1) * (beta[reach] + 1) ** 2
        rhs_proof = (delta - 1) * beta[reach] ** 2
        if not rep.sample:
            rep.sample = {"at": label, "lhs": lhs, "rhs_statement": rhs_statement, "rhs_proof": rhs_proof}
        if not lhs > rhs_statement:
            rep.holds_statement = False
            rep.failures_statement.append(label)
        if not lhs > rhs_proof:
            rep.holds_proof = False
            rep.failures_proof.append(label)
    return rep


# -- lower growth bound ------------------------------------------------------------------


def two_pow_sqrt_quarter_le(value: int, r: int, max_rounds: int = 64) -> bool:
    """Exactly decide ``2 ** (sqrt(r) / 4) <= value`` for integers ``r >= 0``.

    Equivalent to ``2 ** sqrt(r) <= value ** 4``.  For non-square ``r`` the
    exponent is bracketed by ``a/q < sqrt(r) < (a+1)/q`` with growing ``q``; the
    two sides are never equal then, so the bracketing terminates.
    """
    if value <= 0:
        return False
    v4 = value**4
    s = isqrt(r)
    if s * s == r:
        return (1 << s) <= v4
    q = 1
    for _ in range(max_rounds):
        a = isqrt(r * q * q)
        vq = v4**q
        if (1 << (a + 1)) <= vq:
            return True
        if (1 << a) >= vq:
            return False
        q *= 2
    raise ArithmeticError(f"could not separate 2^sqrt({r}) from {value}^4")


@dataclass
class LowerBoundReport:
    radii: list[int]
    passed: dict[int, bool]  # per radius, over all base points
    first_failure: dict = field(default_factory=dict)  # base point -> first failing radius

    @property
    def ok(self) -> bool:
        return all(self.passed.values())


def hypothesis_lb_check(source: GrowthSource, radii: Sequence[int]) -> LowerBoundReport:
    """``beta(r) >= 2^(sqrt(r)/4)`` at each listed radius for every base point."""
    radii = sorted(set(int(r) for r in radii))
    rep = LowerBoundReport(radii, {r: True for r in radii})
    if not radii:
        return rep
    for label, _, beta in _profiles(source, radii[-1]):
        for r in radii:
            if not two_pow_sqrt_quarter_le(beta[r], r):
                rep.passed[r] = False
                rep.first_failure.setdefault(label, r)
    return rep


@dataclass
class LinearBoundReport:
    eps: Fraction
    r_range: tuple[int, int]
    holds_from: int | None  # least r0 with eps*beta(r) > r on [r0, r_hi] for all base points

    @property
    def holds_somewhere(self) -> bool:
        return self.holds_from is not None


def linear_bound_check(source: GrowthSource, eps, r_range: tuple[int, int]) -> LinearBoundReport:
    """Finite-range check of ``eps * beta(r) > r`` with exact rationals."""
    eps = Fraction(eps)
    lo, hi = r_range
    if not 0 <= lo <= hi:
        raise ParameterError("need 0 <= r_lo <= r_hi")
    good = [True] * (hi + 1)
    for _, _, beta in _profiles(source, hi):
        for r in range(lo, hi + 1):
            if not eps * beta[r] > r:
                good[r] = False
    start = None
    for r in range(hi, lo - 1, -1):
        if not good[r]:
            break
        start = r
    return LinearBoundReport(eps, (lo, hi), start)
