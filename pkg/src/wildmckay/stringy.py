"""Stringy motivic invariants of wild Z/p quotient singularities.

For the cyclic group of order p acting linearly in characteristic p, a
representation type is a prime p together with the dimensions (d_1, ...,
d_l) of its indecomposable summands.  The quotient's stringy invariant is
an integral over the moduli of degree-p covers of the formal disk, which
collapses to p - 1 geometric series: the stratum of ramification jump
j = np + s has measure (L-1) * L^(l+j-1-floor(j/p)) and is weighted by
L^(-sht(j)), where the shift number sht(j) = sum_{lam} sum_i floor(i*j/p)
grows linearly in n with slope D = sum (d_lam - 1) d_lam / 2.  Convergence
is exactly D >= p (the stringily-Kawamata-log-terminal threshold).

Everything here returns canonical MotivicValue's or exact rationals; the
closed forms are cross-checked against the stratum sums they came from.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .covers import InvalidJump, count_extensions
from .gf import is_prime, prime_power_decomposition
from .motivic import L, MotivicValue, Rat, geometric_sum


class NotStringilyKLT(ArithmeticError):
    """The defining integral diverges: D_V < p."""


class NotKLT(ArithmeticError):
    """A pair coefficient violates the log-terminal bound."""


class InternalMismatch(AssertionError):
    """Two independent computation routes disagreed (must not happen)."""


class BaseFieldMismatch(ValueError):
    """q is not a power of the representation's characteristic."""


@dataclass(frozen=True)
class RepType:
    """A non-trivial representation type of the cyclic p-group."""

    p: int
    dims: tuple[int, ...]

    def __init__(self, p: int, dims):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise ValueError("at least one summand is required")
        if any(d < 1 or d > p for d in dims):
            raise ValueError(f"summand dimensions must lie in [1, {p}]")
        if all(d == 1 for d in dims):
            raise ValueError("trivial representation (all summands 1-dimensional)")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def summands(self) -> int:
        return len(self.dims)

    @property
    def has_reflection(self) -> bool:
        """True iff exactly one summand is 2-dimensional and the rest are
        lines (the fixed locus then has codimension one)."""
        return sorted(self.dims, reverse=True) == [2] + [1] * (self.summands - 1)


def shift_slope(rep: RepType) -> int:
    """sum (d-1)d/2 over summands: the per-period growth of the shift
    number, and the threshold invariant compared against p."""
    return sum((d - 1) * d // 2 for d in rep.dims)


def shift_number(rep: RepType, j: int) -> int:
    """sum_{lam} sum_{i=1}^{d_lam - 1} floor(i*j/p) for admissible jumps."""
    if j == 0:
        return 0
    if j < 0 or j % rep.p == 0:
        raise InvalidJump(f"jump {j} must be 0 or positive and coprime to {rep.p}")
    return sum(i * j // rep.p for d in rep.dims for i in range(1, d))


@dataclass(frozen=True)
class QuasiLinearExponent:
    """A function on admissible jumps with F(0) = base and
    F(np + s) = slope * n + residues[s - 1]."""

    base: int
    slope: int
    residues: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.residues) + 1

    def __call__(self, j: int) -> int:
        if j == 0:
            return self.base
        n, s = divmod(j, self.p)
        if s == 0:
            raise InvalidJump(f"jump {j} divisible by {self.p}")
        return self.slope * n + self.residues[s - 1]


def negative_shift_exponent(rep: RepType) -> QuasiLinearExponent:
    """The exponent -sht as a quasi-linear function of the jump."""
    return QuasiLinearExponent(
        base=0,
        slope=-shift_slope(rep),
        residues=tuple(-shift_number(rep, s) for s in range(1, rep.p)),
    )


def stratum_measure(rep: RepType, j: int) -> MotivicValue:
    """Measure of the twisted arcs over the origin with ramification jump j:
    L^d for the untwisted stratum, (L-1) * L^(l+j-1-floor(j/p)) otherwise."""
    if j == 0:
        return MotivicValue.l_power(rep.dim)
    if j < 0 or j % rep.p == 0:
        raise InvalidJump(f"jump {j} must be 0 or positive and coprime to {rep.p}")
    e = rep.summands + j - 1 - j // rep.p
    return (L - 1) * MotivicValue.l_power(e)


def integrate_over_covers(p: int, F: QuasiLinearExponent) -> MotivicValue:
    """Integral of L^F against the cover-moduli measure: the j = 0 point
    contributes L^F(0), each residue s a geometric series

        (L-1) L^(s-1+F(s)) * sum_{n>=0} L^((p-1+slope) n),

    convergent iff slope + p - 1 < 0.
    """
    if F.p != p:
        raise ValueError("exponent and prime disagree")
    total = MotivicValue.l_power(F.base)
    ratio = p - 1 + F.slope
    for s in range(1, p):
        coeff = (L - 1) * MotivicValue.l_power(s - 1 + F.residues[s - 1])
        total = total + geometric_sum(coeff, ratio)
    return total


def _require_stringily_klt(rep: RepType) -> None:
    # single source of truth: the series-convergence slope
    if (p_minus := rep.p - 1 - shift_slope(rep)) >= 0:
        raise NotStringilyKLT(
            f"D = {shift_slope(rep)} < p = {rep.p}: the defining series diverges "
            f"(slope {p_minus} >= 0)"
        )


def stringy_invariant(rep: RepType) -> MotivicValue:
    """The stringy motivic invariant of the quotient:

        L^d + L^(l-1)(L-1) (sum_{s=1}^{p-1} L^(s - sht(s))) / (1 - L^(p-1-D)).

    Defined iff D >= p; without reflections it is also the stringy
    invariant of the quotient variety itself.
    """
    _require_stringily_klt(rep)
    p, D = rep.p, shift_slope(rep)
    s_sum = MotivicValue.zero()
    for s in range(1, p):
        s_sum = s_sum + MotivicValue.l_power(s - shift_number(rep, s))
    head = MotivicValue.l_power(rep.dim)
    tail = MotivicValue.l_power(rep.summands - 1) * (L - 1) * s_sum
    return head + tail / (MotivicValue.one() - MotivicValue.l_power(p - 1 - D))


def stringy_invariant_via_strata(rep: RepType) -> MotivicValue:
    """The same invariant as the weighted stratum sum
    L^d + L^l * (integral of L^(-sht) minus its untwisted term)."""
    _require_stringily_klt(rep)
    integral = integrate_over_covers(rep.p, negative_shift_exponent(rep))
    return MotivicValue.l_power(rep.dim) + MotivicValue.l_power(rep.summands) * (
        integral - MotivicValue.one()
    )


def stringy_euler(rep: RepType) -> Fraction:
    """Stringy Euler number 1 + (p-1)/(D - p + 1); equals the Euler
    characteristic of the stringy invariant."""
    _require_stringily_klt(rep)
    return 1 + Fraction(rep.p - 1, shift_slope(rep) - rep.p + 1)


def crepant_diagnostic(rep: RepType) -> dict:
    """Necessary conditions for a crepant resolution Y of the quotient:
    D = p, the invariant is a polynomial in L, its Euler characteristic is
    p, and then the class of Y would be the invariant itself."""
    D = shift_slope(rep)
    report: dict = {"dv": D, "p": rep.p, "dv_equals_p": D == rep.p}
    if D < rep.p:
        report.update(polynomial_class=None, euler_is_p=None, candidate_class_of_Y=None)
        return report
    m = stringy_invariant(rep)
    report["polynomial_class"] = m.is_polynomial()
    report["euler_is_p"] = m.euler_characteristic() == rep.p
    report["candidate_class_of_Y"] = m if report["dv_equals_p"] else None
    return report


def origin_fiber_class(rep: RepType) -> MotivicValue:
    """Integral of L^(-sht) over the cover moduli: for reflection-free
    quotients with a crepant resolution this is the class of the fiber over
    the origin."""
    _require_stringily_klt(rep)
    return integrate_over_covers(rep.p, negative_shift_exponent(rep))


def origin_fiber_point_count(rep: RepType, q: int) -> Fraction:
    """The weighted count 1 + (p-1)/p * sum_j N_{q,j} / q^sht(j), summed in
    closed form over exact rationals; equals the point count of the
    origin-fiber class."""
    _require_stringily_klt(rep)
    pe = prime_power_decomposition(q)
    if pe is None or pe[0] != rep.p:
        raise BaseFieldMismatch(f"q = {q} is not a power of p = {rep.p}")
    p, D = rep.p, shift_slope(rep)
    ratio = Fraction(q) ** (p - 1 - D)
    total = Fraction(1)
    for s in range(1, p):
        # (p-1)/p * N_{q,s} / q^sht(s) = (q-1) q^(s-1-sht(s)), then the
        # jump np+s scales it by ratio^n
        lead = Fraction(p - 1, p) * count_extensions(q, s) * Fraction(q) ** (-shift_number(rep, s))
        total += lead / (1 - ratio)
    return total


def smooth_pair_invariant(d: int, a: Rat) -> MotivicValue:
    """Stringy invariant of affine d-space against a hyperplane with
    coefficient a < 1:  (L^d - L^(d-1)) + L^(d-1)(L-1)/(L^(1-a) - 1)."""
    a = Fraction(a)
    if a >= 1:
        raise NotKLT(f"coefficient a = {a} >= 1")
    off = MotivicValue.l_power(d) - MotivicValue.l_power(d - 1)
    denom = MotivicValue.l_power(1 - a) - MotivicValue.one()
    return off + MotivicValue.l_power(d - 1) * (L - 1) / denom


def stack_pair_invariant(p: int, a: Rat) -> MotivicValue:
    """Stringy invariant of the 2-dimensional reflection quotient stack
    against a times its fixed locus, for a < 2 - p.

    Computed two ways and compared: the closed form
    (L^2 - L)/(1 - L^(a+p-2)), and the sector decomposition: the untwisted
    sector (L^2 - L)/(1 - L^(a-1)) plus the twisted double sum, which
    collapses to (L-1) L (S(a+p-2) - S(a-1)) with S(e) = L^e/(1 - L^e).
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    a = Fraction(a)
    if a >= 2 - p:
        raise NotKLT(f"coefficient a = {a} >= 2 - p = {2 - p}")
    l2_minus_l = L * L - L
    closed = l2_minus_l / (MotivicValue.one() - MotivicValue.l_power(a + p - 2))

    def tail_sum(e: Fraction) -> MotivicValue:
        # sum_{n>=1} L^(e n) = L^e / (1 - L^e)
        return geometric_sum(MotivicValue.one(), e) - MotivicValue.one()

    untwisted = l2_minus_l / (MotivicValue.one() - MotivicValue.l_power(a - 1))
    twisted = (L - 1) * L * (tail_sum(a + p - 2) - tail_sum(a - 1))
    sectors = untwisted + twisted
    if closed != sectors:
        raise InternalMismatch("closed form and sector sum disagree")
    return closed


def projectivized_invariant(rep: RepType) -> MotivicValue:
    """Stringy invariant of the projectivized quotient, computed both from
    its definition through the stringy invariant and from the closed form

        (L^d - 1)/(L - 1) + (L^l - 1)(sum_s L^(s-sht(s))) / (L (1 - L^(p-1-D)));

    the two must agree.
    """
    _require_stringily_klt(rep)
    p, d, l, D = rep.p, rep.dim, rep.summands, shift_slope(rep)
    m = stringy_invariant(rep)
    cone = MotivicValue.l_power(d) - MotivicValue.l_power(l)
    via_def = cone / (L - 1) + (m - cone) * (MotivicValue.l_power(l) - 1) / (
        MotivicValue.l_power(l) * (L - 1)
    )
    s_sum = MotivicValue.zero()
    for s in range(1, p):
        s_sum = s_sum + MotivicValue.l_power(s - shift_number(rep, s))
    closed = (MotivicValue.l_power(d) - 1) / (L - 1) + (
        MotivicValue.l_power(l) - 1
    ) * s_sum / (L * (MotivicValue.one() - MotivicValue.l_power(p - 1 - D)))
    if via_def != closed:
        raise InternalMismatch("projectivization routes disagree")
    return closed


def poincare_duality_holds(rep: RepType) -> bool:
    """Check M(L^(-1)) * L^(d-1) = M(L) for the projectivized invariant."""
    w = projectivized_invariant(rep)
    return w.dual(rep.dim) == w


def stringy_from_resolution(strata) -> MotivicValue:
    """Stringy invariant from simple-normal-crossing resolution data: a list
    of (stratum class, discrepancy coefficients) pairs, summed as

        sum [E_I] * prod_i (L-1)/(L^(1+a_i) - 1),

    each a_i > -1 (log terminal)."""
    total = MotivicValue.zero()
    for stratum_class, coeffs in strata:
        term = stratum_class
        for a in coeffs:
            a = Fraction(a)
            if a <= -1:
                raise NotKLT(f"discrepancy coefficient {a} <= -1")
            term = term * (L - 1) / (MotivicValue.l_power(1 + a) - MotivicValue.one())
        total = total + term
    return total


def rep_types_iter(p: int, max_len: int):
    """All representation types over p with at most max_len summands."""
    for length in range(1, max_len + 1):
        for dims in itertools.combinations_with_replacement(range(1, p + 1), length):
            if all(d == 1 for d in dims):
                continue
            yield RepType(p, dims)
