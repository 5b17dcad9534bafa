"""Artin-Schreier covers of the formal disk over a finite field.

A degree-p cover of Spec F_q[[t]] restricted to the punctured disk is cut
out by u^p - u + f = 0 for a Laurent series f, and depends only on the
class of f modulo the image of the Artin-Schreier operator w(x) = x^p - x.
Every class has a unique normal form: a representative polynomial
sum_{i} f_{-i} t^{-i} with every exponent i positive and coprime to p,
plus an unramified constant class in F_p realized here through the
absolute trace.

The module provides the reduction with accumulated witnesses, the
ramification jump and its independent uniformizer-based oracle computed in
the cover's coordinate ring F_q((t))[g]/(g^p - g + f), stratum counting
formulas, and a brute-force census engine that cross-checks them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .gf import GF, GaloisField, GFElement, prime_power_decomposition
from .laurent import INF, InsufficientPrecision, LaurentSeries, artin_schreier


class InvalidJump(ValueError):
    """Positive ramification jumps must be coprime to p."""


class ZeroOrBelowPrecision(ArithmeticError):
    """No nonzero coefficient is visible at the tracked precision."""


class EnumerationTooLarge(ValueError):
    """The requested census exceeds the enumeration guard."""


def const_class(c: GFElement) -> int:
    """Class of c in F_q modulo the Artin-Schreier image, as an element of F_p.

    By additive Hilbert 90 the image of x -> x^p - x on F_q is exactly the
    kernel of the absolute trace, so the trace realizes the isomorphism
    F_q / w(F_q) = F_p.
    """
    return c.trace()


class RepPoly:
    """Representative polynomial sum_i f_{-i} t^{-i}: i > 0, gcd(i, p) = 1."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GaloisField, coeffs=None):
        self.field = field
        clean: dict[int, GFElement] = {}
        for i, c in (coeffs or {}).items():
            i = int(i)
            c = field.coerce(c)
            if c.is_zero():
                continue
            if i <= 0 or i % field.p == 0:
                raise ValueError(f"exponent index {i} must be positive and coprime to {field.p}")
            clean[i] = c
        self.coeffs = clean

    @property
    def jump(self) -> int:
        """Largest exponent index (0 for the zero polynomial)."""
        return max(self.coeffs) if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_series(self, prec=INF) -> LaurentSeries:
        return LaurentSeries(self.field, {-i: c for i, c in self.coeffs.items()}, prec)

    def key(self) -> tuple:
        """Deterministic sort/hash key."""
        return tuple(sorted((i, c.encode()) for i, c in self.coeffs.items()))

    def __eq__(self, other):
        return (
            isinstance(other, RepPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.key()))

    def __str__(self):
        return str(self.as_series())

    def __repr__(self):
        return f"RepPoly({self})"

    def to_json(self) -> dict:
        prime = self.field.e == 1
        return {
            "terms": [
                [i, c.encode() if prime else str(c)]
                for i, c in sorted(self.coeffs.items())
            ]
        }


class ASCoverClass:
    """Normal form of a degree-p cover of the punctured formal disk."""

    __slots__ = ("rep", "const_class")

    def __init__(self, rep: RepPoly, const_class: int):
        self.rep = rep
        self.const_class = const_class % rep.field.p

    @property
    def field(self) -> GaloisField:
        return self.rep.field

    @property
    def jump(self) -> int:
        return self.rep.jump

    def is_trivial(self) -> bool:
        return self.rep.is_zero() and self.const_class == 0

    def lift(self, prec=INF) -> LaurentSeries:
        """A Laurent series in the class: rep plus a constant of the right trace."""
        f = self.rep.as_series(prec)
        if self.const_class:
            for c in self.field.elements():
                if c.trace() == self.const_class:
                    return f + LaurentSeries(self.field, {0: c}, prec)
        return f

    def key(self) -> tuple:
        return (self.rep.key(), self.const_class)

    def __eq__(self, other):
        return (
            isinstance(other, ASCoverClass)
            and self.rep == other.rep
            and self.const_class == other.const_class
        )

    def __hash__(self):
        return hash((self.rep, self.const_class))

    def __repr__(self):
        return f"ASCoverClass(rep={self.rep}, const_class={self.const_class})"

    def to_json(self) -> dict:
        return {
            "rep": self.rep.to_json(),
            "const_class": self.const_class,
            "jump": self.jump,
        }


def reduce_with_witnesses(f: LaurentSeries) -> tuple[ASCoverClass, list[LaurentSeries]]:
    """Normal form of f modulo the Artin-Schreier image, with the subtracted
    preimage witnesses.

    The strictly positive tail is discarded outright (it always lies in the
    image over F_q[[t]] up to a constant-class adjustment, which the trace of
    the constant term absorbs).  On the negative part, a term c*t^(-pi) is
    cancelled by subtracting w(c^(1/p) t^(-i)); the witnesses are those
    monomials, so that f - sum w(witness) has negative part equal to the
    returned representative polynomial.
    """
    if f.prec < 0:
        raise InsufficientPrecision("constant term unknown: precision < 0")
    field = f.field
    p = field.p
    cls0 = const_class(f.constant_term())
    neg = dict(f.negative_part().coeffs)
    witnesses: list[LaurentSeries] = []
    while True:
        divisible = [e for e in neg if (-e) % p == 0]
        if not divisible:
            break
        e = min(divisible)  # most negative first; strictly increases
        c = neg.pop(e)
        w = LaurentSeries.monomial(field, e // p, c.pth_root())
        witnesses.append(w)
        e2 = e // p
        s = neg.get(e2, field.zero) + c.pth_root()
        if s.is_zero():
            neg.pop(e2, None)
        else:
            neg[e2] = s
    rep = RepPoly(field, {-e: c for e, c in neg.items()})
    return ASCoverClass(rep, cls0), witnesses


def reduce(f: LaurentSeries) -> ASCoverClass:
    """Normal form of the cover class of f (see reduce_with_witnesses)."""
    return reduce_with_witnesses(f)[0]


def witnesses_account_for(f: LaurentSeries, cls: ASCoverClass, witnesses) -> bool:
    """Check f - sum w(witness) has negative part cls.rep and constant-term
    trace cls.const_class.  (The positive tail is absorbed implicitly and is
    not certified here.)"""
    g = f
    for w in witnesses:
        g = g - artin_schreier(w)
    if dict(g.negative_part().coeffs) != {-i: c for i, c in cls.rep.coeffs.items()}:
        return False
    return const_class(g.constant_term()) == cls.const_class


def ramification_jump(cls: ASCoverClass) -> int:
    """The unique break of the higher ramification filtration: minus the
    order of the representative polynomial, 0 for unramified covers."""
    return cls.jump


def uniformizer_params(p: int, j: int) -> tuple[int, int, int, int]:
    """Solve j = p*q' - r' (1 <= r' < p) and l'*r' = p*c' + 1 (1 <= l' < p).

    Then t^(l'q'-c') g^(l') has valuation p(l'q'-c') - l'j = 1 in the cover
    ring, i.e. it is a uniformizer.
    """
    if j <= 0 or j % p == 0:
        raise InvalidJump(f"jump {j} must be positive and coprime to {p}")
    r_ = (-j) % p
    q_ = (j + r_) // p
    l_ = pow(r_, -1, p)
    c_ = (l_ * r_ - 1) // p
    assert p * (l_ * q_ - c_) - l_ * j == 1
    return q_, r_, l_, c_


class CoverRing:
    """Working model of F_q((t))[g]/(g^p - g + f) at a fixed precision.

    Elements are stored on the basis 1, g, ..., g^(p-1) with truncated
    Laurent series components.  Multiplication rewrites g^p -> g - f and the
    group generator acts by g -> g + 1.  On this basis the valuation of a
    monomial g^i t^n is np - i*j where j is the ramification jump; for
    p not dividing j these are distinct mod p across i, which makes the
    valuation of a general element the minimum over its components.
    """

    def __init__(self, cover: ASCoverClass, prec=None):
        j = cover.jump
        if j == 0:
            raise InvalidJump("cover ring valuations need a ramified cover (jump > 0)")
        self.cover = cover
        self.field = cover.field
        self.jump = j
        self.prec = 2 * (j + 1) + 2 if prec is None else prec
        self.f_lift = cover.lift(self.prec)

    @property
    def p(self) -> int:
        return self.field.p

    def zero(self) -> "CoverElement":
        z = LaurentSeries.zero(self.field, self.prec)
        return CoverElement(self, tuple(z for _ in range(self.p)))

    def element(self, comps) -> "CoverElement":
        comps = [c.truncate(self.prec) for c in comps]
        if len(comps) != self.p:
            raise ValueError(f"expected {self.p} basis components")
        return CoverElement(self, tuple(comps))

    def monomial(self, n: int, i: int, coeff=1) -> "CoverElement":
        """The element coeff * t^n * g^i."""
        if not 0 <= i < self.p:
            raise ValueError("basis exponent out of range")
        comps = [LaurentSeries.zero(self.field, self.prec) for _ in range(self.p)]
        comps[i] = LaurentSeries(self.field, {n: self.field.coerce(coeff)}, self.prec)
        return CoverElement(self, tuple(comps))

    def gen(self) -> "CoverElement":
        return self.monomial(0, 1)


class CoverElement:
    """Element sum_i a_i g^i of a CoverRing, a_i truncated Laurent series."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring: CoverRing, comps: tuple[LaurentSeries, ...]):
        self.ring = ring
        self.comps = comps

    def __add__(self, other):
        self._check(other)
        return CoverElement(self.ring, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        self._check(other)
        return CoverElement(self.ring, tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return CoverElement(self.ring, tuple(-a for a in self.comps))

    def __mul__(self, other):
        self._check(other)
        p = self.ring.p
        f = self.ring.f_lift
        prod: list[LaurentSeries] = [LaurentSeries.zero(self.ring.field, INF) for _ in range(2 * p - 1)]
        for i, a in enumerate(self.comps):
            if a.is_zero() and a.prec == INF:
                continue
            for k, b in enumerate(other.comps):
                prod[i + k] = prod[i + k] + a * b
        # rewrite g^(p+k) = g^(k+1) - f * g^k, from the top down
        for k in range(2 * p - 2, p - 1, -1):
            c = prod[k]
            prod[k - p + 1] = prod[k - p + 1] + c
            prod[k - p] = prod[k - p] - f * c
        return self.ring.element(prod[:p])

    def __pow__(self, n: int):
        result = self.ring.monomial(0, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sigma(self) -> "CoverElement":
        """The generator of the Galois action: g -> g + 1, re-expanded."""
        p = self.ring.p
        out = [LaurentSeries.zero(self.ring.field, INF) for _ in range(p)]
        for m, a in enumerate(self.comps):
            if a.is_zero() and a.prec == INF:
                continue
            for i in range(m + 1):
                out[i] = out[i] + a * math.comb(m, i)
        return self.ring.element(out)

    def delta(self) -> "CoverElement":
        """sigma - id."""
        return self.sigma() - self

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def valuation(self) -> int:
        """min_i (p * ord(a_i) - i * j), exact whenever the tracked terms
        resolve it; raises if the answer could hide beyond the precision."""
        p, j = self.ring.p, self.ring.jump
        candidate = None
        unknown_bound = math.inf
        for i, a in enumerate(self.comps):
            o = a.order()
            if o is not None:
                v = p * o - i * j
                candidate = v if candidate is None else min(candidate, v)
            if a.prec != INF:
                unknown_bound = min(unknown_bound, p * (a.prec + 1) - i * j)
        if candidate is None:
            raise ZeroOrBelowPrecision(
                "element is zero up to the tracked precision; valuation undetermined"
            )
        if candidate >= unknown_bound:
            raise InsufficientPrecision(
                f"valuation candidate {candidate} not resolved below precision bound {unknown_bound}"
            )
        return candidate

    def __eq__(self, other):
        """Componentwise agreement up to the common tracked precision."""
        if not isinstance(other, CoverElement) or other.ring.cover != self.ring.cover:
            return NotImplemented
        for a, b in zip(self.comps, other.comps):
            m = min(a.prec, b.prec)
            if a.truncate(m).coeffs != b.truncate(m).coeffs:
                return False
        return True

    def _check(self, other):
        if not isinstance(other, CoverElement) or other.ring is not self.ring:
            raise ValueError("cover elements must share their ring")

    def __str__(self):
        parts = [f"({c})*g^{i}" for i, c in enumerate(self.comps) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"CoverElement({self})"


def verify_jump(cls: ASCoverClass, prec=None) -> bool:
    """Independent ramification oracle: build the uniformizer
    s = t^(l'q'-c') g^(l') in the cover ring and check

        v(s) = 1   and   v(sigma(s) - s) = jump + 1,

    the valuation-theoretic characterization of the jump.
    """
    j = cls.jump
    if j == 0:
        raise InvalidJump("unramified cover: no uniformizer construction applies")
    q_, _r, l_, c_ = uniformizer_params(cls.field.p, j)
    ring = CoverRing(cls, prec)
    s = ring.monomial(l_ * q_ - c_, 0) * ring.gen() ** l_
    if s.valuation() != 1:
        return False
    return (s.sigma() - s).valuation() == j + 1


# -- counting and enumeration ------------------------------------------------


def count_rep_covers(q: int, j: int) -> int:
    """Number of representative polynomials over F_q with jump exactly j:
    (q-1) * q^(j-1-floor(j/p)) for j > 0 coprime to p, and 1 for j = 0."""
    pe = prime_power_decomposition(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    p = pe[0]
    if j == 0:
        return 1
    if j < 0 or j % p == 0:
        raise InvalidJump(f"jump {j} must be 0 or positive and coprime to {p}")
    return (q - 1) * q ** (j - 1 - j // p)


def count_extensions(q: int, j: int) -> int:
    """Number of degree-p Galois extensions of F_q((t)) with ramification
    jump j.  Each geometric class splits into p cover classes, while each
    field extension is counted p - 1 times among covers (once per choice of
    Galois-group generator), so N = p * count_rep_covers(q, j) / (p - 1);
    this is always an integer."""
    pe = prime_power_decomposition(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    p = pe[0]
    if j <= 0 or j % p == 0:
        raise InvalidJump(f"jump {j} must be positive and coprime to {p}")
    n = Fraction(p * count_rep_covers(q, j), p - 1)
    assert n.denominator == 1
    return int(n)


@dataclass
class CensusReport:
    """Outcome of the brute-force reduction census."""

    p: int
    q: int
    max_exp: int
    total_inputs: int
    class_count: int
    expected_class_count: int
    jump_histogram: list  # rows [j, count, expected, ok]
    fiber_sizes: dict  # serialized class key -> fiber size
    expected_fiber_size: int
    fibers_uniform: bool
    witnesses_ok: bool
    classes: list = field(repr=False, default_factory=list)  # ASCoverClass, sorted

    @property
    def all_ok(self) -> bool:
        return (
            self.class_count == self.expected_class_count
            and self.fibers_uniform
            and self.witnesses_ok
            and all(row[3] for row in self.jump_histogram)
        )

    def to_json(self, list_forms: bool = False) -> dict:
        out = {
            "p": self.p,
            "q": self.q,
            "max_exp": self.max_exp,
            "total_inputs": self.total_inputs,
            "class_count": self.class_count,
            "expected_class_count": self.expected_class_count,
            "jump_histogram": [list(r) for r in self.jump_histogram],
            "expected_fiber_size": self.expected_fiber_size,
            "fibers_uniform": self.fibers_uniform,
            "witnesses_ok": self.witnesses_ok,
            "all_ok": self.all_ok,
        }
        if list_forms:
            out["normal_forms"] = [c.to_json() for c in self.classes]
            out["fiber_size_per_form"] = [self.fiber_sizes[c.key()] for c in self.classes]
        return out


def enumerate_covers(q: int, max_exp: int, guard: int = 10 ** 7) -> CensusReport:
    """Reduce every Laurent polynomial supported on t^-1, ..., t^-max_exp
    over F_q and tabulate normal forms, jump counts and reduction fibers.

    The report records, for each jump j <= max_exp, the number of distinct
    normal forms against the stratum formula, and checks that every
    reduction fiber has exactly q^floor(max_exp/p) elements.
    """
    pe = prime_power_decomposition(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    p, e = pe
    if q ** max_exp > guard:
        raise EnumerationTooLarge(f"{q}^{max_exp} exceeds the enumeration guard {guard}")
    F = GF(p, e)
    elements = list(F.elements())
    fibers: dict[tuple, int] = {}
    class_by_key: dict[tuple, ASCoverClass] = {}
    witnesses_ok = True
    for combo in itertools.product(elements, repeat=max_exp):
        coeffs = {-(i + 1): c for i, c in enumerate(combo) if not c.is_zero()}
        f = LaurentSeries(F, coeffs)
        cls, wits = reduce_with_witnesses(f)
        if not witnesses_account_for(f, cls, wits):
            witnesses_ok = False
        k = cls.key()
        fibers[k] = fibers.get(k, 0) + 1
        class_by_key.setdefault(k, cls)
    classes = [class_by_key[k] for k in sorted(class_by_key)]
    hist: dict[int, int] = {}
    for cls in classes:
        hist[cls.jump] = hist.get(cls.jump, 0) + 1
    jump_rows = []
    for j in range(max_exp + 1):
        if j > 0 and j % p == 0:
            continue
        expected = count_rep_covers(q, j)
        got = hist.get(j, 0)
        jump_rows.append([j, got, expected, got == expected])
    expected_fiber = q ** (max_exp // p)
    fibers_uniform = set(fibers.values()) == {expected_fiber}
    return CensusReport(
        p=p,
        q=q,
        max_exp=max_exp,
        total_inputs=q ** max_exp,
        class_count=len(classes),
        expected_class_count=q ** (max_exp - max_exp // p),
        jump_histogram=jump_rows,
        fiber_sizes={k: v for k, v in sorted(fibers.items())},
        expected_fiber_size=expected_fiber,
        fibers_uniform=fibers_uniform,
        witnesses_ok=witnesses_ok,
        classes=classes,
    )
