"""Finite fields F_{p^e} with a deterministic choice of modulus.

Elements of GF(p, e) are residues in F_p[y]/(m(y)) where m is the monic
irreducible polynomial of degree e whose non-leading coefficient vector
(c_0, ..., c_{e-1}) is smallest when read as the base-p integer
c_0 + c_1*p + ... .  This makes serialized elements reproducible across
runs and machines.  For e = 1 the modulus is y itself and elements behave
like integers mod p.

The absolute trace Tr(x) = x + x^p + ... + x^{p^{e-1}} lands in the prime
field and is returned as a plain int; its kernel is exactly the image of
the Artin-Schreier operator x -> x^p - x.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_decomposition(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p^e and p prime, or None."""
    if q < 2:
        return None
    d = 2
    while d * d <= q:
        if q % d == 0:
            e = 0
            m = q
            while m % d == 0:
                m //= d
                e += 1
            return (d, e) if m == 1 else None
        d += 1
    return (q, 1)


# -- dense polynomial helpers over F_p (coefficient lists, low degree first) --

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        c = (a[-1] * inv_lead) % p
        for j, mj in enumerate(m):
            a[shift + j] = (a[shift + j] - c * mj) % p
        _ptrim(a)
    return a


def _ppowmod(a: list[int], n: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while n:
        if n & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        n >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    # m monic of degree e: irreducible iff y^(p^e) = y mod m and
    # gcd(y^(p^(e/l)) - y, m) = 1 for every prime l | e.
    e = len(m) - 1
    y = [0, 1]
    t = _ppowmod(y, p ** e, m, p)
    if _ptrim([(ti - yi) % p for ti, yi in itertools.zip_longest(t, y, fillvalue=0)]):
        return False
    for ell in range(2, e + 1):
        if e % ell == 0 and is_prime(ell):
            t = _ppowmod(y, p ** (e // ell), m, p)
            diff = _ptrim([(ti - yi) % p for ti, yi in itertools.zip_longest(t, y, fillvalue=0)])
            g = _pgcd(m[:], diff, p)
            if len(g) - 1 > 0:
                return False
    return True


def _find_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest irreducible monic modulus of degree e, in base-p order."""
    if e == 1:
        return (0, 1)
    for n in range(p ** e):
        coeffs = []
        m = n
        for _ in range(e):
            coeffs.append(m % p)
            m //= p
        cand = coeffs + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class GFElement:
    """An element of a GaloisField, immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "GaloisField", coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    # -- arithmetic --

    def __add__(self, other):
        other = self.field.coerce(other)
        p = self.field.p
        return GFElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self.field.coerce(other)
        p = self.field.p
        return GFElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return GFElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self.field.coerce(other)
        F = self.field
        prod = _pmul(list(self.coeffs), list(other.coeffs), F.p)
        return F._from_list(_pmod(prod, list(F.modulus), F.p))

    def __truediv__(self, other):
        other = self.field.coerce(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        F = self.field
        if n < 0:
            return self.inverse() ** (-n)
        return F._from_list(_ppowmod(list(self.coeffs), n, list(F.modulus), F.p))

    __radd__ = __add__

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    __rmul__ = __mul__

    def inverse(self) -> "GFElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.field.order - 2)

    # -- structure maps --

    def frobenius(self) -> "GFElement":
        return self ** self.field.p

    def pth_root(self) -> "GFElement":
        """Unique p-th root: inverse of Frobenius, x^(p^(e-1))."""
        F = self.field
        return self ** (F.p ** (F.e - 1))

    def trace(self) -> int:
        """Absolute trace into F_p, returned as an int in {0, ..., p-1}."""
        F = self.field
        acc = self
        t = self
        for _ in range(F.e - 1):
            t = t.frobenius()
            acc = acc + t
        assert all(c == 0 for c in acc.coeffs[1:])
        return acc.coeffs[0]

    # -- predicates / conversions --

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def encode(self) -> int:
        """Base-p integer encoding c_0 + c_1*p + ..., reproducible."""
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.field.p + c
        return n

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.coerce(other)
        return (
            isinstance(other, GFElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.field.e == 1:
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("y" if c == 1 else f"{c}*y")
            else:
                parts.append(f"y^{i}" if c == 1 else f"{c}*y^{i}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"GF({self.field.p},{self.field.e})({self})"


class GaloisField:
    """The field F_{p^e}; construct via the cached factory GF(p, e)."""

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.order = p ** e
        self.modulus = _find_modulus(p, e)
        self.zero = GFElement(self, (0,) * e)
        self.one = self.element(1)

    def element(self, value) -> GFElement:
        """Build an element from an int (reduced mod p), an int list/tuple
        of polynomial coefficients, or another element of this field."""
        if isinstance(value, GFElement):
            if value.field is not self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, int):
            coeffs = [value % self.p] + [0] * (self.e - 1)
            return GFElement(self, tuple(coeffs))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.e:
            return self._from_list(_pmod(coeffs, list(self.modulus), self.p))
        coeffs += [0] * (self.e - len(coeffs))
        return GFElement(self, tuple(coeffs))

    coerce = element

    def _from_list(self, coeffs: list[int]) -> GFElement:
        coeffs = coeffs + [0] * (self.e - len(coeffs))
        return GFElement(self, tuple(coeffs[: self.e]))

    def from_encoding(self, n: int) -> GFElement:
        """Inverse of GFElement.encode."""
        coeffs = []
        for _ in range(self.e):
            coeffs.append(n % self.p)
            n //= self.p
        return GFElement(self, tuple(coeffs))

    def elements(self) -> Iterator[GFElement]:
        """All q elements in the deterministic encoding order."""
        for n in range(self.order):
            yield self.from_encoding(n)

    def parse(self, text: str) -> GFElement:
        """Parse '3' or a polynomial string 'a0+a1*y+a2*y^2' (minus allowed)."""
        text = text.strip().replace(" ", "").replace("-", "+-")
        coeffs = [0] * self.e
        for term in text.split("+"):
            if not term:
                continue
            sign = 1
            if term.startswith("-"):
                sign = -1
                term = term[1:]
            if "y" not in term:
                coeffs[0] = (coeffs[0] + sign * int(term)) % self.p
                continue
            head, _, tail = term.partition("y")
            c = 1 if head in ("", "*") else int(head.rstrip("*"))
            k = 1 if not tail else int(tail.lstrip("^"))
            if k >= self.e:
                raise ValueError(f"exponent y^{k} exceeds field degree {self.e - 1}")
            coeffs[k] = (coeffs[k] + sign * c) % self.p
        return GFElement(self, tuple(coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.p}, {self.e})"


@functools.cache
def GF(p: int, e: int = 1) -> GaloisField:
    """Cached field constructor, so GF(p, e) is a singleton per (p, e)."""
    return GaloisField(p, e)
