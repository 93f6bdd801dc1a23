"""Exact arithmetic in small prime-power finite fields GF(p^k).

A field is described by a FieldSpec: characteristic p, extension degree k,
and a monic irreducible modulus polynomial over GF(p) stored as k+1
coefficients in ascending degree.  Elements are dense coefficient vectors
in the polynomial basis, always reduced mod p.

Every element has a canonical integer encoding

    enc(a) = sum(coeffs[i] * p**i)

a bijection onto range(p**k).  This encoding is the tiebreaker for every
deterministic choice in the package (modulus selection, roots of unity,
embeddings, point and matrix orderings) and the wire format for files.

Subfield relations are explicit Embedding values, checked by evaluating
the small field's modulus at the chosen image of its generator; there is
no global table of compatible moduli.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import PreconditionError

MAX_ORDER = 2**63


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Factor q as p**s with p prime, or raise PreconditionError."""
    if q >= 2:
        for p in range(2, q + 1):
            if p * p > q:
                p = q
            if q % p == 0:
                s = 0
                n = q
                while n % p == 0:
                    n //= p
                    s += 1
                if n == 1 and is_prime(p):
                    return p, s
                break
    raise PreconditionError("not_prime_power", f"{q} is not a prime power")


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder in GF(p)[x]; den must be monic, ascending coeffs."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            quot[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - c * dj) % p
    rem = [c % p for c in num[:dd]]
    return quot, rem


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic divisor of degree 1..deg/2.

    Fine at desk scale (deg <= 8, small p); degree-1 polynomials are
    irreducible by definition.
    """
    deg = len(coeffs) - 1
    if deg < 1 or coeffs[-1] != 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            den = list(lower) + [1]
            _, rem = _poly_divmod(list(coeffs), den, p)
            if not any(rem):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) presented as GF(p)[x] / (modulus)."""

    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError("not_prime", f"{self.p} is not prime")
        if self.k < 1 or len(self.modulus) != self.k + 1:
            raise ValueError("modulus length must be k+1")
        if self.p**self.k > MAX_ORDER:
            raise PreconditionError("order_overflow", "field order exceeds 2**63")
        if any(not (0 <= c < self.p) for c in self.modulus):
            raise ValueError("modulus coefficients must be reduced mod p")
        if not _is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is not monic irreducible over GF({self.p})")

    @property
    def order(self) -> int:
        return self.p**self.k

    def element(self, coeffs) -> FieldElement:
        cs = tuple(int(c) % self.p for c in coeffs)
        if len(cs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(cs)}")
        return FieldElement(self, cs)

    def from_int(self, c: int) -> FieldElement:
        """The prime-field constant c, as an element of this field."""
        return self.element((c,) + (0,) * (self.k - 1))

    def from_enc(self, n: int) -> FieldElement:
        if not (0 <= n < self.order):
            raise ValueError(f"encoding {n} out of range for order {self.order}")
        cs = []
        for _ in range(self.k):
            n, r = divmod(n, self.p)
            cs.append(r)
        return FieldElement(self, tuple(cs))

    def zero(self) -> FieldElement:
        return self.from_int(0)

    def one(self) -> FieldElement:
        return self.from_int(1)

    def gen(self) -> FieldElement:
        """The residue class of x (equals 0 in a prime field where modulus = x)."""
        return self.from_enc(self.p) if self.k > 1 else self.zero()

    def elements(self):
        """All elements in canonical encoding order."""
        return (self.from_enc(n) for n in range(self.order))

    def units(self):
        return (self.from_enc(n) for n in range(1, self.order))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^k) in the polynomial basis of its FieldSpec."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def enc(self) -> int:
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.spec.p + c
        return n

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def _check_same(self, other: FieldElement):
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.spec != self.spec:
            raise ValueError(f"field mismatch: {self.spec} vs {other.spec}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check_same(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check_same(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> FieldElement:
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check_same(other)
        p, k, mod = self.spec.p, self.spec.k, self.spec.modulus
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] = (prod[i + j] + a * b) % p
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c:
                for j in range(k + 1):
                    prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
        return FieldElement(self.spec, tuple(prod[:k]))

    def __pow__(self, n: int) -> FieldElement:
        if n < 0:
            return self.inv() ** (-n)
        result = self.spec.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("inversion of zero")
        return self ** (self.spec.order - 2)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inv()

    def __repr__(self):
        return f"{self.spec}[{self.enc}]"


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int) -> FieldSpec:
    """GF(p^k) with the deterministic modulus choice.

    The modulus is the monic irreducible polynomial of degree k over GF(p)
    whose coefficient tuple, read from the constant term upward, is
    lexicographically smallest.  Found by exhaustive scan, which is the
    point: the choice is reproducible without any table.
    """
    if not is_prime(p):
        raise PreconditionError("not_prime", f"{p} is not prime")
    if k < 1:
        raise PreconditionError("bad_degree", "extension degree must be >= 1")
    if p**k > MAX_ORDER:
        raise PreconditionError("order_overflow", "field order exceeds 2**63")
    for lower in itertools.product(*(range(p) for _ in range(k))):
        coeffs = tuple(lower) + (1,)
        if _is_irreducible(coeffs, p):
            return FieldSpec(p, k, coeffs)
    raise AssertionError("no irreducible polynomial found (unreachable)")


def root_of_unity(spec: FieldSpec, n: int) -> FieldElement:
    """The primitive n-th root of unity with smallest canonical encoding.

    Requires n to divide the unit-group order p^k - 1.
    """
    if n < 1:
        raise PreconditionError("bad_order", "n must be positive")
    if (spec.order - 1) % n != 0:
        raise PreconditionError(
            "bad_order", f"{n} does not divide the unit group order {spec.order - 1}"
        )
    one = spec.one()
    for a in spec.units():
        if a**n == one and all(a**i != one for i in range(1, n)):
            return a
    raise AssertionError("unit group of a finite field is cyclic (unreachable)")


@dataclass(frozen=True)
class Embedding:
    """A field homomorphism GF(p^k) -> GF(p^K) with k | K.

    Determined by the image of the small field's generator, which must be a
    root of the small modulus in the big field; apply() extends it linearly
    over the polynomial basis.
    """

    src: FieldSpec
    dst: FieldSpec
    image_of_generator: FieldElement

    def __post_init__(self):
        if self.src.p != self.dst.p or self.dst.k % self.src.k != 0:
            raise PreconditionError(
                "no_embedding", f"no embedding {self.src} -> {self.dst}"
            )
        if self.image_of_generator.spec != self.dst:
            raise ValueError("image_of_generator must live in the destination field")
        val = _eval_poly_at(self.src.modulus, self.image_of_generator)
        if val:
            raise ValueError("image_of_generator is not a root of the source modulus")

    def apply(self, a: FieldElement) -> FieldElement:
        if a.spec != self.src:
            raise ValueError(f"element of {a.spec} fed to embedding from {self.src}")
        acc = self.dst.zero()
        for c in reversed(a.coeffs):
            acc = acc * self.image_of_generator + self.dst.from_int(c)
        return acc

    @cached_property
    def _section(self) -> dict[tuple[int, ...], FieldElement]:
        return {self.apply(a).coeffs: a for a in self.src.elements()}

    def section(self, b: FieldElement) -> FieldElement:
        """Preimage of b under the embedding; raises if b is not in the image."""
        if b.spec != self.dst:
            raise ValueError("element does not live in the destination field")
        try:
            return self._section[b.coeffs]
        except KeyError:
            raise ValueError(f"{b!r} is not in the image of {self.src}") from None


def _eval_poly_at(coeffs: tuple[int, ...], x: FieldElement) -> FieldElement:
    acc = x.spec.zero()
    for c in reversed(coeffs):
        acc = acc * x + x.spec.from_int(c)
    return acc


@functools.lru_cache(maxsize=None)
def embedding(src: FieldSpec, dst: FieldSpec) -> Embedding:
    """The canonical embedding: generator maps to the root of src.modulus
    in dst with smallest canonical encoding."""
    if src.p != dst.p or dst.k % src.k != 0:
        raise PreconditionError("no_embedding", f"no embedding {src} -> {dst}")
    for b in dst.elements():
        if not _eval_poly_at(src.modulus, b):
            return Embedding(src, dst, b)
    raise AssertionError("a subfield always exists when k | K (unreachable)")


def frobenius(a: FieldElement, sub_order: int) -> FieldElement:
    """a ** sub_order, for sub_order = p^m with m dividing k.

    This is the Frobenius of the subfield of that order; its fixed points
    inside GF(p^k) are exactly that subfield.
    """
    spec = a.spec
    n, m = sub_order, 0
    while n % spec.p == 0 and n > 1:
        n //= spec.p
        m += 1
    if n != 1 or m == 0 or spec.k % m != 0:
        raise PreconditionError(
            "bad_sub_order",
            f"{sub_order} is not p^m with m dividing {spec.k} (p={spec.p})",
        )
    return a**sub_order
