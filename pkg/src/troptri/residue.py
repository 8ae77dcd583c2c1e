"""Exact residue fields and unit-root extraction.

Two concrete fields are provided: the rationals (elements are
``fractions.Fraction``) and prime fields F_p for small p (elements are
ints in 0..p-1).  ``roots_in_units`` enumerates the nonzero roots of a
univariate polynomial and refuses to continue when the polynomial does
not split into linear factors over the configured field.
"""

from fractions import Fraction
from math import lcm

from .errors import DivisionByZero, NonSplittingError, ZeroPolynomialError


class RationalField:
    """The field of arbitrary-precision rationals."""

    __slots__ = ()
    name = "QQ"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("cannot invert 0 in %s" % self.name)
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by 0 in %s" % self.name)
        return a / b

    def is_zero(self, a):
        return a == 0

    def format(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return "%d/%d" % (a.numerator, a.denominator)

    def sort_key(self, a):
        return a

    def unit_roots(self, coeffs):
        """All nonzero rational roots of sum(coeffs[j] * x**j).

        Returns ``(roots, split)`` where ``split`` is True when the
        polynomial, after the power of x dividing it is removed, factors
        completely into linear pieces over the rationals.  Uses the
        rational root theorem: candidates are +-p/q with p dividing the
        constant and q the leading integer coefficient, and found roots
        are deflated out to account for multiplicities.
        """
        work = _strip_unit_part(coeffs)
        if len(work) <= 1:
            return set(), True
        den = lcm(*(c.denominator for c in work))
        ints = [int(c * den) for c in work]
        low, high = abs(ints[0]), abs(ints[-1])
        roots = set()
        candidates = set()
        for p in _divisors(low):
            for q in _divisors(high):
                candidates.add(Fraction(p, q))
                candidates.add(Fraction(-p, q))
        for cand in sorted(candidates):
            while len(work) > 1 and _horner(self, work, cand) == 0:
                work = _deflate(self, work, cand)
                roots.add(cand)
        return roots, len(work) == 1

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """The prime field F_p; elements are canonical ints in 0..p-1.

    Root finding is exhaustive evaluation, so p is capped.
    """

    __slots__ = ("p",)
    MAX_PRIME = 10**6

    def __init__(self, p):
        if p < 2 or p > self.MAX_PRIME or not _is_prime(p):
            raise ValueError("modulus must be a prime <= %d, got %r" % (self.MAX_PRIME, p))
        self.p = p

    @property
    def name(self):
        return "F%d" % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("cannot invert 0 in %s" % self.name)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0

    def format(self, a):
        return str(a % self.p)

    def sort_key(self, a):
        return a % self.p

    def unit_roots(self, coeffs):
        """All roots in F_p*, by evaluating at every unit; see RationalField."""
        work = _strip_unit_part(coeffs)
        if len(work) <= 1:
            return set(), True
        roots = set()
        for c in range(1, self.p):
            while len(work) > 1 and _horner(self, work, c) == 0:
                work = _deflate(self, work, c)
                roots.add(c)
        return roots, len(work) == 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return "PrimeField(%d)" % self.p


class ResiduePoly:
    """Univariate polynomial over a residue field, dense coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        if not self.coeffs:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        return len(self.coeffs) - 1

    def evaluate(self, x):
        return _horner(self.field, self.coeffs, x)

    def __eq__(self, other):
        return (
            isinstance(other, ResiduePoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return "ResiduePoly(%r, %r)" % (self.field, list(self.coeffs))


def roots_in_units(poly: ResiduePoly) -> set:
    """The distinct nonzero roots of ``poly`` over its residue field.

    Raises NonSplittingError when the unit part of ``poly`` does not
    factor into linear pieces (counted with multiplicity), since missing
    roots would silently lose tropical branches downstream.
    """
    if poly.is_zero():
        raise ZeroPolynomialError("cannot take roots of the zero polynomial")
    roots, split = poly.field.unit_roots(poly.coeffs)
    if not split:
        raise NonSplittingError(
            "polynomial does not split over %s" % poly.field.name, poly=poly
        )
    return roots


def unit_roots_partial(poly: ResiduePoly) -> set:
    """Best-effort unit roots, without the splitting guarantee.

    Used by the randomized polygon oracle, where missing a root only
    weakens a probabilistic check.
    """
    if poly.is_zero():
        return set()
    roots, _ = poly.field.unit_roots(poly.coeffs)
    return roots


def _strip_unit_part(coeffs):
    coeffs = list(coeffs)
    k = 0
    while k < len(coeffs) and coeffs[k] == 0:
        k += 1
    return coeffs[k:]


def _horner(field, coeffs, x):
    acc = field.zero
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


def _deflate(field, coeffs, root):
    # synthetic division by (x - root); exact because root is a root
    out = [field.zero] * (len(coeffs) - 1)
    carry = field.zero
    for i in range(len(coeffs) - 1, 0, -1):
        carry = field.add(coeffs[i], field.mul(root, carry))
        out[i - 1] = carry
    return out


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [1]
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return sorted(out)


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True
