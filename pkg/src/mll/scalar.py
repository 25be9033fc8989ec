"""Exact arithmetic in the real quadratic field Q(sigma), sigma^2 = p*sigma + q.

Every element is stored as a + b*sigma with arbitrary-precision rational a, b.
The positive root sigma = (p + sqrt(p^2 + 4q))/2 is irrational because
discriminants that are perfect squares are rejected at construction, so the
representation is unique and equality is decidable by comparing coefficients.
No floating point is used anywhere; sign and decimal printing are done with
exact integer comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import NonPositiveParameter, SquareDiscriminant


class MetallicParams:
    """The pair (p, q) of the defining equation, with cached discriminant."""

    __slots__ = ("p", "q", "disc")

    def __init__(self, p: int, q: int):
        if not isinstance(p, int) or not isinstance(q, int):
            raise NonPositiveParameter("p and q must be integers")
        if p <= 0 or q <= 0:
            raise NonPositiveParameter(f"p and q must be positive, got ({p}, {q})")
        disc = p * p + 4 * q
        if isqrt(disc) ** 2 == disc:
            raise SquareDiscriminant(
                f"p^2 + 4q = {disc} is a perfect square; x^2 - {p}x - {q} splits over Q"
            )
        self.p = p
        self.q = q
        self.disc = disc

    def __eq__(self, other):
        return (
            isinstance(other, MetallicParams)
            and self.p == other.p
            and self.q == other.q
        )

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"MetallicParams(p={self.p}, q={self.q})"


def make_params(p: int, q: int) -> MetallicParams:
    """Validate (p, q) and return the field parameters."""
    return MetallicParams(p, q)


class MetallicScalar:
    """An element a + b*sigma of Q(sigma), with exact rational a and b."""

    __slots__ = ("a", "b", "params")

    def __init__(self, a, b, params: MetallicParams):
        self.a = a if isinstance(a, Fraction) else Fraction(a)
        self.b = b if isinstance(b, Fraction) else Fraction(b)
        self.params = params

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MetallicScalar):
            if other.params != self.params:
                raise ValueError("scalars belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return MetallicScalar(other, 0, self.params)
        return None

    def zero(self) -> MetallicScalar:
        return MetallicScalar(0, 0, self.params)

    def one(self) -> MetallicScalar:
        return MetallicScalar(1, 0, self.params)

    # -- ring/field operations -----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MetallicScalar(self.a + o.a, self.b + o.b, self.params)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MetallicScalar(self.a - o.a, self.b - o.b, self.params)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return MetallicScalar(-self.a, -self.b, self.params)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (a + b s)(c + d s) = ac + q bd + (ad + bc + p bd) s
        a, b, c, d = self.a, self.b, o.a, o.b
        bd = b * d
        return MetallicScalar(
            a * c + bd * self.params.q,
            a * d + b * c + bd * self.params.p,
            self.params,
        )

    __rmul__ = __mul__

    def inverse(self) -> MetallicScalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sigma)")
        conj = self.conjugate()
        return MetallicScalar(conj.a / n, conj.b / n, self.params)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.a == other and self.b == 0
        if isinstance(other, MetallicScalar):
            return (
                self.params == other.params
                and self.a == other.a
                and self.b == other.b
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.params))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    # -- field-specific operations ---------------------------------------------

    def conjugate(self) -> MetallicScalar:
        """The automorphism sigma |-> p - sigma: (a, b) |-> (a + b p, -b)."""
        return MetallicScalar(self.a + self.b * self.params.p, -self.b, self.params)

    def norm(self) -> Fraction:
        """x * conj(x), always rational: a^2 + p a b - q b^2."""
        a, b, p, q = self.a, self.b, self.params.p, self.params.q
        return a * a + p * a * b - q * b * b

    def sign(self) -> int:
        """Sign of the real number a + b*sigma, by exact rational comparison.

        Writing 2x = A + B*sqrt(d) with A = 2a + p b, B = b, the comparison
        of B*sqrt(d) with -A reduces to comparing squares; equality is
        impossible because d is not a perfect square.
        """
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        d = self.params.disc
        A = 2 * a + self.params.p * b
        B = b
        if B > 0:
            if A >= 0:
                return 1
            return 1 if B * B * d > A * A else -1
        if A <= 0:
            return -1
        return -1 if B * B * d > A * A else 1

    # -- printing ---------------------------------------------------------------

    def __str__(self):
        return scalar_to_str(self)

    def __repr__(self):
        return f"MetallicScalar({self.a!r}, {self.b!r}, p={self.params.p}, q={self.params.q})"


# -- constructors --------------------------------------------------------------

def zero(params: MetallicParams) -> MetallicScalar:
    return MetallicScalar(0, 0, params)


def one(params: MetallicParams) -> MetallicScalar:
    return MetallicScalar(1, 0, params)


def sigma(params: MetallicParams) -> MetallicScalar:
    return MetallicScalar(0, 1, params)


def from_rational(r, params: MetallicParams) -> MetallicScalar:
    return MetallicScalar(r, 0, params)


# -- module-level forms of the operations ---------------------------------------

def conjugate(x: MetallicScalar) -> MetallicScalar:
    return x.conjugate()


def sign(x: MetallicScalar) -> int:
    return x.sign()


def _cmp_root_term(Q: int, M: int, d: int) -> bool:
    """Whether Q*sqrt(d) >= M, for integers Q != 0, M, non-square d."""
    if Q > 0:
        return M <= 0 or Q * Q * d > M * M
    return M <= 0 and Q * Q * d < M * M


def _floor_linear_root(P: int, Q: int, D: int, d: int) -> int:
    """floor((P + Q*sqrt(d)) / D) for integers with D > 0, d non-square."""
    if Q == 0:
        return P // D
    m = isqrt(Q * Q * d)
    lo = m if Q > 0 else -m - 1  # Q*sqrt(d) lies in the open interval (lo, lo+1)
    k1 = (P + lo) // D
    k2 = (P + lo + 1) // D
    if k1 == k2:
        return k1
    M = k2 * D - P
    return k2 if _cmp_root_term(Q, M, d) else k1


def to_real_approx(x: MetallicScalar, digits: int) -> str:
    """Decimal expansion of x truncated toward zero after `digits` places."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    s = x.sign()
    if s == 0:
        return "0." + "0" * digits
    y = x if s > 0 else -x
    p, d = y.params.p, y.params.disc
    # y * 10^digits = (A + B*sqrt(d)) / 2 with A = (2a + p b) 10^k, B = b 10^k
    scale = 10 ** digits
    A = (2 * y.a + p * y.b) * scale
    B = y.b * scale
    P = A.numerator * B.denominator
    Q = B.numerator * A.denominator
    D = 2 * A.denominator * B.denominator
    n = _floor_linear_root(P, Q, D, d)
    ip, fp = divmod(n, scale)
    body = f"{ip}.{fp:0{digits}d}"
    return "-" + body if s < 0 else body


def scalar_to_str(x: MetallicScalar) -> str:
    """Canonical literal form: '0', '3/5', 'sigma', '1/2 - 2*sigma', ..."""
    a, b = x.a, x.b
    if b == 0:
        return str(a)
    if b == 1:
        bpart = "sigma"
    elif b == -1:
        bpart = "-sigma"
    else:
        bpart = f"{b}*sigma"
    if a == 0:
        return bpart
    if b > 0:
        return f"{a} + {bpart}"
    return f"{a} - {bpart.lstrip('-')}"
