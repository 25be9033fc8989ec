"""Multivariate polynomials and rational functions over Q(sigma).

Polynomials are dictionaries from exponent tuples to nonzero MetallicScalar
coefficients.  Rational functions are stored as num/den pairs of polynomials
without gcd cancellation -- only the denominator is rescaled so its leading
coefficient is 1, which keeps representations deterministic.  Equality is by
cross-multiplication, so unsimplified representatives compare correctly.

RatF entries satisfy the generic field interface used by linalg, which lets
the bundle construction run symbolically along a chart.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import MetallicParams, MetallicScalar


class Poly:
    """Polynomial in nvars chart variables with MetallicScalar coefficients."""

    __slots__ = ("nvars", "coeffs", "params")

    def __init__(self, nvars: int, coeffs: dict, params: MetallicParams):
        self.nvars = nvars
        self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}
        self.params = params

    # -- constructors ----------------------------------------------------------

    @classmethod
    def constant(cls, value, nvars: int, params: MetallicParams) -> "Poly":
        if isinstance(value, (int, Fraction)):
            value = MetallicScalar(value, 0, params)
        return cls(nvars, {(0,) * nvars: value}, params)

    @classmethod
    def variable(cls, index: int, nvars: int, params: MetallicParams) -> "Poly":
        expo = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {expo: MetallicScalar(1, 0, params)}, params)

    def zero(self) -> "Poly":
        return Poly(self.nvars, {}, self.params)

    def one(self) -> "Poly":
        return Poly.constant(1, self.nvars, self.params)

    # -- predicates --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in k) for k in self.coeffs)

    def constant_value(self) -> MetallicScalar:
        if self.is_zero():
            return MetallicScalar(0, 0, self.params)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.coeffs.values()))

    def degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(k) for k in self.coeffs)

    # -- coercion -----------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, MetallicScalar)):
            return Poly.constant(other, self.nvars, self.params)
        return None

    # -- arithmetic -----------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in o.coeffs.items():
            if k in out:
                s = out[k] + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return Poly(self.nvars, out, self.params)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {k: -v for k, v in self.coeffs.items()}, self.params)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, RatF):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in o.coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                prod = v1 * v2
                if k in out:
                    s = out[k] + prod
                    if s.is_zero():
                        del out[k]
                    else:
                        out[k] = s
                elif not prod.is_zero():
                    out[k] = prod
        return Poly(self.nvars, out, self.params)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MetallicScalar)):
            other = Poly.constant(other, self.nvars, self.params)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __bool__(self):
        return not self.is_zero()

    # -- calculus ------------------------------------------------------------------

    def diff(self, index: int) -> "Poly":
        out: dict = {}
        for k, v in self.coeffs.items():
            e = k[index]
            if e == 0:
                continue
            nk = tuple(x - 1 if i == index else x for i, x in enumerate(k))
            c = v * e
            if nk in out:
                c = out[nk] + c
            if not c.is_zero():
                out[nk] = c
            elif nk in out:
                del out[nk]
        return Poly(self.nvars, out, self.params)

    def eval(self, point) -> MetallicScalar:
        """Evaluate at a point of MetallicScalars (or rationals)."""
        pts = [
            v if isinstance(v, MetallicScalar) else MetallicScalar(v, 0, self.params)
            for v in point
        ]
        total = MetallicScalar(0, 0, self.params)
        pows: list[dict] = [dict() for _ in range(self.nvars)]
        for k, coeff in self.coeffs.items():
            term = coeff
            for i, e in enumerate(k):
                if e == 0:
                    continue
                cache = pows[i]
                if e not in cache:
                    cache[e] = pts[i] ** e
                term = term * cache[e]
            total = total + term
        return total

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            mono = "*".join(
                f"u{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(k)
                if e > 0
            )
            c = str(self.coeffs[k])
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    __repr__ = __str__


class RatF:
    """Rational function num/den over Q(sigma), denominator never zero."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = num.one()
        else:
            lead = den.coeffs[max(den.coeffs)]
            if not (lead.a == 1 and lead.b == 0):
                inv = lead.inverse()
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------------

    @classmethod
    def from_poly(cls, p: Poly) -> "RatF":
        return cls(p, p.one())

    @classmethod
    def constant(cls, value, nvars: int, params: MetallicParams) -> "RatF":
        return cls.from_poly(Poly.constant(value, nvars, params))

    def zero(self) -> "RatF":
        return RatF.from_poly(self.num.zero())

    def one(self) -> "RatF":
        return RatF.from_poly(self.num.one())

    # -- predicates -----------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> MetallicScalar:
        return self.num.constant_value() / self.den.constant_value()

    # -- coercion ----------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatF):
            return other
        if isinstance(other, Poly):
            return RatF.from_poly(other)
        if isinstance(other, (int, Fraction, MetallicScalar)):
            return RatF.constant(other, self.num.nvars, self.num.params)
        return None

    # -- arithmetic ----------------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatF(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatF(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatF(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatF(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("inverse of zero rational function")
            return RatF(self.den, self.num) ** (-n)
        return RatF(self.num ** n, self.den ** n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __bool__(self):
        return not self.is_zero()

    # -- calculus -----------------------------------------------------------------------

    def diff(self, index: int) -> "RatF":
        n, d = self.num, self.den
        return RatF(n.diff(index) * d - n * d.diff(index), d * d)

    def eval(self, point) -> MetallicScalar:
        dv = self.den.eval(point)
        if dv.is_zero():
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return self.num.eval(point) / dv

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__
