"""Exact algebra substrate: integer polynomials, truncated integer power
series in x, polynomials in v over such series, and bivariate (x, v)
integer polynomials.

Everything is arbitrary precision (Python ints) and every division is
checked: dividing by a unit series, by a power of x, by a constant, or by
a polynomial either succeeds exactly or raises.  Rational values use
``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Union


class ConsistencyError(ArithmeticError):
    """An exact structural check failed (divisibility, vanishing tail,
    nonzero remainder, or a mismatch between two routes to one value)."""


class InexactDivisionError(ConsistencyError):
    """A division that was required to be exact left a remainder."""


# ---------------------------------------------------------------------------
# Univariate integer polynomials
# ---------------------------------------------------------------------------

class IntPoly:
    """Dense univariate polynomial with integer coefficients.

    Coefficients are stored in ascending power order and normalized so the
    highest stored coefficient is nonzero; the zero polynomial stores
    nothing and has degree -1.

    >>> p = IntPoly([4, 2])          # 4 + 2q
    >>> p * IntPoly([-1, 1])         # times (q - 1)
    IntPoly([-4, 2, 2])
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def term(cls, coeff: int, power: int = 0) -> IntPoly:
        """coeff * x**power."""
        if coeff == 0:
            return cls()
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __getitem__(self, power: int) -> int:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: Union[IntPoly, int]) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> IntPoly:
        if exponent < 0:
            raise ValueError("negative exponent")
        result = IntPoly([1])
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> IntPoly:
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def eval_at(self, point):
        """Evaluate by Horner's rule; exact for int or Fraction points."""
        acc = point * 0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def divexact(self, divisor: IntPoly) -> IntPoly:
        """Exact polynomial quotient; raises InexactDivisionError if the
        division leaves a remainder or a non-integer coefficient."""
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return IntPoly()
        dd = divisor.degree
        if self.degree < dd:
            raise InexactDivisionError(f"degree {self.degree} < divisor degree {dd}")
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(divisor.coeffs[-1])
        q = [Fraction(0)] * (self.degree - dd + 1)
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + dd] / lead
            q[k] = c
            if c:
                for i, dc in enumerate(divisor.coeffs):
                    rem[k + i] -= c * dc
        if any(rem):
            raise InexactDivisionError("nonzero polynomial remainder")
        if any(f.denominator != 1 for f in q):
            raise InexactDivisionError("quotient has non-integer coefficients")
        return IntPoly(int(f) for f in q)

    def divexact_const(self, c: int) -> IntPoly:
        if c == 0:
            raise ZeroDivisionError
        out = []
        for a in self.coeffs:
            if a % c:
                raise InexactDivisionError(f"coefficient {a} not divisible by {c}")
            out.append(a // c)
        return IntPoly(out)

    def coeffs_through(self, degree: int) -> list[int]:
        """Coefficient list padded/truncated to exactly degree + 1 entries."""
        return [self[i] for i in range(degree + 1)]

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = var if i == 1 else f"{var}^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


P_ZERO = IntPoly()
P_ONE = IntPoly([1])
P_X = IntPoly([0, 1])


# ---------------------------------------------------------------------------
# Truncated integer power series in x
# ---------------------------------------------------------------------------

class XSeries:
    """Integer power series in x known exactly through x**order.

    Arithmetic results carry the minimum order of the operands.  A series
    is invertible iff its constant term is +1 or -1 (the units of the
    integer series ring); every other division must be requested as a
    checked exact division and raises if it fails.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[int], order: int):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = list(coeffs)[: order + 1]
        cs.extend([0] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def from_poly(cls, p: IntPoly, order: int) -> XSeries:
        return cls(p.coeffs, order)

    @classmethod
    def zero(cls, order: int) -> XSeries:
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> XSeries:
        return cls((1,), order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def coeff(self, k: int) -> int:
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, XSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order >= 6 else ""
        return f"XSeries([{head}{tail}], order={self.order})"

    def matches(self, other: XSeries) -> bool:
        """Equality through the common truncation order."""
        m = min(self.order, other.order)
        return self.coeffs[: m + 1] == other.coeffs[: m + 1]

    def truncate(self, order: int) -> XSeries:
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        if order == self.order:
            return self
        return XSeries(self.coeffs, order)

    def __neg__(self) -> XSeries:
        return XSeries((-c for c in self.coeffs), self.order)

    def __add__(self, other: XSeries) -> XSeries:
        m = min(self.order, other.order)
        return XSeries((a + b for a, b in zip(self.coeffs, other.coeffs)), m)

    def __sub__(self, other: XSeries) -> XSeries:
        m = min(self.order, other.order)
        return XSeries((a - b for a, b in zip(self.coeffs, other.coeffs)), m)

    def __mul__(self, other: Union[XSeries, IntPoly, int]) -> XSeries:
        if isinstance(other, int):
            return XSeries((c * other for c in self.coeffs), self.order)
        if isinstance(other, IntPoly):
            other = XSeries.from_poly(other, self.order)
        m = min(self.order, other.order)
        out = [0] * (m + 1)
        for i, a in enumerate(self.coeffs[: m + 1]):
            if a:
                for j in range(m + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return XSeries(out, m)

    __rmul__ = __mul__

    def mul_xpow(self, k: int) -> XSeries:
        """Multiply by x**k, keeping the same truncation order."""
        if k == 0:
            return self
        return XSeries((0,) * k + self.coeffs, self.order)

    def divexact_xpow(self, k: int) -> XSeries:
        """Divide by x**k; the k lowest coefficients must vanish.  The
        result is only known through order - k."""
        if k == 0:
            return self
        if k > self.order:
            raise ValueError("dividing past the truncation order")
        if any(self.coeffs[:k]):
            raise InexactDivisionError(f"series not divisible by x^{k}")
        return XSeries(self.coeffs[k:], self.order - k)

    def divexact_const(self, c: int) -> XSeries:
        if c == 0:
            raise ZeroDivisionError
        out = []
        for a in self.coeffs:
            if a % c:
                raise InexactDivisionError(f"coefficient {a} not divisible by {c}")
            out.append(a // c)
        return XSeries(out, self.order)

    def divexact(self, divisor: XSeries) -> XSeries:
        """Exact quotient q with q * divisor == self up to truncation.

        The divisor must be a unit (constant term +-1); every coefficient
        of the quotient is then forced and integral.
        """
        if divisor.coeffs[0] not in (1, -1):
            raise ValueError("divisor is not a unit series (constant term must be +-1)")
        m = min(self.order, divisor.order)
        lead = divisor.coeffs[0]
        out = [0] * (m + 1)
        for k in range(m + 1):
            acc = self.coeffs[k]
            for i in range(k):
                q = out[i]
                if q:
                    acc -= q * divisor.coeffs[k - i]
            out[k] = acc * lead  # 1/lead == lead for lead in {1, -1}
        return XSeries(out, m)

    def inverse(self) -> XSeries:
        return XSeries.one(self.order).divexact(self)

    def poly_part(self, max_degree: int | None = None) -> IntPoly:
        """The stored coefficients as a polynomial (optionally capped)."""
        if max_degree is None:
            return IntPoly(self.coeffs)
        return IntPoly(self.coeffs[: max_degree + 1])


def series_div_exact(a: XSeries, b: XSeries) -> XSeries:
    """Exact series division a / b for a unit divisor b."""
    return a.divexact(b)


# ---------------------------------------------------------------------------
# Polynomials in v over truncated series
# ---------------------------------------------------------------------------

class VPoly:
    """Polynomial in v with XSeries coefficients sharing one truncation
    order; normalized so the top v-coefficient is not identically zero."""

    __slots__ = ("vcoeffs", "order")

    def __init__(self, vcoeffs: Iterable[XSeries], order: int | None = None):
        vs = list(vcoeffs)
        if order is None:
            if not vs:
                raise ValueError("order is required for an empty VPoly")
            order = min(s.order for s in vs)
        if any(s.order < order for s in vs):
            raise ValueError("coefficient order below the requested VPoly order")
        vs = [s.truncate(order) for s in vs]
        while vs and vs[-1].is_zero():
            vs.pop()
        self.vcoeffs = tuple(vs)
        self.order = order

    @classmethod
    def zero(cls, order: int) -> VPoly:
        return cls((), order)

    @classmethod
    def from_series(cls, s: XSeries) -> VPoly:
        return cls([s], s.order)

    @property
    def vdegree(self) -> int:
        return len(self.vcoeffs) - 1

    def is_zero(self) -> bool:
        return not self.vcoeffs

    def coeff(self, k: int) -> XSeries:
        if 0 <= k < len(self.vcoeffs):
            return self.vcoeffs[k]
        return XSeries.zero(self.order)

    def __repr__(self) -> str:
        return f"VPoly(vdegree={self.vdegree}, order={self.order})"

    def matches(self, other: VPoly) -> bool:
        """Coefficient-wise equality through the common truncation order."""
        for k in range(max(self.vdegree, other.vdegree) + 1):
            if not self.coeff(k).matches(other.coeff(k)):
                return False
        return True

    def __neg__(self) -> VPoly:
        return VPoly((-s for s in self.vcoeffs), self.order)

    def __add__(self, other: VPoly) -> VPoly:
        m = min(self.order, other.order)
        n = max(len(self.vcoeffs), len(other.vcoeffs))
        return VPoly(
            ((self.coeff(k) + other.coeff(k)).truncate(m) for k in range(n)), m
        )

    def __sub__(self, other: VPoly) -> VPoly:
        return self + (-other)

    def __mul__(self, other: Union[VPoly, XSeries, IntPoly, int]) -> VPoly:
        if isinstance(other, (IntPoly, int)):
            return VPoly((s * other for s in self.vcoeffs), self.order)
        if isinstance(other, XSeries):
            m = min(self.order, other.order)
            return VPoly(((s * other) for s in self.vcoeffs), m)
        m = min(self.order, other.order)
        if self.is_zero() or other.is_zero():
            return VPoly.zero(m)
        out = [XSeries.zero(m) for _ in range(self.vdegree + other.vdegree + 1)]
        for i, a in enumerate(self.vcoeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.vcoeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return VPoly(out, m)

    __rmul__ = __mul__

    def mul_xpow(self, k: int) -> VPoly:
        return VPoly((s.mul_xpow(k) for s in self.vcoeffs), self.order)

    def shift_v(self, k: int) -> VPoly:
        if self.is_zero() or k == 0:
            return self
        pad = [XSeries.zero(self.order)] * k
        return VPoly(pad + list(self.vcoeffs), self.order)

    def eval_v_one(self) -> XSeries:
        acc = XSeries.zero(self.order)
        for s in self.vcoeffs:
            acc = acc + s
        return acc

    def subst_v(self, w: XSeries) -> XSeries:
        """Substitute the series w for v (Horner's rule)."""
        m = min(self.order, w.order)
        acc = XSeries.zero(m)
        for s in reversed(self.vcoeffs):
            acc = acc * w + s.truncate(m)
        return acc


def substitute_v_with_series(p: VPoly, w: XSeries) -> XSeries:
    return p.subst_v(w)


def vpoly_div_kernel(b: VPoly, s: XSeries, vdeg: int) -> VPoly:
    """Exact quotient of b by the kernel factor (1 - s*v).

    Long division from the top v-degree, using the unit leading
    coefficient -s; a nonzero remainder means the claimed divisibility is
    false and raises ConsistencyError.  The quotient is re-multiplied by
    the kernel as an independent confirmation, and its v-degree must not
    exceed vdeg.
    """
    order = min(b.order, s.order)
    neg_s = (-s).truncate(order)
    cols = [c.truncate(order) for c in b.vcoeffs]
    d = len(cols) - 1
    if d < 0:
        return VPoly.zero(order)
    quot = [XSeries.zero(order)] * d
    for k in range(d - 1, -1, -1):
        qk = cols[k + 1].divexact(neg_s)
        quot[k] = qk
        cols[k] = cols[k] - qk
        cols[k + 1] = XSeries.zero(order)
    if not cols[0].is_zero():
        raise ConsistencyError("kernel division left a nonzero remainder")
    q = VPoly(quot, order)
    kernel = VPoly([XSeries.one(order), neg_s], order)
    if not (kernel * q).matches(VPoly(b.vcoeffs, order)):
        raise ConsistencyError("kernel quotient failed re-multiplication check")
    if q.vdegree > vdeg:
        raise ConsistencyError(f"kernel quotient v-degree {q.vdegree} exceeds {vdeg}")
    return q


# ---------------------------------------------------------------------------
# Bivariate integer polynomials in (x, v)
# ---------------------------------------------------------------------------

class XVPoly:
    """Integer polynomial in x and v, stored as one x-polynomial per
    v-power and normalized in v."""

    __slots__ = ("vcoeffs",)

    def __init__(self, vcoeffs: Iterable[Union[IntPoly, Iterable[int]]] = ()):
        vs = [c if isinstance(c, IntPoly) else IntPoly(c) for c in vcoeffs]
        while vs and not vs[-1]:
            vs.pop()
        self.vcoeffs = tuple(vs)

    @classmethod
    def from_xpoly(cls, p: IntPoly) -> XVPoly:
        return cls([p])

    @classmethod
    def term(cls, coeff: int, xpow: int = 0, vpow: int = 0) -> XVPoly:
        return cls([IntPoly()] * vpow + [IntPoly.term(coeff, xpow)])

    @property
    def vdegree(self) -> int:
        return len(self.vcoeffs) - 1

    @property
    def xdegree(self) -> int:
        return max((p.degree for p in self.vcoeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.vcoeffs

    def coeff(self, vpow: int) -> IntPoly:
        if 0 <= vpow < len(self.vcoeffs):
            return self.vcoeffs[vpow]
        return P_ZERO

    def __eq__(self, other: object) -> bool:
        return isinstance(other, XVPoly) and self.vcoeffs == other.vcoeffs

    def __hash__(self) -> int:
        return hash(self.vcoeffs)

    def __repr__(self) -> str:
        return f"XVPoly(vdegree={self.vdegree}, xdegree={self.xdegree})"

    def __neg__(self) -> XVPoly:
        return XVPoly(-p for p in self.vcoeffs)

    def __add__(self, other: XVPoly) -> XVPoly:
        n = max(len(self.vcoeffs), len(other.vcoeffs))
        return XVPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    def __sub__(self, other: XVPoly) -> XVPoly:
        return self + (-other)

    def __mul__(self, other: Union[XVPoly, IntPoly, int]) -> XVPoly:
        if isinstance(other, (IntPoly, int)):
            return XVPoly(p * other for p in self.vcoeffs)
        if self.is_zero() or other.is_zero():
            return XVPoly()
        out = [P_ZERO] * (self.vdegree + other.vdegree + 1)
        for i, a in enumerate(self.vcoeffs):
            if a:
                for j, b in enumerate(other.vcoeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return XVPoly(out)

    __rmul__ = __mul__

    def shift_x(self, k: int) -> XVPoly:
        return XVPoly(p.shift(k) for p in self.vcoeffs)

    def shift_v(self, k: int) -> XVPoly:
        if self.is_zero() or k == 0:
            return self
        return XVPoly([P_ZERO] * k + list(self.vcoeffs))

    def to_vpoly(self, order: int) -> VPoly:
        return VPoly((XSeries.from_poly(p, order) for p in self.vcoeffs), order)

    def matrix(self) -> list[list[int]]:
        """Dense coefficient matrix, row-major: matrix[i][j] = [x^i v^j]."""
        xd = max(self.xdegree, 0)
        vd = max(self.vdegree, 0)
        return [[self.coeff(j)[i] for j in range(vd + 1)] for i in range(xd + 1)]


def xvpoly_extract_from_series(
    g: VPoly,
    pre_factor_num: XVPoly,
    divide_x_power: int,
    divide_const: int,
    degree_bound_x: int,
) -> XVPoly:
    """Multiply g by an exact polynomial prefactor and certify the result
    is ``divide_const * x**divide_x_power`` times an integer polynomial of
    x-degree at most degree_bound_x.

    Each v-coefficient series must be divisible by the stated power of x
    and by the constant, and every surviving coefficient past the degree
    bound (through the truncation order) must vanish; any violation raises.
    """
    prod = g * pre_factor_num.to_vpoly(g.order)
    out: list[IntPoly] = []
    for k in range(prod.vdegree + 1):
        series = prod.coeff(k)
        series = series.divexact_xpow(divide_x_power)
        series = series.divexact_const(divide_const)
        tail = series.coeffs[degree_bound_x + 1 :]
        if any(tail):
            bad = degree_bound_x + 1 + next(i for i, c in enumerate(tail) if c)
            raise ConsistencyError(
                f"v^{k} coefficient has a nonzero term at x^{bad}, "
                f"beyond the degree bound {degree_bound_x}"
            )
        out.append(series.poly_part(degree_bound_x))
    return XVPoly(out)


# ---------------------------------------------------------------------------
# Canonical JSON forms (decimal-string coefficients)
# ---------------------------------------------------------------------------

def poly_json(p: IntPoly, var: str) -> dict:
    return {"var": var, "coeffs": [str(c) for c in p.coeffs]}


def xvpoly_json(p: XVPoly) -> dict:
    return {
        "vars": ["x", "v"],
        "matrix": [[str(c) for c in row] for row in p.matrix()],
    }
