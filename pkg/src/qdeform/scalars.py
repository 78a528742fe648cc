"""Exact scalar arithmetic for q-deformed algebra.

The coefficient ring is Laurent polynomials in s = q^(1/2) with Gaussian
rational coefficients.  Keeping half-integer powers of q exact lets rewrite
rules such as T+ x -> q x T+ + q^(-1/2) y live in one ring, and conjugation
(q real, q >= 1) reduces to conjugating coefficients termwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


class QExactError(ValueError):
    """Raised for operations that leave the exact scalar ring."""


# ---------------------------------------------------------------------------
# half-integers


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    twice: int

    @staticmethod
    def coerce(value) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return HalfInt(2 * value)
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise QExactError(f"{value} is not a half-integer")
            return HalfInt(int(doubled))
        if isinstance(value, float):
            doubled = 2.0 * value
            if not doubled.is_integer():
                raise QExactError(f"{value} is not a half-integer")
            return HalfInt(int(doubled))
        raise TypeError(f"cannot interpret {value!r} as a half-integer")

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_int(self) -> int:
        if not self.is_integer():
            raise QExactError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.coerce(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.coerce(other).twice)

    def __rsub__(self, other):
        return HalfInt(HalfInt.coerce(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("HalfInt can only be scaled by an integer")
        return HalfInt(self.twice * k)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return self.twice / 2.0

    def __str__(self) -> str:
        if self.is_integer():
            return str(self.twice // 2)
        return f"{self.twice}/2"


def halfint_range_desc(j: HalfInt) -> list[HalfInt]:
    """Magnetic labels j, j-1, ..., -j in descending order."""
    if j.twice < 0:
        raise QExactError("spin label must be nonnegative")
    return [HalfInt(j.twice - 2 * k) for k in range(j.twice + 1)]


# ---------------------------------------------------------------------------
# Gaussian rationals


@dataclass(frozen=True)
class GaussRat:
    """Gaussian rational a + b*i with exact Fraction components."""

    re: Fraction
    im: Fraction

    @staticmethod
    def coerce(value) -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussRat(Fraction(value), Fraction(0))
        if isinstance(value, complex):
            raise TypeError("GaussRat is exact; build from int/Fraction instead")
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other):
        other = GaussRat.coerce(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussRat.coerce(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussRat.coerce(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRat.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        return GaussRat(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * float(self.im)

    def sqrt_exact(self):
        """Exact square root for nonnegative rational squares, else None."""
        if self.im != 0 or self.re < 0:
            return None
        num, den = self.re.numerator, self.re.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn != num or rd * rd != den:
            return None
        return GaussRat(Fraction(rn, rd), Fraction(0))


GR_ZERO = GaussRat(Fraction(0), Fraction(0))
GR_ONE = GaussRat(Fraction(1), Fraction(0))
GR_I = GaussRat(Fraction(0), Fraction(1))


# ---------------------------------------------------------------------------
# Laurent polynomials in s = q^(1/2)


def _frac_str(f: Fraction, as_factor: bool) -> str:
    s = str(f)
    if as_factor and f.denominator != 1:
        return f"({s})"
    return s


def _coeff_str(c: GaussRat, standalone: bool) -> str:
    """Canonical text for a coefficient, either alone or as a '*'-prefix."""
    if c.im == 0:
        return _frac_str(c.re, as_factor=not standalone)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        sign = "-" if c.im < 0 else ""
        return f"{sign}{_frac_str(abs(c.im), as_factor=True)}*i"
    op = "+" if c.im > 0 else "-"
    mag = abs(c.im)
    im_part = "i" if mag == 1 else f"{_frac_str(mag, as_factor=False)}*i"
    return f"({_frac_str(c.re, as_factor=False)}{op}{im_part})"


def _power_str(spow: int):
    """Render s^spow as a power of q; None for spow == 0."""
    if spow == 0:
        return None
    if spow % 2 == 0:
        e = spow // 2
        if e == 1:
            return "q"
        if e > 0:
            return f"q^{e}"
        return f"q^({e})"
    return f"q^({spow}/2)"


class QExact:
    """Exact Laurent polynomial in s = q^(1/2) over Gaussian rationals.

    Instances are treated as immutable; all operations return new objects.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean: dict[int, GaussRat] = {}
        if terms:
            for k, c in terms.items():
                c = GaussRat.coerce(c)
                if not c.is_zero():
                    clean[int(k)] = c
        object.__setattr__(self, "_terms", clean)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: GR_ONE})

    @classmethod
    def i(cls):
        return cls({0: GR_I})

    @classmethod
    def rational(cls, value):
        return cls({0: GaussRat.coerce(value)})

    @classmethod
    def gauss(cls, g: GaussRat):
        return cls({0: g})

    @classmethod
    def s_power(cls, k: int, coeff=1):
        return cls({k: GaussRat.coerce(coeff)})

    @classmethod
    def q_power(cls, k, coeff=1):
        """q^k for k in (1/2)Z; the s-power 2k must be an integer."""
        k = HalfInt.coerce(k)
        return cls({k.twice: GaussRat.coerce(coeff)})

    @classmethod
    def lam(cls):
        """The deformation scale q - 1/q."""
        return cls({2: GR_ONE, -2: -GR_ONE})

    # -- ring structure -----------------------------------------------

    @staticmethod
    def _coerce(value) -> "QExact":
        if isinstance(value, QExact):
            return value
        if isinstance(value, (int, Fraction)):
            return QExact.rational(value)
        if isinstance(value, GaussRat):
            return QExact.gauss(value)
        raise TypeError(f"cannot interpret {value!r} as a QExact scalar")

    @property
    def terms(self) -> dict[int, GaussRat]:
        return dict(self._terms)

    def __add__(self, other):
        other = QExact._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            acc = out.get(k, GR_ZERO) + c
            if acc.is_zero():
                out.pop(k, None)
            else:
                out[k] = acc
        return QExact(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-QExact._coerce(other))

    def __rsub__(self, other):
        return QExact._coerce(other) + (-self)

    def __neg__(self):
        return QExact({k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        other = QExact._coerce(other)
        out: dict[int, GaussRat] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                acc = out.get(k, GR_ZERO) + c1 * c2
                if acc.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = acc
        return QExact(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * QExact._coerce(other).inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise QExactError("QExact powers must be nonnegative integers")
        acc = QExact.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        try:
            other = QExact._coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def freeze(self):
        return tuple(
            (k, c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator)
            for k, c in sorted(self._terms.items())
        )

    def __hash__(self):
        return hash(self.freeze())

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: GR_ONE}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monomial(self):
        """(s-power, coefficient) if the scalar is a single term, else None."""
        if len(self._terms) != 1:
            return None
        [(k, c)] = self._terms.items()
        return k, c

    # -- involutions and evaluation -------------------------------------

    def conj(self) -> "QExact":
        """Conjugation: q (hence s) is real and fixed, coefficients conjugate."""
        return QExact({k: c.conj() for k, c in self._terms.items()})

    def inverse(self) -> "QExact":
        mono = self.monomial()
        if mono is None:
            raise QExactError("only monomial scalars c*s^k are invertible exactly")
        k, c = mono
        return QExact({-k: GR_ONE / c})

    def sqrt_monomial(self) -> "QExact":
        """Square root of a monomial c*s^(2k) with c a rational square."""
        mono = self.monomial()
        if mono is None or mono[0] % 2 != 0:
            raise QExactError("exact square root needs a monomial with even s-power")
        k, c = mono
        root = c.sqrt_exact()
        if root is None:
            raise QExactError(f"coefficient {c} is not a rational square")
        return QExact({k // 2: root})

    def eval(self, q: float) -> complex:
        if not q > 0.0:
            raise QExactError("evaluation requires a real q > 0")
        s = q ** 0.5
        acc = 0j
        for k, c in self._terms.items():
            acc += c.to_complex() * s ** k
        return acc

    def eval_at_s(self, s: Fraction) -> GaussRat:
        """Exact evaluation at a rational value of s (generic-point checks)."""
        s = Fraction(s)
        if s <= 0:
            raise QExactError("generic evaluation point must be positive")
        acc = GR_ZERO
        for k, c in self._terms.items():
            acc = acc + c * GaussRat(s ** k, Fraction(0))
        return acc

    # -- rendering -------------------------------------------------------

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms):
            c = self._terms[k]
            pstr = _power_str(k)
            if pstr is None:
                parts.append(_coeff_str(c, standalone=True))
            else:
                cs = _coeff_str(c, standalone=False)
                if cs == "1":
                    parts.append(pstr)
                elif cs == "-1":
                    parts.append(f"-{pstr}")
                else:
                    parts.append(f"{cs}*{pstr}")
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += f" - {p[1:]}"
            else:
                out += f" + {p}"
        return out

    def __repr__(self):
        return f"QExact[{self.render()}]"


def lambda_sym() -> QExact:
    return QExact.lam()


def q_number(n, r: int) -> QExact:
    """The q-number [n]_r = (1 - q^(r*n)) / (1 - q^r), exactly.

    The quotient is a Laurent polynomial in s precisely when n is an integer
    (geometric sum); other half-integers leave the ring and raise.
    """
    n = HalfInt.coerce(n)
    if r == 0:
        raise QExactError("q-number base r must be nonzero")
    a = r * n.twice          # numerator s-power: q^(r n) = s^(2 r n)
    b = 2 * r                # denominator s-power
    if a == 0:
        return QExact.zero()
    if a % b != 0:
        raise QExactError(
            f"[{n}]_{r} is not a Laurent polynomial in q^(1/2); "
            "only integer n divides exactly (use a floating evaluation instead)"
        )
    k = a // b
    if k > 0:
        return QExact({j * b: GR_ONE for j in range(k)})
    return QExact({(k + j) * b: -GR_ONE for j in range(-k)})


def q_number_value(n, r: int, q: float) -> float:
    """Floating [n]_r for any half-integer (or real) index n."""
    if r == 0:
        raise QExactError("q-number base r must be nonzero")
    if q == 1.0:
        return float(n)
    nf = float(n)
    return (1.0 - q ** (r * nf)) / (1.0 - q ** r)
