"""Exact arithmetic in Q, cyclotomic fields Q(zeta_m), and one simple extension on top.

The tower never has more than two levels above Q: the cyclotomic level holds
the values of sigma, the extension level holds the evaluation point ``z``.
Elements of Q are plain :class:`fractions.Fraction`; elements of an extension
are :class:`ExtElem`, a coordinate tuple over the level below.

Irreducibility of a user-supplied minimal polynomial is not checked.  If it is
reducible, the first inversion that hits a zero divisor raises
:class:`~alexdef.errors.ReducibleMinpolyError` naming the factor found.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .errors import PreconditionError, ReducibleMinpolyError

__all__ = [
    "QQ",
    "RationalField",
    "SimpleExtension",
    "CyclotomicField",
    "ExtElem",
    "FieldElem",
    "FieldDescriptor",
    "cyclotomic_polynomial",
    "cyclotomic_field",
    "parse_minpoly",
    "format_poly",
]


class RationalField:
    degree = 1
    base = None
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, ExtElem):
            return x.to_rational()
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction))

    def conjugate(self, x):
        return self(x)

    def embed(self, x) -> complex:
        return complex(x)

    def format(self, x) -> str:
        return str(self(x))

    def is_rational(self, x) -> bool:
        return True

    def tower(self) -> list:
        return [self]

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()


# --- dense polynomials over a field: lists of coefficients, low degree first ---

def p_trim(f: list) -> list:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def p_add(f, g, F) -> list:
    n = max(len(f), len(g))
    return p_trim([(f[i] if i < len(f) else F.zero) + (g[i] if i < len(g) else F.zero) for i in range(n)])


def p_sub(f, g, F) -> list:
    return p_add(f, [-c for c in g], F)


def p_mul(f, g, F) -> list:
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return p_trim(out)


def p_divmod(f, g, F) -> tuple[list, list]:
    g = p_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = p_trim(f)
    if len(r) < len(g):
        return [], r
    inv_lead = F.one / g[-1]
    q = [F.zero] * (len(r) - len(g) + 1)
    while len(r) >= len(g) and r:
        shift = len(r) - len(g)
        c = r[-1] * inv_lead
        q[shift] = c
        for k, b in enumerate(g):
            r[shift + k] = r[shift + k] - c * b
        r.pop()
        r = p_trim(r)
    return p_trim(q), r


def p_monic(f, F) -> list:
    f = p_trim(f)
    if not f:
        return f
    inv = F.one / f[-1]
    return [c * inv for c in f]


def p_xgcd(f, g, F) -> tuple[list, list, list]:
    """Return ``(d, s, t)`` with ``s f + t g = d`` and ``d`` monic (or zero)."""
    r0, r1 = p_trim(f), p_trim(g)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = p_divmod(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(s0, p_mul(q, s1, F), F)
        t0, t1 = t1, p_sub(t0, p_mul(q, t1, F), F)
    if r0:
        inv = F.one / r0[-1]
        r0 = [c * inv for c in r0]
        s0 = [c * inv for c in s0]
        t0 = [c * inv for c in t0]
    return r0, s0, t0


def p_gcd(f, g, F) -> list:
    return p_xgcd(f, g, F)[0]


def p_eval(f, x, F):
    acc = F.zero
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _is_compound(text: str) -> bool:
    return any(ch in text[1:] for ch in "+-")


def format_poly(coeffs: dict[int, object], var: str, fmt, descending: bool = True) -> str:
    """Render ``sum c_k var^k`` with ``*`` and ``^``, e.g. ``t^2-6*t+1``."""
    parts = []
    for k in sorted(coeffs, reverse=descending):
        if coeffs[k] == 0:
            continue
        c = fmt(coeffs[k])
        if k == 0:
            parts.append(c)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        if c == "1":
            parts.append(mono)
        elif c == "-1":
            parts.append("-" + mono)
        elif _is_compound(c):
            parts.append(f"({c})*{mono}")
        else:
            parts.append(f"{c}*{mono}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


class SimpleExtension:
    """``base[x] / (modulus)`` with ``modulus`` monic over ``base``.

    ``conjugation`` selects how complex conjugation acts on the generator:
    ``"inverse"`` (roots of unity, unit-circle points), ``"fixed"`` (real
    points) or ``None`` (conjugation undefined on this level).
    """

    def __init__(
        self,
        base,
        modulus: Sequence,
        var: str = "x",
        *,
        conjugation: str | None = None,
        root: complex | None = None,
        root_hint: complex | None = None,
    ) -> None:
        coeffs = p_trim([base(c) for c in modulus])
        if len(coeffs) < 2:
            raise PreconditionError("minimal polynomial must have degree >= 1")
        self.base = base
        self.modulus = tuple(p_monic(coeffs, base))
        self.degree = len(self.modulus) - 1
        self.var = var
        if conjugation not in (None, "inverse", "fixed"):
            raise ValueError(f"unknown conjugation mode {conjugation!r}")
        self.conjugation = conjugation
        self._conj_checked = False
        self._root = root
        self._root_hint = root_hint
        self.zero = ExtElem(self, (base.zero,) * self.degree)
        self.one = self.from_poly([base.one])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimpleExtension)
            and self.base == other.base
            and self.modulus == other.modulus
            and self.var == other.var
        )

    def __hash__(self) -> int:
        return hash((self.base, self.modulus, self.var))

    def __repr__(self) -> str:
        mod = format_poly(dict(enumerate(self.modulus)), self.var, self.base.format)
        return f"{self.base!r}[{self.var}]/({mod})"

    def tower(self) -> list:
        return self.base.tower() + [self]

    @property
    def gen(self) -> "ExtElem":
        return self.from_poly([self.base.zero, self.base.one])

    def from_poly(self, coeffs: Sequence) -> "ExtElem":
        poly = p_trim([self.base(c) for c in coeffs])
        if len(poly) > self.degree:
            _, poly = p_divmod(poly, list(self.modulus), self.base)
        padded = tuple(poly) + (self.base.zero,) * (self.degree - len(poly))
        return ExtElem(self, padded)

    def __call__(self, x) -> "ExtElem":
        if isinstance(x, ExtElem):
            if x.field == self:
                return x
            if x.field in self.base.tower():
                return ExtElem(self, (self.base(x),) + (self.base.zero,) * (self.degree - 1))
            raise TypeError(f"cannot coerce element of {x.field!r} into {self!r}")
        if isinstance(x, (int, Fraction)):
            return ExtElem(self, (self.base(x),) + (self.base.zero,) * (self.degree - 1))
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def contains(self, x) -> bool:
        try:
            self(x)
        except TypeError:
            return False
        return True

    def is_rational(self, a) -> bool:
        a = self(a)
        return all(c == 0 for c in a.coeffs[1:]) and self.base.is_rational(a.coeffs[0])

    # -- conjugation and complex embedding --

    def _conj_image_of_gen(self) -> "ExtElem":
        if self.conjugation is None:
            raise PreconditionError(
                f"conjugation is undefined on {self!r}; mark the extension as 'fixed' or 'inverse'"
            )
        image = self.gen if self.conjugation == "fixed" else self.gen.inverse()
        if not self._conj_checked:
            conj_mod = [self.base.conjugate(c) for c in self.modulus]
            if p_eval([self(c) for c in conj_mod], image, self) != 0:
                raise PreconditionError(f"{self!r} is not stable under the requested conjugation")
            self._conj_checked = True
        return image

    def conjugate(self, a) -> "ExtElem":
        a = self(a)
        image = self._conj_image_of_gen()
        acc = self.zero
        power = self.one
        for c in a.coeffs:
            acc = acc + power * self(self.base.conjugate(c))
            power = power * image
        return acc

    @property
    def root(self) -> complex:
        if self._root is None:
            coeffs = [self.base.embed(c) for c in reversed(self.modulus)]
            roots = np.roots(np.array(coeffs, dtype=complex)) if self.degree > 0 else []
            roots = [complex(r) for r in roots]
            if self._root_hint is not None:
                self._root = min(roots, key=lambda r: abs(r - self._root_hint))
            else:
                self._root = max(roots, key=lambda r: (round(abs(r), 9), round(r.real, 9), round(r.imag, 9)))
        return self._root

    def all_roots(self) -> list[complex]:
        coeffs = [self.base.embed(c) for c in reversed(self.modulus)]
        return [complex(r) for r in np.roots(np.array(coeffs, dtype=complex))]

    def with_root(self, root: complex) -> "SimpleExtension":
        """Same field, embedded via the root closest to ``root``."""
        return SimpleExtension(
            self.base, self.modulus, self.var, conjugation=self.conjugation, root_hint=root
        )

    def embed(self, a, root: complex | None = None) -> complex:
        a = self(a)
        r = self.root if root is None else root
        return sum((self.base.embed(c) * r**k for k, c in enumerate(a.coeffs)), 0j)

    def format(self, a) -> str:
        a = self(a)
        coeffs = {k: c for k, c in enumerate(a.coeffs) if c != 0}
        return format_poly(coeffs, self.var, self.base.format, descending=False)


class CyclotomicField(SimpleExtension):
    """``Q(zeta_m)``, represented modulo the m-th cyclotomic polynomial."""

    def __init__(self, m: int) -> None:
        if m < 1:
            raise ValueError("cyclotomic order must be >= 1")
        self.order = m
        super().__init__(
            QQ,
            cyclotomic_polynomial(m),
            "zeta",
            conjugation="inverse",
            root=cmath.exp(2j * cmath.pi / m),
        )

    def zeta(self, k: int = 1) -> "ExtElem":
        """``zeta_m ** k`` for any integer ``k``."""
        k %= self.order
        if self.order == 1:
            return self.one
        return self.gen**k

    def __repr__(self) -> str:
        return f"QQ(zeta{self.order})"


class ExtElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: SimpleExtension, coeffs: tuple) -> None:
        self.field = field
        self.coeffs = coeffs

    def _pair(self, other):
        """Bring ``self`` and ``other`` into a common field, or return ``None``."""
        try:
            return self, self.field(other)
        except TypeError:
            pass
        if isinstance(other, ExtElem) and self.field in other.field.tower():
            return other.field(self), other
        return None

    def _coerce(self, other):
        try:
            return self.field(other)
        except TypeError:
            return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return ExtElem(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "ExtElem":
        return ExtElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return ExtElem(a.field, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b - a

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        F = a.field
        if F.degree == 1:
            return ExtElem(F, (a.coeffs[0] * b.coeffs[0],))
        return F.from_poly(p_mul(p_trim(list(a.coeffs)), p_trim(list(b.coeffs)), F.base))

    __rmul__ = __mul__

    def inverse(self) -> "ExtElem":
        F = self.field
        poly = p_trim(list(self.coeffs))
        if not poly:
            raise ZeroDivisionError(f"division by zero in {F!r}")
        if F.degree == 1:
            return ExtElem(F, (F.base.one / self.coeffs[0],))
        d, s, _ = p_xgcd(poly, list(F.modulus), F.base)
        if len(d) > 1:
            factor = format_poly(dict(enumerate(d)), F.var, F.base.format)
            raise ReducibleMinpolyError(
                f"reducible minimal polynomial: {F.format(self)} is a zero divisor in {F!r} "
                f"(common factor {factor})",
                factor=d,
            )
        return F.from_poly(s)

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[0] * pair[1].inverse()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[1] * pair[0].inverse()

    def __pow__(self, k: int) -> "ExtElem":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[0].coeffs == pair[1].coeffs

    def __hash__(self) -> int:
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def __bool__(self) -> bool:
        return any(c != 0 for c in self.coeffs)

    def to_rational(self) -> Fraction:
        if any(c != 0 for c in self.coeffs[1:]):
            raise TypeError(f"{self} is not rational")
        return QQ(self.coeffs[0])

    def conjugate(self) -> "ExtElem":
        return self.field.conjugate(self)

    def embed(self) -> complex:
        return self.field.embed(self)

    def __str__(self) -> str:
        return self.field.format(self)

    def __repr__(self) -> str:
        return f"ExtElem({self.field!r}, {self})"


FieldElem = Union[Fraction, ExtElem]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, low degree first.

    Computed by dividing t^m - 1 by Phi_d for every proper divisor d of m.
    """
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, rem = p_divmod(num, [Fraction(c) for c in cyclotomic_polynomial(d)], QQ)
            assert not rem
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def cyclotomic_field(m: int) -> CyclotomicField:
    return CyclotomicField(m)


class FieldDescriptor:
    """The fields of one analysis: ``Q(zeta_m)`` and optionally ``Q(zeta_m)[z]/(minpoly)``.

    The minimal polynomial must have a nonzero constant term, so ``z`` is a
    unit and Laurent polynomials can be evaluated at it.
    """

    def __init__(
        self,
        cyclotomic_order: int = 1,
        minpoly: Sequence | None = None,
        *,
        conjugation: str | None = None,
        root_hint: complex | None = None,
    ) -> None:
        self.cyclotomic_order = cyclotomic_order
        self.cyclo = cyclotomic_field(cyclotomic_order)
        self.ext = None
        if minpoly is not None:
            coeffs = p_trim([self.cyclo(c) for c in minpoly])
            if len(coeffs) < 2:
                raise PreconditionError("minimal polynomial must have degree >= 1")
            if coeffs[0] == 0:
                raise PreconditionError("minimal polynomial has zero constant term; z must be nonzero")
            if len(coeffs) > 2:
                check_irreducible(coeffs, self.cyclo)
            self.ext = SimpleExtension(
                self.cyclo, coeffs, "z", conjugation=conjugation, root_hint=root_hint
            )

    @property
    def top(self):
        return self.ext if self.ext is not None else self.cyclo

    @property
    def z(self) -> ExtElem:
        if self.ext is None:
            raise PreconditionError("no evaluation point: descriptor has no extension minpoly")
        return self.ext.gen

    @property
    def minpoly(self) -> tuple:
        return self.ext.modulus if self.ext is not None else ()

    def minpoly_string(self, var: str = "t") -> str:
        if self.ext is None:
            return ""
        return format_poly(dict(enumerate(self.ext.modulus)), var, self.cyclo.format)

    def __repr__(self) -> str:
        return f"FieldDescriptor(m={self.cyclotomic_order}, minpoly={self.minpoly_string()!r})"


def _to_sympy_poly(coeffs: Sequence, cyclo: CyclotomicField):
    import sympy

    t = sympy.Symbol("t")
    if cyclo.degree > 1:
        zeta = sympy.exp(2 * sympy.pi * sympy.I / cyclo.order)
    else:
        zeta = sympy.Integer(-1 if cyclo.order == 2 else 1)
    expr = sympy.Integer(0)
    for i, c in enumerate(coeffs):
        c = cyclo(c)
        for j, q in enumerate(c.coeffs):
            expr += sympy.Rational(q.numerator, q.denominator) * zeta**j * t**i
    if cyclo.degree > 1:
        return sympy.Poly(expr, t, extension=zeta), t, zeta
    return sympy.Poly(expr, t, domain="QQ"), t, zeta


def check_irreducible(coeffs: Sequence, cyclo: CyclotomicField) -> None:
    """Raise ``ReducibleMinpolyError`` unless ``coeffs`` is irreducible over ``cyclo``."""
    poly, t, _ = _to_sympy_poly(coeffs, cyclo)
    if poly.is_irreducible:
        return
    factor = min((f for f, _ in poly.factor_list()[1]), key=lambda f: f.degree())
    raise ReducibleMinpolyError(
        f"reducible minimal polynomial over {cyclo!r}: {factor.as_expr()} is a proper factor",
        factor=factor,
    )


def parse_minpoly(text: str, cyclo: CyclotomicField) -> list[ExtElem]:
    """Parse ``"t^2-6*t+1"``-style input into cyclotomic coefficients, low degree first.

    ``zeta`` (or ``z``) stands for the primitive root of unity of ``cyclo``.
    """
    import sympy
    from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

    t, zeta = sympy.symbols("t zeta")
    try:
        expr = parse_expr(
            text,
            local_dict={"t": t, "zeta": zeta, "z": zeta},
            transformations=standard_transformations + (convert_xor,),
        )
        poly = sympy.Poly(sympy.expand(expr), t, zeta, domain="QQ")
    except Exception as exc:  # sympy raises a zoo of exception types here
        raise PreconditionError(f"cannot parse minimal polynomial {text!r}: {exc}") from exc
    deg = poly.degree(t)
    coeffs = [cyclo.zero] * (deg + 1)
    for (i, j), c in poly.terms():
        coeffs[i] = coeffs[i] + cyclo(Fraction(int(c.p), int(c.q))) * cyclo.zeta(j)
    return coeffs
