"""Exact integer polynomials, characteristic polynomials and real-root isolation."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, InputError

__all__ = [
    "IntPolynomial",
    "char_poly",
    "poly_divides",
    "poly_divmod",
    "sturm_sequence",
    "count_roots",
    "count_roots_below",
    "isolate_min_root",
    "min_root",
]


def _trim(cs: Iterable) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients constant term first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = _trim(coeffs)
        if any(int(c) != c for c in cs):
            raise InputError("IntPolynomial coefficients must be integers")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in cs))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Read ``"x^6-3x^5-7x^4+21x^3+13x^2-35x-4"`` style text (``**`` also accepted)."""
        s = text.replace(" ", "").replace("**", "^").replace("*", "")
        if not s:
            raise InputError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise InputError(f"cannot parse polynomial {text!r}")
        out: dict[int, int] = {}
        for t in terms:
            m = re.fullmatch(r"([+-])(\d*)(x(?:\^(\d+))?)?", t)
            if not m or (not m.group(2) and not m.group(3)):
                raise InputError(f"cannot parse term {t!r} in {text!r}")
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(1) == "-":
                c = -c
            e = 0 if not m.group(3) else int(m.group(4) or 1)
            out[e] = out.get(e, 0) + c
        deg = max(out)
        return cls([out.get(i, 0) for i in range(deg + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def shift(self, t: int) -> "IntPolynomial":
        """``p(x + t)``."""
        out = IntPolynomial(())
        lin = IntPolynomial((t, 1))
        for c in reversed(self.coeffs):
            out = out * lin + IntPolynomial((c,))
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                body = ("" if a == 1 else str(a)) + ("x" if e == 1 else f"x^{e}")
            parts.append((sign, body))
        s = "".join(f"{sg}{b}" for sg, b in parts)
        return s[1:] if s.startswith("+") else s


# rational helpers; lists of Fractions, constant term first


def _qtrim(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def poly_divmod(p: Sequence, d: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over the rationals."""
    d = _qtrim([Fraction(c) for c in d])
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    r = _qtrim([Fraction(c) for c in p])
    q = [Fraction(0)] * max(len(r) - len(d) + 1, 0)
    lead = d[-1]
    while len(r) >= len(d):
        shift = len(r) - len(d)
        f = r[-1] / lead
        q[shift] = f
        for i, c in enumerate(d):
            r[shift + i] -= f * c
        r.pop()
        _qtrim(r)
    return q, r


def poly_divides(d: IntPolynomial, p: IntPolynomial) -> bool:
    """True iff ``p = d * q`` for a rational polynomial ``q``."""
    if d.is_zero():
        raise InputError("divisor must be non-zero")
    _, r = poly_divmod(p.coeffs, d.coeffs)
    return not r


def _qgcd(a: list, b: list) -> list:
    a, b = _qtrim(list(a)), _qtrim(list(b))
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        a = [c / a[-1] for c in a]
    return a


def char_poly(M: Sequence[Sequence[int]]) -> IntPolynomial:
    """``det(xI - M)`` by Berkowitz's division-free algorithm.

    Entries must be integers; arithmetic is exact throughout.
    """
    rows = [[int(x) for x in r] for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("char_poly needs a square matrix")
    for r, src in zip(rows, M):
        if any(int(x) != x for x in src):
            raise InputError("char_poly needs integer entries")
    if n == 0:
        return IntPolynomial((1,))
    # vect holds det(xI - M_r) coefficients, highest degree first, for the leading r x r block
    vect = [1, -rows[0][0]]
    for r in range(1, n):
        R = [rows[i][r] for i in range(r)]  # column above the diagonal
        C = rows[r][:r]  # row left of the diagonal
        A = [row[:r] for row in rows[:r]]
        a = rows[r][r]
        # Toeplitz column: 1, -a, -C R, -C A R, -C A^2 R, ...
        col = [1, -a]
        v = R[:]
        for _ in range(r):
            col.append(-sum(c * x for c, x in zip(C, v)))
            v = [sum(A[i][j] * v[j] for j in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            new.append(sum(col[i - j] * vect[j] for j in range(min(i, r) + 1)))
        vect = new
    return IntPolynomial(reversed(vect))


def sturm_sequence(p: IntPolynomial) -> list[list[Fraction]]:
    """Sturm chain of the square-free part of ``p``."""
    if p.is_zero():
        raise DomainError("the zero polynomial has no Sturm sequence")
    cs = [Fraction(c) for c in p.coeffs]
    dcs = [Fraction(c) for c in p.derivative().coeffs]
    g = _qgcd(cs, dcs)
    sf = poly_divmod(cs, g)[0] if len(g) > 1 else cs
    seq = [sf, _qtrim([i * c for i, c in enumerate(sf) if i])]
    while len(seq[-1]) > 1:
        r = poly_divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _eval(cs: Sequence, x):
    acc = 0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _variations(seq, x) -> int:
    signs = []
    for s in seq:
        v = _eval(s, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _root_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.leading)
    return 1 + Fraction(max((abs(c) for c in p.coeffs[:-1]), default=0), lead)


def count_roots(p: IntPolynomial, a, b) -> int:
    """Distinct real roots in the half-open interval ``(a, b]``."""
    seq = sturm_sequence(p)
    return _variations(seq, Fraction(a)) - _variations(seq, Fraction(b))


def count_roots_below(p: IntPolynomial, x) -> int:
    """Distinct real roots strictly below ``x``."""
    seq = sturm_sequence(p)
    x = Fraction(x)
    lo = -_root_bound(p)
    n = _variations(seq, lo) - _variations(seq, x)
    return n - (1 if _eval(p.coeffs, x) == 0 else 0)


def isolate_min_root(p: IntPolynomial, precision=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi]`` of width at most ``precision`` holding the smallest real root."""
    if p.degree < 1:
        raise DomainError(f"{p} has no real root")
    seq = sturm_sequence(p)
    # a power-of-two bound makes every midpoint dyadic, so dyadic roots are hit exactly
    bound = Fraction(2) ** max(0, math.ceil(math.log2(_root_bound(p))))
    lo, hi = -bound, bound
    v_lo = _variations(seq, lo)
    if v_lo - _variations(seq, hi) == 0:
        raise DomainError(f"{p} has no real root")
    precision = Fraction(precision)
    if precision <= 0:
        raise InputError("precision must be positive")
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if v_lo - _variations(seq, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def min_root(p: IntPolynomial, precision: float = 1e-12) -> float:
    """Smallest real root of ``p`` to within ``precision``."""
    lo, hi = isolate_min_root(p, Fraction(precision))
    if _eval(p.coeffs, hi) == 0:
        return float(hi)
    return float((lo + hi) / 2)
