"""Exact ground field for all symbolic computations.

Every coefficient in this package lives in Q(i)(s): rational functions in a
formal square root s of the deformation parameter (q = s**2), with Gaussian
rational coefficients.  Elements are kept in a canonical reduced form --
numerator and denominator coprime, denominator monic -- so equality is dict
equality and hashing is cheap.

Conjugation fixes s and sends i to -i (the deformation parameter is real).
Evaluation at a rational point 0 < s0 < 1 is exact and returns a Gaussian
rational.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

__all__ = [
    "GaussRat",
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "S",
    "Q",
    "s_pow",
    "q_pow",
    "from_int",
    "from_fraction",
    "q_bracket",
    "q_factorial",
    "q_exp_coeffs",
]


# ---------------------------------------------------------------------------
# Gaussian rationals


class GaussRat:
    """A Gaussian rational a + b*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _coerce_gauss(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce_gauss(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce_gauss(other) - self

    def __mul__(self, other):
        other = _coerce_gauss(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_gauss(other)
        n2 = other.re * other.re + other.im * other.im
        if n2 == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat(
            (self.re * other.re + self.im * other.im) / n2,
            (self.im * other.re - self.re * other.im) / n2,
        )

    def __rtruediv__(self, other):
        return _coerce_gauss(other) / self

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_gauss(self)


def _coerce_gauss(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRat(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to GaussRat")


_GR0 = GaussRat(0)
_GR1 = GaussRat(1)


def format_gauss(c: GaussRat) -> str:
    """Canonical text for a Gaussian rational: '3', '-1/2', 'i', '1/2-3/4i'."""
    re_, im = c.re, c.im
    if im == 0:
        return str(re_)
    if im == 1:
        ipart = "i"
    elif im == -1:
        ipart = "-i"
    else:
        ipart = f"{im}i"
    if re_ == 0:
        return ipart
    if im > 0 and not ipart.startswith("-"):
        return f"{re_}+{ipart}"
    return f"{re_}{ipart}"


_GAUSS_RE = _re.compile(
    r"""^\s*
        (?:(?P<re>[+-]?\d+(?:/\d+)?)(?=\s*$|\s*[+-]))?   # real part
        \s*
        (?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)\s*i)?          # imaginary part
        \s*$""",
    _re.VERBOSE,
)


def parse_gauss(text: str) -> GaussRat:
    """Inverse of :func:`format_gauss` (accepts minor whitespace)."""
    m = _GAUSS_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"bad Gaussian rational literal: {text!r}")
    re_ = Fraction(m.group("re")) if m.group("re") is not None else Fraction(0)
    im_raw = m.group("im")
    if im_raw is None:
        im = Fraction(0)
    elif im_raw in ("", "+"):
        im = Fraction(1)
    elif im_raw == "-":
        im = Fraction(-1)
    else:
        im = Fraction(im_raw)
    return GaussRat(re_, im)


# ---------------------------------------------------------------------------
# Sparse polynomials in s over the Gaussian rationals.
#
# Represented as {exponent: GaussRat} with no zero values.  These helpers are
# internal; only Scalar is part of the public surface.


def _padd(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = v + c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def _pneg(p: dict) -> dict:
    return {e: -c for e, c in p.items()}

def _pscale(p: dict, c: GaussRat) -> dict:
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def _pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            v = out.get(e)
            if v is None:
                out[e] = c1 * c2
            else:
                v = v + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
    return out


def _pdeg(p: dict) -> int:
    return max(p) if p else -1


def _pdivmod(p: dict, q: dict):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    qd = _pdeg(q)
    qlead = q[qd]
    quot: dict = {}
    rem = dict(p)
    while rem:
        rd = max(rem)
        if rd < qd:
            break
        c = rem[rd] / qlead
        quot[rd - qd] = c
        for e, v in q.items():
            k = rd - qd + e
            w = rem.get(k, _GR0) - c * v
            if w:
                rem[k] = w
            else:
                rem.pop(k, None)
    return quot, rem


def _pmonic(p: dict) -> dict:
    if not p:
        return p
    lead = p[max(p)]
    if lead == _GR1:
        return p
    return {e: c / lead for e, c in p.items()}


def _pgcd(p: dict, q: dict) -> dict:
    a, b = dict(p), dict(q)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _pmonic(a)


def _pcross(n: dict, d: dict):
    """Cancel the common factor of a numerator/denominator pair.

    Monomial sides only need an exponent shift, which covers almost all
    arithmetic on Laurent-type scalars; only genuinely dense pairs pay for
    a Euclidean gcd.
    """
    if len(d) == 1:
        ((e, c),) = d.items()
        sft = min(e, min(n))
        if sft:
            n = {k - sft: x for k, x in n.items()}
            d = {e - sft: c}
        return n, d
    if len(n) == 1:
        ((e, c),) = n.items()
        sft = min(e, min(d))
        if sft:
            n = {e - sft: c}
            d = {k - sft: x for k, x in d.items()}
        return n, d
    if _pdeg(n) > 0 and _pdeg(d) > 0:
        g = _pgcd(n, d)
        if _pdeg(g) > 0:
            n = _pdivmod(n, g)[0]
            d = _pdivmod(d, g)[0]
    return n, d


def _pconj(p: dict) -> dict:
    return {e: c.conjugate() for e, c in p.items()}


def _peval(p: dict, s0: Fraction) -> GaussRat:
    acc = _GR0
    for e, c in p.items():
        acc = acc + c * (s0**e)
    return acc


_P_ONE = {0: _GR1}


# ---------------------------------------------------------------------------
# Scalars


class Scalar:
    """An element of Q(i)(s) in canonical reduced form.

    Construct via the module helpers (from_int, s_pow, q_pow, parsing) or by
    arithmetic on existing scalars; the raw constructor expects already-clean
    {exp: GaussRat} dicts and canonicalizes them.
    """

    __slots__ = ("_num", "_den", "_h")

    def __init__(self, num: dict, den: dict | None = None, _reduced=False):
        if den is None:
            den = _P_ONE
        if not den:
            raise ZeroDivisionError("zero denominator in Scalar")
        if not num:
            num, den = {}, _P_ONE
        elif not _reduced:
            num, den = _reduce(num, den)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_h", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- predicates

    @property
    def is_zero(self) -> bool:
        return not self._num

    @property
    def is_one(self) -> bool:
        return self._num == _P_ONE and self._den == _P_ONE

    def __bool__(self):
        return bool(self._num)

    # -- ring ops

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._num:
            return other
        if not other._num:
            return self
        d1, d2 = self._den, other._den
        if d1 == d2:
            return Scalar(_padd(self._num, other._num), d1)
        num = _padd(_pmul(self._num, d2), _pmul(other._num, d1))
        return Scalar(num, _pmul(d1, d2))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_pneg(self._num), self._den, _reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._num or not other._num:
            return ZERO
        # cross-reduce first to keep intermediate degrees down
        n1, d1 = self._num, self._den
        n2, d2 = other._num, other._den
        if d2 != _P_ONE:
            n1, d2 = _pcross(n1, d2)
        if d1 != _P_ONE:
            n2, d1 = _pcross(n2, d1)
        num = _pmul(n1, n2)
        den = _pmul(d1, d2)
        lead = den[max(den)]
        if lead != _GR1:
            num = _pscale(num, _GR1 / lead)
            den = _pscale(den, _GR1 / lead)
        return Scalar(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self._num:
            raise ZeroDivisionError("inverse of zero scalar")
        num, den = self._den, self._num
        lead = den[max(den)]
        if lead != _GR1:
            num = _pscale(num, _GR1 / lead)
            den = _pscale(den, _GR1 / lead)
        return Scalar(num, den, _reduced=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- field structure

    def conjugate(self) -> "Scalar":
        """Complex conjugation: i -> -i, s fixed."""
        return Scalar(_pconj(self._num), _pconj(self._den))

    def eval_at(self, s0) -> GaussRat:
        """Exact evaluation at a rational point s = s0 (so q = s0**2)."""
        s0 = Fraction(s0)
        den = _peval(self._den, s0)
        if not den:
            raise ZeroDivisionError(f"pole at s = {s0}")
        return _peval(self._num, s0) / den

    # -- equality / hashing

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        h = self._h
        if h is None:
            h = hash(
                (
                    tuple(sorted(self._num.items())),
                    tuple(sorted(self._den.items())),
                )
            )
            object.__setattr__(self, "_h", h)
        return h

    # -- text form

    def to_string(self) -> str:
        """Canonical text: bracketed sparse num / den, e.g. '[0:1,4:-1]/[0:1]'."""
        return f"{_pformat(self._num)}/{_pformat(self._den)}"

    @staticmethod
    def from_string(text: str) -> "Scalar":
        """Parse the canonical text form, or a bare Gaussian literal like '1'."""
        text = text.strip()
        if "]/[" in text:
            ntxt, dtxt = text.split("]/[")
            num = _pparse(ntxt + "]")
            den = _pparse("[" + dtxt)
        elif text.startswith("["):
            num = _pparse(text)
            den = dict(_P_ONE)
        else:
            c = parse_gauss(text)
            num = {0: c} if c else {}
            den = dict(_P_ONE)
        return Scalar(num, den)

    def pretty(self) -> str:
        """Human-oriented rendering with s-powers, e.g. '(1 - s^4)/(s^2)'."""
        num = _ppretty(self._num)
        if self._den == _P_ONE:
            return num
        return f"({num})/({_ppretty(self._den)})"

    def __repr__(self):
        return f"Scalar[{self.pretty()}]"


def _reduce(num: dict, den: dict):
    # monomial denominator (the common case for Laurent-type scalars):
    # the gcd is itself a monomial, no Euclid needed
    if len(den) == 1:
        ((d, c),) = den.items()
        shift = min(d, min(num))
        if shift:
            num = {e - shift: x for e, x in num.items()}
            d -= shift
        if c != _GR1:
            num = _pscale(num, _GR1 / c)
        return num, ({0: _GR1} if d == 0 else {d: _GR1})
    # monomial numerator: symmetric shortcut
    if len(num) == 1:
        ((a, c),) = num.items()
        shift = min(a, min(den))
        if shift:
            num = {a - shift: c}
            den = {e - shift: x for e, x in den.items()}
        lead = den[max(den)]
        if lead != _GR1:
            inv = _GR1 / lead
            num = _pscale(num, inv)
            den = _pscale(den, inv)
        return num, den
    # strip common monomial factor cheaply first
    shift = min(min(num), min(den))
    if shift > 0:
        num = {e - shift: c for e, c in num.items()}
        den = {e - shift: c for e, c in den.items()}
    if _pdeg(den) > 0 and _pdeg(num) > 0:
        g = _pgcd(num, den)
        if _pdeg(g) > 0:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
    lead = den[max(den)]
    if lead != _GR1:
        inv = _GR1 / lead
        num = _pscale(num, inv)
        den = _pscale(den, inv)
    return num, den


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        if x == 0:
            return ZERO
        if x == 1:
            return ONE
        return Scalar({0: GaussRat(x)}, _P_ONE, _reduced=True)
    if isinstance(x, Fraction):
        return Scalar({0: GaussRat(x)}, _P_ONE, _reduced=True) if x else ZERO
    if isinstance(x, GaussRat):
        return Scalar({0: x}, _P_ONE, _reduced=True) if x else ZERO
    return NotImplemented


def _pformat(p: dict) -> str:
    if not p:
        return "[]"
    items = ",".join(f"{e}:{format_gauss(c)}" for e, c in sorted(p.items()))
    return f"[{items}]"


def _pparse(text: str) -> dict:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"bad polynomial literal: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return {}
    out: dict = {}
    for chunk in body.split(","):
        etxt, _, ctxt = chunk.partition(":")
        if not _:
            raise ValueError(f"bad term {chunk!r} in {text!r}")
        e = int(etxt)
        if e < 0:
            raise ValueError(f"negative exponent in {text!r}")
        c = parse_gauss(ctxt)
        if c:
            out[e] = out.get(e, _GR0) + c
    return {e: c for e, c in out.items() if c}


def _ppretty(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for e, c in sorted(p.items()):
        if e == 0:
            term = format_gauss(c)
        else:
            sterm = "s" if e == 1 else f"s^{e}"
            if c == _GR1:
                term = sterm
            elif c == GaussRat(-1):
                term = f"-{sterm}"
            else:
                cs = format_gauss(c)
                if "+" in cs[1:] or "-" in cs[1:]:
                    cs = f"({cs})"
                term = f"{cs}*{sterm}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


# ---------------------------------------------------------------------------
# Constants and q-combinatorics

ZERO = Scalar({}, _P_ONE, _reduced=True)
ONE = Scalar({0: _GR1}, _P_ONE, _reduced=True)
I = Scalar({0: GaussRat(0, 1)}, _P_ONE, _reduced=True)
S = Scalar({1: _GR1}, _P_ONE, _reduced=True)
Q = Scalar({2: _GR1}, _P_ONE, _reduced=True)


def from_int(n: int) -> Scalar:
    return _coerce(int(n))


def from_fraction(fr) -> Scalar:
    return _coerce(Fraction(fr))


def s_pow(k: int) -> Scalar:
    """s**k for any integer k (negative powers land in the denominator)."""
    if k >= 0:
        return Scalar({k: _GR1}, _P_ONE, _reduced=True)
    return Scalar({0: _GR1}, {-k: _GR1}, _reduced=True)


def q_pow(k: int) -> Scalar:
    """q**k = s**(2k) for any integer k."""
    return s_pow(2 * k)


def q_bracket(j: int) -> Scalar:
    """(1 - q**(2j)) / (1 - q**2), the basic q-square integer."""
    num = _padd({4 * j: GaussRat(-1)}, _P_ONE)
    den = _padd({4: GaussRat(-1)}, _P_ONE)
    return Scalar(num, den)


def q_factorial(k: int) -> Scalar:
    """Product of q_bracket(j) for j = 1..k (empty product for k = 0)."""
    out = ONE
    for j in range(1, k + 1):
        out = out * q_bracket(j)
    return out


def q_exp_coeffs(kmax: int) -> list:
    """Taylor coefficients through degree kmax of the q-squared exponential.

    Entry k is 1 / q_factorial(k); the series starts [1, 1, 1/(1+q^2), ...].
    """
    return [q_factorial(k).inverse() for k in range(kmax + 1)]
