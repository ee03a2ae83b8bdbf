"""The quantized enveloping algebra as free words, and its covariant action.

Elements are Scalar-linear combinations of free words in the letters
E_j, F_j, K_j, K_j^{-1} (j = 1..N-1); no normalization against the defining
relations is attempted — correctness of everything built on top is tested
semantically through the action.

The action on an algebra preset is determined by:

  * explicit single-symbol tables for the plain coordinates (split by
    whether the node j is the distinguished one, j = n),
  * the projection generator's own table,
  * the differential symbols via commuting the action with d,
  * the conjugated symbols via the involution-compatibility identity
    act(xi, f*) = (act(star(antipode(xi)), f))*,

and extended to words by the twisted Leibniz rule encoded in the coproduct:
the E-letters scale the prefix by its K-eigenvalue, the F-letters scale the
suffix by its K^{-1}-eigenvalue.
"""

from __future__ import annotations

import functools
import re

from .algebras import AlgebraPreset, differential
from .field import ONE, Scalar, ZERO, q_pow, s_pow
from .words import NCPoly, sym

__all__ = [
    "UqElement",
    "E",
    "F",
    "K",
    "Kinv",
    "coproduct",
    "expand_leg",
    "antipode",
    "counit",
    "star_sunm",
    "act",
    "letter_token",
    "parse_letter",
]

_LETTER_KINDS = ("E", "F", "K", "Kinv")


def letter_token(letter: tuple) -> str:
    kind, j = letter
    return f"K{j}inv" if kind == "Kinv" else f"{kind}{j}"


_TOKEN_RE = re.compile(r"^(E|F|K)(\d+)(inv)?$")


def parse_letter(token: str) -> tuple:
    m = _TOKEN_RE.match(token)
    if not m or (m.group(3) and m.group(1) != "K"):
        raise ValueError(f"bad letter token {token!r}")
    kind = "Kinv" if m.group(3) else m.group(1)
    return (kind, int(m.group(2)))


class UqElement:
    """Scalar-linear combination of free words in the four letter families."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            if c:
                clean[tuple(w)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("UqElement is immutable")

    # -- constructors

    @classmethod
    def zero(cls) -> "UqElement":
        return cls({})

    @classmethod
    def one(cls) -> "UqElement":
        return cls({(): ONE})

    @classmethod
    def letter(cls, kind: str, j: int) -> "UqElement":
        if kind not in _LETTER_KINDS:
            raise ValueError(f"unknown letter kind {kind!r}")
        if j < 1:
            raise ValueError("letter index must be >= 1")
        return cls({((kind, j),): ONE})

    # -- ring structure

    def __add__(self, other: "UqElement") -> "UqElement":
        acc = dict(self.terms)
        for w, c in other.terms.items():
            v = acc.get(w)
            acc[w] = c if v is None else v + c
        return UqElement(acc)

    def __sub__(self, other: "UqElement") -> "UqElement":
        return self + other.scale(-ONE)

    def __neg__(self) -> "UqElement":
        return self.scale(-ONE)

    def __mul__(self, other: "UqElement") -> "UqElement":
        acc: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                v = acc.get(w)
                acc[w] = c if v is None else v + c
        return UqElement(acc)

    def scale(self, c) -> "UqElement":
        c = c if isinstance(c, Scalar) else ONE * c
        return UqElement({w: v * c for w, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, UqElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- serialization

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"word": [letter_token(l) for l in w], "coeff": c.to_string()}
                for w, c in sorted(
                    self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])
                )
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> "UqElement":
        acc: dict = {}
        for t in data["terms"]:
            w = tuple(parse_letter(tok) for tok in t["word"])
            c = Scalar.from_string(t["coeff"])
            v = acc.get(w)
            acc[w] = c if v is None else v + c
        return cls(acc)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            word = " ".join(letter_token(l) for l in w) or "1"
            bits.append(f"({c.pretty()})*{word}")
        return " + ".join(bits)


def E(j: int) -> UqElement:
    return UqElement.letter("E", j)


def F(j: int) -> UqElement:
    return UqElement.letter("F", j)


def K(j: int) -> UqElement:
    return UqElement.letter("K", j)


def Kinv(j: int) -> UqElement:
    return UqElement.letter("Kinv", j)


# ---------------------------------------------------------------------------
# coalgebra structure


def _letter_coproduct(letter: tuple) -> list:
    """2-leg coproduct of one letter: list of ((left word, right word), coeff)."""
    kind, j = letter
    if kind == "E":
        return [(((letter,), ()), ONE), (((("K", j),), (letter,)), ONE)]
    if kind == "F":
        return [(((letter,), (("Kinv", j),)), ONE), (((), (letter,)), ONE)]
    return [(((letter,), (letter,)), ONE)]


def _word_coproduct(word: tuple) -> dict:
    """2-leg coproduct of a word (multiplicativity of the coproduct)."""
    acc = {((), ()): ONE}
    for letter in word:
        nxt: dict = {}
        for (l_acc, r_acc), c in acc.items():
            for (l_new, r_new), c2 in _letter_coproduct(letter):
                key = (l_acc + l_new, r_acc + r_new)
                v = nxt.get(key)
                p = c * c2
                nxt[key] = p if v is None else v + p
        acc = nxt
    return acc


def expand_leg(tensor: dict, leg: int) -> dict:
    """Apply the coproduct to one leg of a tensor {words-tuple: Scalar}."""
    acc: dict = {}
    for words, c in tensor.items():
        for (lw, rw), c2 in _word_coproduct(words[leg]).items():
            key = words[:leg] + (lw, rw) + words[leg + 1 :]
            p = c * c2
            v = acc.get(key)
            if v is None:
                acc[key] = p
            else:
                v = v + p
                if v:
                    acc[key] = v
                else:
                    del acc[key]
        # (no other legs touched)
    return acc


def coproduct(xi: UqElement, legs: int = 2) -> dict:
    """Iterated coproduct: {tuple of `legs` words: Scalar}."""
    if legs < 2:
        raise ValueError("the coproduct needs at least two legs")
    tensor = {(w,): c for w, c in xi.terms.items()}
    for _ in range(legs - 1):
        tensor = expand_leg(tensor, len(next(iter(tensor), ((),))) - 1)
    return tensor


def _letter_antipode(letter: tuple) -> tuple:
    """(word, coeff) for the antipode of one letter."""
    kind, j = letter
    if kind == "E":
        return ((("Kinv", j), letter), -ONE)
    if kind == "F":
        return ((letter, ("K", j)), -ONE)
    if kind == "K":
        return ((("Kinv", j),), ONE)
    return ((("K", j),), ONE)


def antipode(xi: UqElement) -> UqElement:
    acc: dict = {}
    for w, c in xi.terms.items():
        word: tuple = ()
        coeff = c
        for letter in reversed(w):
            lw, lc = _letter_antipode(letter)
            word = word + lw
            coeff = coeff * lc
        v = acc.get(word)
        acc[word] = coeff if v is None else v + coeff
    return UqElement(acc)


def counit(xi: UqElement) -> Scalar:
    total = ZERO
    for w, c in xi.terms.items():
        if all(kind in ("K", "Kinv") for kind, _ in w):
            total = total + c
    return total


def star_sunm(xi: UqElement, n: int) -> UqElement:
    """The compact-real-form involution with the sign flip at node n.

    Antilinear and anti-multiplicative; K-letters are fixed, and
    E_j* = K_j F_j, F_j* = E_j K_j^{-1}, each acquiring a minus sign at the
    distinguished node j = n.
    """
    def letter_star(letter: tuple):
        kind, j = letter
        sgn = -ONE if j == n else ONE
        if kind == "E":
            return ((("K", j), ("F", j)), sgn)
        if kind == "F":
            return ((("E", j), ("Kinv", j)), sgn)
        return ((letter,), ONE)

    acc: dict = {}
    for w, c in xi.terms.items():
        word: tuple = ()
        coeff = c.conjugate()
        for letter in reversed(w):
            lw, lc = letter_star(letter)
            word = word + lw
            coeff = coeff * lc
        v = acc.get(word)
        acc[word] = coeff if v is None else v + coeff
    return UqElement(acc)


# ---------------------------------------------------------------------------
# the action


def _star_words(f: NCPoly) -> NCPoly:
    """Symbol-level involution (word reversal, kind swap, conjugation)."""
    swap = {"z": "zs", "zs": "z", "dz": "dzs", "dzs": "dz", "f0": "f0"}
    acc: dict = {}
    for w, c in f.terms.items():
        w2 = tuple(sym(swap[g.kind], g.row, g.col) for g in reversed(w))
        cc = c.conjugate()
        v = acc.get(w2)
        acc[w2] = cc if v is None else v + cc
    return NCPoly(acc)


@functools.lru_cache(maxsize=None)
def _z_table(letter: tuple, a: int, al: int, m: int, n: int) -> NCPoly:
    """Action of one letter on the plain coordinate with indices (a, al)."""
    kind, j = letter
    N = m + n
    g = sym("z", a, al)
    if kind in ("K", "Kinv"):
        mu = _symbol_weight_component(g, j, m, n)
        return NCPoly.from_word((g,), q_pow(mu if kind == "K" else -mu))
    if kind == "E":
        if j < n:
            if a == j + 1:
                return NCPoly.from_word((sym("z", j, al),), s_pow(-1))
            return NCPoly.zero()
        if j > n:
            if al == N - j + 1:
                return NCPoly.from_word((sym("z", a, N - j),), s_pow(-1))
            return NCPoly.zero()
        # the distinguished node: quadratic raising
        znm = sym("z", n, m)
        if a == n and al == m:
            return NCPoly.from_word((znm, znm), -s_pow(1))
        if a == n or al == m:
            return NCPoly.from_word((znm, g), -s_pow(1))
        return NCPoly.from_word((sym("z", a, m), sym("z", n, al)), -s_pow(-1))
    # kind == "F"
    if j < n:
        if a == j:
            return NCPoly.from_word((sym("z", j + 1, al),), s_pow(1))
        return NCPoly.zero()
    if j > n:
        if al == N - j:
            return NCPoly.from_word((sym("z", a, N - j + 1),), s_pow(1))
        return NCPoly.zero()
    if a == n and al == m:
        return NCPoly.from_word((), s_pow(1))
    return NCPoly.zero()


def _symbol_weight_component(g, j: int, m: int, n: int) -> int:
    if g.kind == "f0":
        return 0
    a, al = g.row, g.col
    if j < n:
        mu = (1 if a == j else 0) - (1 if a == j + 1 else 0)
    elif j == n:
        mu = (1 if a == n else 0) + (1 if al == m else 0)
    else:
        i = j - n
        mu = (1 if al == m - i else 0) - (1 if al == m - i + 1 else 0)
    if g.kind in ("zs", "dzs"):
        mu = -mu
    return mu


@functools.lru_cache(maxsize=None)
def _f0_table(letter: tuple, m: int, n: int) -> NCPoly:
    kind, j = letter
    f0 = sym("f0")
    if kind in ("K", "Kinv"):
        return NCPoly.from_word((f0,), ONE)
    if j != n:
        return NCPoly.zero()
    if kind == "E":
        coeff = (-s_pow(1)) / (ONE - q_pow(2))
        return NCPoly.from_word((sym("z", n, m), f0), coeff)
    coeff = (-s_pow(1)) / (q_pow(-2) - ONE)
    return NCPoly.from_word((f0, sym("zs", n, m)), coeff)


@functools.lru_cache(maxsize=None)
def _symbol_table(letter: tuple, g_kind: str, a: int, al: int, m: int, n: int) -> NCPoly:
    """Action of one letter on one generator symbol, as a raw polynomial."""
    if g_kind == "z":
        return _z_table(letter, a, al, m, n)
    if g_kind == "dz":
        return differential(_z_table(letter, a, al, m, n))
    if g_kind == "f0":
        return _f0_table(letter, m, n)
    if g_kind == "zs":
        # involution compatibility: xi(f*) = ((S(xi))* f)*
        xi = UqElement.letter(*letter)
        eta = star_sunm(antipode(xi), n)
        base = NCPoly.from_word((sym("z", a, al),), ONE)
        moved = _act_free(eta, base, m, n)
        return _star_words(moved)
    if g_kind == "dzs":
        return differential(_symbol_table(letter, "zs", a, al, m, n))
    raise ValueError(f"no action table for symbol kind {g_kind!r}")


def _act_letter_poly(letter: tuple, f: NCPoly, m: int, n: int) -> NCPoly:
    """One letter acting on a polynomial via the twisted Leibniz rule (raw)."""
    kind, j = letter
    acc: dict = {}

    def add(word, coeff):
        if not coeff:
            return
        v = acc.get(word)
        if v is None:
            acc[word] = coeff
        else:
            v = v + coeff
            if v:
                acc[word] = v
            else:
                del acc[word]

    for w, c in f.terms.items():
        if kind in ("K", "Kinv"):
            mu = sum(_symbol_weight_component(g, j, m, n) for g in w)
            add(w, c * q_pow(mu if kind == "K" else -mu))
            continue
        for i, g in enumerate(w):
            tbl = _symbol_table(letter, g.kind, g.row, g.col, m, n)
            if not tbl:
                continue
            if kind == "E":
                mu = sum(_symbol_weight_component(x, j, m, n) for x in w[:i])
            else:
                mu = -sum(_symbol_weight_component(x, j, m, n) for x in w[i + 1 :])
            factor = c * q_pow(mu)
            for tw, tc in tbl.terms.items():
                add(w[:i] + tw + w[i + 1 :], factor * tc)
    return NCPoly(acc)


def _act_free(xi: UqElement, f: NCPoly, m: int, n: int) -> NCPoly:
    """xi acting on f without any rewriting (free words)."""
    out = NCPoly.zero()
    for w, c in xi.terms.items():
        cur = f
        for letter in reversed(w):
            cur = _act_letter_poly(letter, cur, m, n)
        out = out + cur.scale(c)
    return out


def act(xi: UqElement, f: NCPoly, preset: AlgebraPreset) -> NCPoly:
    """The covariant action, returned in normal form."""
    m, n = preset.m, preset.n
    N = m + n
    for w in xi.terms:
        for kind, j in w:
            if not 1 <= j <= N - 1:
                raise ValueError(
                    f"letter index {j} outside 1..{N - 1} for this preset"
                )
    for w in f.terms:
        for g in w:
            if g.kind not in preset.presentation.kinds:
                raise ValueError(
                    f"symbol kind {g.kind!r} not part of preset {preset.name}"
                )
    reduced = preset.normal_form(f)
    return preset.normal_form(_act_free(xi, reduced, m, n))
