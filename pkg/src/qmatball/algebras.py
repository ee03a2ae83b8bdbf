"""Factory of algebra presets, the involution, and the differential.

Seven presets share one rewriting engine:

    CMat     coordinate algebra of the deformed matrix space
    CMatBar  its conjugate twin on starred coordinates
    Pol      both halves glued by the cross-commutation rules
    Lambda   coordinates plus their differentials (holomorphic forms)
    Omega    the full involutive differential calculus
    FunU     Pol extended by the rank-one projection generator
    DU       the finite-function slice of FunU (words through the projection)

Every preset is a termination-checked :class:`~qmatball.words.Presentation`
plus an involution-availability flag.  Construction is cached per
(name, m, n, variant).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .braiding import (
    rules_conj_coord_diff,
    rules_coord_diff,
    rules_cross_conj,
    rules_wedge,
)
from .field import ONE, ZERO, q_pow
from .words import KIND_RANK, NCPoly, Presentation, sym

__all__ = [
    "PRESET_NAMES",
    "AlgebraPreset",
    "commutation_rules",
    "projection_rules",
    "make_preset",
    "parse_preset",
    "star",
    "differential",
    "in_projection_slice",
]

PRESET_NAMES = ("CMat", "CMatBar", "Pol", "Lambda", "Omega", "FunU", "DU")

_STAR_PRESETS = frozenset({"Pol", "Omega", "FunU", "DU"})

_STAR_KIND = {"z": "zs", "zs": "z", "dz": "dzs", "dzs": "dz", "f0": "f0"}

_DIFF_KIND = {"z": "dz", "zs": "dzs"}


def commutation_rules(m: int, n: int, kind: str = "z") -> dict:
    """Oriented quadratic rules among same-kind coordinates.

    Patterns are the strictly descending pairs in the row-major generator
    order.  Plain coordinates commute with coefficients (q^{-1}, 1, q^{-1}-q);
    the conjugated ones with the inverted coefficients (q, 1, q-q^{-1}).
    """
    if kind not in ("z", "zs"):
        raise ValueError("commutation rules exist for kinds z and zs")
    if kind == "z":
        qc, extra = q_pow(-1), q_pow(-1) - q_pow(1)
    else:
        qc, extra = q_pow(1), q_pow(1) - q_pow(-1)
    gens = [(a, al) for a in range(1, n + 1) for al in range(1, m + 1)]
    rules = {}
    for i, (b1, be1) in enumerate(gens):
        for (b2, be2) in gens[:i]:
            pat = (sym(kind, b1, be1), sym(kind, b2, be2))
            swap = (sym(kind, b2, be2), sym(kind, b1, be1))
            if b1 == b2 or be1 == be2:
                rules[pat] = NCPoly.from_word(swap, qc)
            elif be1 < be2:
                rules[pat] = NCPoly.from_word(swap, ONE)
            else:
                repl = NCPoly.from_word(swap, ONE) + NCPoly.from_word(
                    (sym(kind, b2, be1), sym(kind, b1, be2)), extra
                )
                rules[pat] = repl
    return rules


def projection_rules(m: int, n: int) -> dict:
    """Rules for the rank-one projection generator.

    The projection is idempotent, kills every plain coordinate on its right
    and every conjugated coordinate on its left.
    """
    f0 = sym("f0")
    rules: dict = {(f0, f0): NCPoly.from_word((f0,), ONE)}
    for a in range(1, n + 1):
        for al in range(1, m + 1):
            rules[(f0, sym("z", a, al))] = NCPoly.zero()
            rules[(sym("zs", a, al), f0)] = NCPoly.zero()
    return rules


def _diff_first_rank() -> dict:
    rank = dict(KIND_RANK)
    rank["z"], rank["dz"] = rank["dz"], rank["z"]
    return rank


@functools.lru_cache(maxsize=None)
def _build_presentation(name: str, m: int, n: int, diff_first: bool) -> Presentation:
    if name == "CMat":
        return Presentation(name, m, n, ("z",), commutation_rules(m, n, "z"))
    if name == "CMatBar":
        return Presentation(name, m, n, ("zs",), commutation_rules(m, n, "zs"))
    if name == "Pol":
        rules = {
            **commutation_rules(m, n, "z"),
            **commutation_rules(m, n, "zs"),
            **rules_cross_conj(m, n, "zs", "z"),
        }
        return Presentation(name, m, n, ("z", "zs"), rules)
    if name == "Lambda":
        rules = {
            **commutation_rules(m, n, "z"),
            **rules_coord_diff(m, n, diff_last=not diff_first),
            **rules_wedge(m, n, "dz"),
        }
        rank = _diff_first_rank() if diff_first else None
        return Presentation(name, m, n, ("z", "dz"), rules, kind_rank=rank)
    if name == "Omega":
        rules = {
            **commutation_rules(m, n, "z"),
            **commutation_rules(m, n, "zs"),
            **rules_cross_conj(m, n, "zs", "z"),
            **rules_coord_diff(m, n, diff_last=True),
            **rules_wedge(m, n, "dz"),
            **rules_wedge(m, n, "dzs"),
            **rules_conj_coord_diff(m, n),
            **rules_cross_conj(m, n, "dzs", "z"),
            **rules_cross_conj(m, n, "zs", "dz"),
            **rules_cross_conj(m, n, "dzs", "dz"),
        }
        return Presentation(name, m, n, ("z", "dz", "dzs", "zs"), rules)
    if name in ("FunU", "DU"):
        rules = {
            **commutation_rules(m, n, "z"),
            **commutation_rules(m, n, "zs"),
            **rules_cross_conj(m, n, "zs", "z"),
            **projection_rules(m, n),
        }
        return Presentation(name, m, n, ("z", "f0", "zs"), rules)
    raise ValueError(f"unknown preset {name!r}; known: {PRESET_NAMES}")


@dataclass(frozen=True)
class AlgebraPreset:
    """A named algebra with its rewriting presentation and capabilities."""

    name: str
    m: int
    n: int
    presentation: Presentation = field(compare=False, repr=False)
    has_star: bool = False
    diff_first: bool = False

    def normal_form(self, f: NCPoly, strategy: str = "leftmost") -> NCPoly:
        return self.presentation.normal_form(f, strategy)

    def multiply(self, f: NCPoly, g: NCPoly) -> NCPoly:
        return self.presentation.multiply(f, g)

    def basis_words(self, counts) -> list:
        return self.presentation.basis_words(counts)

    def basis_by_total_degree(self, total: int) -> list:
        return self.presentation.basis_by_total_degree(total)

    def label(self) -> str:
        return f"{self.name.lower()}:{self.m}x{self.n}"


_CANONICAL = {p.lower(): p for p in PRESET_NAMES}


def make_preset(name: str, m: int, n: int, diff_first: bool = False) -> AlgebraPreset:
    canonical = _CANONICAL.get(name.lower())
    if canonical is None:
        raise ValueError(f"unknown preset {name!r}; known: {PRESET_NAMES}")
    if diff_first and canonical != "Lambda":
        raise ValueError("the differential-first word order is a Lambda variant")
    pres = _build_presentation(canonical, m, n, diff_first)
    return AlgebraPreset(
        name=canonical,
        m=m,
        n=n,
        presentation=pres,
        has_star=canonical in _STAR_PRESETS,
        diff_first=diff_first,
    )


def parse_preset(text: str) -> AlgebraPreset:
    """Resolve a CLI-style preset string such as ``"pol:2x2"``."""
    try:
        name, size = text.split(":")
        ms, ns = size.lower().split("x")
        m, n = int(ms), int(ns)
    except ValueError as exc:
        raise ValueError(
            f"malformed preset string {text!r}; expected e.g. 'pol:2x2'"
        ) from exc
    return make_preset(name, m, n)


def star(f: NCPoly, preset: AlgebraPreset) -> NCPoly:
    """The antilinear anti-automorphism, reduced to normal form."""
    if not preset.has_star:
        raise ValueError(f"preset {preset.name} does not support the involution")
    acc: dict = {}
    for w, c in f.terms.items():
        w2 = tuple(sym(_STAR_KIND[g.kind], g.row, g.col) for g in reversed(w))
        cc = c.conjugate()
        prev = acc.get(w2)
        acc[w2] = cc if prev is None else prev + cc
    return preset.presentation.normal_form(NCPoly(acc))


def differential(f: NCPoly) -> NCPoly:
    """Graded Leibniz extension of coordinate -> differential.

    The result is the raw expansion (not reduced): each coordinate symbol is
    replaced in place by its differential, with the sign (-1)^(number of
    differential symbols to its left).  Differentials themselves map to zero.
    """
    acc: dict = {}
    for w, c in f.terms.items():
        parity = ONE
        for i, g in enumerate(w):
            kd = _DIFF_KIND.get(g.kind)
            if kd is None:
                if g.kind in ("dz", "dzs"):
                    parity = -parity
                continue
            w2 = w[:i] + (sym(kd, g.row, g.col),) + w[i + 1 :]
            cc = parity * c
            prev = acc.get(w2)
            total = cc if prev is None else prev + cc
            if total:
                acc[w2] = total
            elif prev is not None:
                del acc[w2]
    return NCPoly(acc)


def in_projection_slice(f: NCPoly, preset: AlgebraPreset) -> bool:
    """Whether every word of a FunU normal form passes through the projection."""
    if preset.name not in ("FunU", "DU"):
        raise ValueError("the projection slice lives inside FunU/DU")
    f0 = sym("f0")
    return all(f0 in w for w in f.terms)
