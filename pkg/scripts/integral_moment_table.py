"""Moment table of the invariant integral on the rank-one matrix ball.

Computes the radial moments nu(z^d f0 (z*)^d) for d = 0..D exactly, prints
them next to the product closed form q^(-2d) * prod_{j<=d} (1 - q^(2j)), and
evaluates both at the requested rational sample points.  A mismatch anywhere
exits nonzero.

Usage:
    python3 scripts/integral_moment_table.py --max-power 6 --q0 1/4 81/100
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

sys.path.insert(0, "src")

from qmatball.algebras import make_preset
from qmatball.field import ONE, q_pow
from qmatball.integral import integral_nu
from qmatball.words import NCPoly, sym


@dataclass
class MomentConfig:
    max_power: int = 6
    q0: list = field(default_factory=lambda: ["1/4", "81/100"])


def parse_config(argv=None) -> MomentConfig:
    cfg = MomentConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-power", type=int, default=cfg.max_power)
    ap.add_argument("--q0", nargs="+", default=cfg.q0)
    ns = ap.parse_args(argv)
    return MomentConfig(ns.max_power, ns.q0)


def rational_root(q0: Fraction) -> Fraction:
    a, b = isqrt(q0.numerator), isqrt(q0.denominator)
    if a * a != q0.numerator or b * b != q0.denominator:
        raise SystemExit(f"q0 must be the square of a rational, got {q0}")
    return Fraction(a, b)


def main(argv=None) -> int:
    cfg = parse_config(argv)
    roots = [(Fraction(text), rational_root(Fraction(text))) for text in cfg.q0]
    funu = make_preset("FunU", 1, 1)
    z = sym("z", 1, 1)
    zs = sym("zs", 1, 1)
    f0 = sym("f0")
    bad = 0
    header = "d  moment (exact)" + "".join(f"   at q0={q0}" for q0, _ in roots)
    print(header)
    for d in range(cfg.max_power + 1):
        moment = integral_nu(NCPoly.from_word((z,) * d + (f0,) + (zs,) * d), funu)
        closed = q_pow(-2 * d)
        for j in range(1, d + 1):
            closed = closed * (ONE - q_pow(2 * j))
        marker = "" if moment == closed else "  MISMATCH vs product formula"
        bad += moment != closed
        samples = "".join(f"   {moment.eval_at(s0).re}" for _, s0 in roots)
        print(f"{d}  {moment.pretty()}{samples}{marker}")
    print(
        "moments match the product closed form"
        if bad == 0
        else f"{bad} mismatches against the closed form"
    )
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
