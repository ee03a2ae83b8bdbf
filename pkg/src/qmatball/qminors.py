"""Quantum minors of the ambient N x N matrix algebra and its involutions.

The coordinate algebras of this package embed into a larger quantum matrix
algebra with generators t[i,j], 1 <= i,j <= N = m + n.  Elements here are
plain free polynomials in those letters (``TPoly`` is an alias of
:class:`~qmatball.words.NCPoly`): no rewriting system is attached, because
every identity the package relies on is certified through exact
finite-dimensional operator slices (module :mod:`qmatball.fockrep`).

Provided here:

* q-minors: signed permutation sums over a row set and a column set;
* the compact-form involution (each letter maps to a signed complementary
  minor) and the indefinite-signature involution obtained from it by the
  row/column sign characters;
* the distinguished corner minor, the grouplike volume element built from
  it, and the column sets realizing coordinate generators as minor
  quotients;
* the integer grading of the letters induced by the (m, n) block split.
"""

from __future__ import annotations

import itertools

from .field import ONE, Scalar, q_pow
from .words import NCPoly, sym

__all__ = [
    "TPoly",
    "t_gen",
    "inversions",
    "qminor",
    "qdet",
    "row_sign",
    "col_sign",
    "row_signs",
    "col_signs",
    "star_compact",
    "star_indefinite",
    "star_compact_poly",
    "star_indefinite_poly",
    "corner_minor_label",
    "opposite_corner_label",
    "volume_element",
    "coordinate_column_set",
    "coordinate_numerator_label",
    "minor_label",
    "t_degree",
    "word_t_degree",
]


TPoly = NCPoly


def t_gen(i: int, j: int) -> NCPoly:
    """The single letter t[i,j] as a polynomial."""
    return NCPoly.from_word((sym("t", i, j),))


def inversions(s) -> int:
    """Number of inverted pairs of a permutation given in one-line form."""
    s = tuple(s)
    return sum(
        1
        for a, b in itertools.combinations(range(len(s)), 2)
        if s[a] > s[b]
    )


def qminor(rows, cols) -> NCPoly:
    """The k x k quantum minor over ascending index sets of equal size.

    Sum over permutations s of the columns, with weight (-q)^inversions(s),
    of the row-ordered products t[r1, c_s(1)] ... t[rk, c_s(k)].
    """
    rows = tuple(sorted(rows))
    cols = tuple(sorted(cols))
    if len(rows) != len(cols):
        raise ValueError("row and column sets must have equal size")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("index sets must not repeat entries")
    k = len(rows)
    terms: dict = {}
    for s in itertools.permutations(range(k)):
        ell = inversions(s)
        coeff = q_pow(ell) if ell % 2 == 0 else -q_pow(ell)
        word = tuple(sym("t", rows[r], cols[s[r]]) for r in range(k))
        terms[word] = coeff
    return NCPoly(terms, _clean=True)


def qdet(N: int) -> NCPoly:
    """The full N x N quantum determinant."""
    rng = range(1, N + 1)
    return qminor(rng, rng)


# ---------------------------------------------------------------------------
# sign characters attached to the (m, n) block split


def row_sign(k: int, m: int) -> int:
    """-1 on the first m indices, +1 on the rest."""
    return -1 if k <= m else 1


def col_sign(k: int, n: int) -> int:
    """+1 on the first n indices, -1 on the rest."""
    return 1 if k <= n else -1


def row_signs(m: int, n: int) -> tuple:
    return tuple(row_sign(k, m) for k in range(1, m + n + 1))


def col_signs(m: int, n: int) -> tuple:
    return tuple(col_sign(k, n) for k in range(1, m + n + 1))


# ---------------------------------------------------------------------------
# involutions


def star_compact(i: int, j: int, N: int) -> NCPoly:
    """Image of t[i,j] under the compact-form involution.

    The letter goes to (-q)^(j-i) times the complementary quantum minor
    (rows without i, columns without j).  Extended to polynomials by
    :func:`star_compact_poly`; the involutive property holds only modulo
    the ambient relations, so it is certified representation-side.
    """
    rows = tuple(r for r in range(1, N + 1) if r != i)
    cols = tuple(c for c in range(1, N + 1) if c != j)
    e = j - i
    coeff = q_pow(e) if e % 2 == 0 else -q_pow(e)
    return qminor(rows, cols).scale(coeff)


def star_indefinite(i: int, j: int, m: int, n: int) -> NCPoly:
    """Image of t[i,j] under the indefinite-signature involution.

    Equals the compact image twisted by the row and column sign characters
    of the (m, n) block split.
    """
    sgn = row_sign(i, m) * col_sign(j, n)
    img = star_compact(i, j, m + n)
    return img if sgn == 1 else -img


def _star_poly(f: NCPoly, letter_image) -> NCPoly:
    out = NCPoly.zero()
    for word, c in f.terms.items():
        piece = NCPoly.from_word((), c.conjugate())
        for g in reversed(word):
            if g.kind != "t":
                raise ValueError(f"expected a t-letter, got {g.token()}")
            piece = piece * letter_image(g.row, g.col)
        out = out + piece
    return out


def star_compact_poly(f: NCPoly, N: int) -> NCPoly:
    """Conjugate-linear antimultiplicative extension of the compact involution."""
    return _star_poly(f, lambda i, j: star_compact(i, j, N))


def star_indefinite_poly(f: NCPoly, m: int, n: int) -> NCPoly:
    """Conjugate-linear antimultiplicative extension of the signed involution."""
    return _star_poly(f, lambda i, j: star_indefinite(i, j, m, n))


# ---------------------------------------------------------------------------
# distinguished elements


def corner_minor_label(m: int, n: int) -> tuple:
    """Label of the m x m upper-right corner minor: rows 1..m, columns n+1..N."""
    N = m + n
    return (tuple(range(1, m + 1)), tuple(range(n + 1, N + 1)))


def opposite_corner_label(m: int, n: int) -> tuple:
    """Label of the n x n lower-left corner minor: rows m+1..N, columns 1..n."""
    N = m + n
    return (tuple(range(m + 1, N + 1)), tuple(range(1, n + 1)))


def volume_element(m: int, n: int) -> NCPoly:
    """(-q)^(mn) times (upper-right corner minor)(lower-left corner minor).

    A grouplike product whose operator image is diagonal with strictly
    positive spectrum; it plays the role of the squared modulus of the
    corner minor.
    """
    up = qminor(*corner_minor_label(m, n))
    lo = qminor(*opposite_corner_label(m, n))
    e = m * n
    coeff = q_pow(e) if e % 2 == 0 else -q_pow(e)
    return (up * lo).scale(coeff)


def coordinate_column_set(a: int, al: int, m: int, n: int) -> tuple:
    """Column set whose corner-row minor realizes the coordinate z[a,al].

    Start from columns n+1..N, remove column N+1-al, insert column a.
    """
    N = m + n
    if not (1 <= a <= n and 1 <= al <= m):
        raise ValueError(f"coordinate indices out of range: ({a},{al})")
    cols = set(range(n + 1, N + 1))
    cols.discard(N + 1 - al)
    cols.add(a)
    return tuple(sorted(cols))


def coordinate_numerator_label(a: int, al: int, m: int, n: int) -> tuple:
    """Minor label (rows 1..m, the coordinate column set) for z[a,al]."""
    return (tuple(range(1, m + 1)), coordinate_column_set(a, al, m, n))


def minor_label(label: tuple) -> str:
    """Text form of a minor label, e.g. 't^[1,2|3,4]'."""
    rows, cols = label
    rtxt = ",".join(str(r) for r in rows)
    ctxt = ",".join(str(c) for c in cols)
    return f"t^[{rtxt}|{ctxt}]"


# ---------------------------------------------------------------------------
# grading


def t_degree(i: int, j: int, m: int, n: int) -> int:
    """+1 on the upper-left (m, n) block, -1 on the lower-right, else 0."""
    if i <= m and j <= n:
        return 1
    if i > m and j > n:
        return -1
    return 0


def word_t_degree(word: tuple, m: int, n: int) -> int:
    return sum(t_degree(g.row, g.col, m, n) for g in word)
