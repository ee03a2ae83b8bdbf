"""Free noncommutative words and oriented rewriting.

Generators carry a kind tag and a (row, column) index pair:

    z[a,b]    coordinate generators
    zs[a,b]   their conjugates
    dz[a,b]   holomorphic differentials
    dzs[a,b]  antiholomorphic differentials
    f0        the distinguished rank-one projector generator
    t[i,j]    entries of the ambient quantum N x N matrix (free letters;
              identities among them are certified representation-side)

A word is a tuple of interned symbols; a polynomial is a {word: Scalar} map.
A Presentation bundles an alphabet, a set of oriented rules (non-normal word
on the left, polynomial on the right) and a total order on symbols.  Rules
are validated at construction time: every replacement word must be strictly
smaller than its pattern in the degree-lexicographic word order, which makes
the rewriting terminate no matter how rules are interleaved.  Confluence is
not assumed; it is checked empirically by the test suite (two independent
scan strategies must agree on normal forms).
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Mapping

from .field import ONE, Scalar, ZERO

__all__ = [
    "GeneratorSymbol",
    "sym",
    "parse_symbol",
    "word_from_tokens",
    "word_tokens",
    "NCPoly",
    "Presentation",
    "KIND_RANK",
    "deglex_key",
]


KINDS = ("z", "dz", "f0", "dzs", "zs", "t")
KIND_RANK = {k: i for i, k in enumerate(KINDS)}

# how repeated symbols of each kind may appear in a normal word
_MULTIPLICITY = {"z": "weak", "zs": "weak", "dz": "strict", "dzs": "strict", "f0": "single"}

_H0_DEGREE = {"z": 1, "dz": 1, "f0": 0, "dzs": -1, "zs": -1, "t": 0}


class GeneratorSymbol:
    """One interned generator; equality and hashing are by identity."""

    __slots__ = ("kind", "row", "col", "_hash")

    _pool: dict = {}

    def __new__(cls, kind: str, row: int = 0, col: int = 0):
        key = (kind, row, col)
        cached = cls._pool.get(key)
        if cached is not None:
            return cached
        if kind not in KIND_RANK:
            raise ValueError(f"unknown generator kind {kind!r}")
        if kind == "f0":
            if row or col:
                raise ValueError("f0 carries no indices")
        elif row < 1 or col < 1:
            raise ValueError(f"indices must be positive, got {key}")
        obj = object.__new__(cls)
        object.__setattr__(obj, "kind", kind)
        object.__setattr__(obj, "row", row)
        object.__setattr__(obj, "col", col)
        object.__setattr__(obj, "_hash", hash(key))
        cls._pool[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GeneratorSymbol is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other

    def token(self) -> str:
        if self.kind == "f0":
            return "f0"
        return f"{self.kind}[{self.row},{self.col}]"

    @property
    def h0_degree(self) -> int:
        return _H0_DEGREE[self.kind]

    def __repr__(self):
        return self.token()


def sym(kind: str, row: int = 0, col: int = 0) -> GeneratorSymbol:
    return GeneratorSymbol(kind, row, col)


def parse_symbol(token: str) -> GeneratorSymbol:
    token = token.strip()
    if token == "f0":
        return sym("f0")
    if "[" not in token or not token.endswith("]"):
        raise ValueError(f"bad generator token {token!r}")
    kind, rest = token.split("[", 1)
    parts = rest[:-1].split(",")
    if len(parts) != 2:
        raise ValueError(f"bad generator token {token!r}")
    return sym(kind.strip(), int(parts[0]), int(parts[1]))


def word_from_tokens(tokens: Iterable[str]) -> tuple:
    return tuple(parse_symbol(t) for t in tokens)


def word_tokens(word: tuple) -> list:
    return [g.token() for g in word]


def deglex_key(word: tuple, rank: Mapping[str, int] = KIND_RANK):
    """Sort key realizing the termination order: length first, then symbolwise."""
    return (len(word), tuple((rank[g.kind], g.row, g.col) for g in word))


# ---------------------------------------------------------------------------
# polynomials


class NCPoly:
    """Finite Scalar-combination of words in the free algebra."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None, _clean: bool = False):
        if terms is None:
            terms = {}
        if not _clean:
            terms = {w: c for w, c in terms.items() if c}
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("NCPoly is immutable")

    # constructors

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls({}, _clean=True)

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({(): ONE}, _clean=True)

    @classmethod
    def from_word(cls, word, coeff=ONE) -> "NCPoly":
        if isinstance(word, GeneratorSymbol):
            word = (word,)
        coeff = coeff if isinstance(coeff, Scalar) else ONE * coeff
        if not coeff:
            return cls.zero()
        return cls({tuple(word): coeff}, _clean=True)

    # structure

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, word) -> Scalar:
        return self.terms.get(tuple(word), ZERO)

    def items(self):
        return self.terms.items()

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if v:
                    out[w] = v
                else:
                    del out[w]
        return NCPoly(out, _clean=True)

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        if isinstance(c, int):
            c = ONE * c
        if not c:
            return NCPoly.zero()
        return NCPoly({w: v * c for w, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = out.get(w)
                p = c1 * c2
                if v is None:
                    if p:
                        out[w] = p
                else:
                    v = v + p
                    if v:
                        out[w] = v
                    else:
                        del out[w]
        return NCPoly(out, _clean=True)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def map_coeffs(self, fn) -> "NCPoly":
        return NCPoly({w: fn(c) for w, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # text / json

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=deglex_key):
            c = self.terms[w]
            wtxt = " ".join(word_tokens(w)) if w else "1"
            ctxt = c.pretty()
            if ctxt == "1" and w:
                bits.append(wtxt)
            elif w:
                bits.append(f"({ctxt})*{wtxt}")
            else:
                bits.append(f"({ctxt})")
        return " + ".join(bits)

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"word": word_tokens(w), "coeff": self.terms[w].to_string()}
                for w in sorted(self.terms, key=deglex_key)
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NCPoly":
        out: dict = {}
        for item in data["terms"]:
            w = word_from_tokens(item["word"])
            c = Scalar.from_string(item["coeff"])
            if w in out:
                c = out[w] + c
            if c:
                out[w] = c
            else:
                out.pop(w, None)
        return cls(out, _clean=True)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "NCPoly":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# presentations


class Presentation:
    """An alphabet with oriented rewriting rules and a termination order.

    * ``rules`` maps a pattern word (always non-normal) to its replacement
      polynomial.  Patterns here all have length two, but the engine accepts
      any positive pattern length.
    * ``kind_rank`` orders the kinds; together with (row, col) it induces the
      symbol order used both for the termination check and for enumerating
      the PBW-style basis of normal words.
    """

    def __init__(
        self,
        name: str,
        m: int,
        n: int,
        kinds: tuple,
        rules: Mapping[tuple, NCPoly],
        kind_rank: Mapping[str, int] | None = None,
    ):
        if m < 1 or n < 1:
            raise ValueError("m and n must be positive")
        self.name = name
        self.m = m
        self.n = n
        self.kinds = tuple(kinds)
        self.kind_rank = dict(kind_rank) if kind_rank is not None else dict(KIND_RANK)
        self.rules = dict(rules)
        self._plens = tuple(sorted({len(p) for p in self.rules}, reverse=True))
        self._memo = {"leftmost": {}, "rightmost": {}}
        self._weights: dict = {}
        bad = self.termination_violations()
        if bad:
            pat, w = bad[0]
            raise ValueError(
                f"rule for {word_tokens(pat)} does not decrease the word order "
                f"(offending replacement word {word_tokens(w)})"
            )

    # -- alphabet

    def symbols(self, kind: str) -> list:
        if kind == "f0":
            return [sym("f0")]
        if kind in ("z", "zs", "dz", "dzs"):
            return [
                sym(kind, a, al)
                for a in range(1, self.n + 1)
                for al in range(1, self.m + 1)
            ]
        raise ValueError(f"unknown kind {kind!r}")

    def alphabet(self) -> list:
        out = []
        for kind in sorted(self.kinds, key=self.kind_rank.__getitem__):
            out.extend(self.symbols(kind))
        return out

    def symbol_key(self, g: GeneratorSymbol):
        return (self.kind_rank[g.kind], g.row, g.col)

    # -- termination

    def termination_violations(self) -> list:
        """Rules whose replacement fails to decrease deglex; empty when sound."""
        bad = []
        rank = self.kind_rank
        for pat, repl in self.rules.items():
            pkey = deglex_key(pat, rank)
            for w in repl.terms:
                if deglex_key(w, rank) >= pkey:
                    bad.append((pat, w))
        return bad

    # -- rewriting

    def _find_redex(self, w: tuple, strategy: str):
        rules = self.rules
        L = len(w)
        if strategy == "leftmost":
            positions = range(L)
        elif strategy == "rightmost":
            positions = range(L - 1, -1, -1)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        for i in positions:
            for pl in self._plens:
                if i + pl <= L:
                    repl = rules.get(w[i : i + pl])
                    if repl is not None:
                        return i, pl, repl
        return None

    def reduce_word(self, word: tuple, strategy: str = "leftmost") -> NCPoly:
        memo = self._memo[strategy]
        got = memo.get(word)
        if got is not None:
            return got
        stack = [word]
        while stack:
            w = stack[-1]
            if w in memo:
                stack.pop()
                continue
            hit = self._find_redex(w, strategy)
            if hit is None:
                memo[w] = NCPoly({w: ONE}, _clean=True)
                stack.pop()
                continue
            i, pl, repl = hit
            pre, suf = w[:i], w[i + pl :]
            missing = [
                nw
                for rw in repl.terms
                if (nw := pre + rw + suf) not in memo
            ]
            if missing:
                stack.extend(missing)
                continue
            acc: dict = {}
            for rw, c in repl.terms.items():
                for w2, c2 in memo[pre + rw + suf].terms.items():
                    v = acc.get(w2)
                    p = c * c2
                    if v is None:
                        acc[w2] = p
                    else:
                        v = v + p
                        if v:
                            acc[w2] = v
                        else:
                            del acc[w2]
            memo[w] = NCPoly(acc, _clean=True)
            stack.pop()
        return memo[word]

    def normal_form(self, poly: NCPoly, strategy: str = "leftmost") -> NCPoly:
        out = NCPoly.zero()
        for w, c in poly.terms.items():
            out = out + self.reduce_word(w, strategy).scale(c)
        return out

    def multiply(self, f: NCPoly, g: NCPoly, strategy: str = "leftmost") -> NCPoly:
        return self.normal_form(f * g, strategy)

    def is_normal(self, word: tuple) -> bool:
        return self._find_redex(word, "leftmost") is None

    # -- basis enumeration

    def basis_words(self, counts: Mapping[str, int]) -> list:
        """All normal words with exactly counts[kind] symbols of each kind."""
        for kind in counts:
            if kind not in self.kinds:
                raise ValueError(f"kind {kind!r} not in presentation {self.name!r}")
        blocks = []
        for kind in sorted(self.kinds, key=self.kind_rank.__getitem__):
            c = counts.get(kind, 0)
            if c == 0:
                blocks.append([()])
                continue
            syms = self.symbols(kind)
            mode = _MULTIPLICITY[kind]
            if mode == "weak":
                blocks.append(
                    [tuple(t) for t in itertools.combinations_with_replacement(syms, c)]
                )
            elif mode == "strict":
                blocks.append([tuple(t) for t in itertools.combinations(syms, c)])
            else:  # f0
                if c > 1:
                    return []
                blocks.append([(sym("f0"),)])
        out = []
        for parts in itertools.product(*blocks):
            w = tuple(itertools.chain.from_iterable(parts))
            out.append(w)
        return out

    def basis_by_total_degree(self, total: int) -> list:
        """All normal words with ``total`` symbols across the kinds."""
        kinds = sorted(self.kinds, key=self.kind_rank.__getitem__)
        out = []
        for split in _compositions(total, len(kinds)):
            counts = dict(zip(kinds, split))
            out.extend(self.basis_words(counts))
        return out

    # -- gradings

    def weight(self, g: GeneratorSymbol) -> tuple:
        """Weight of a generator for the rank N-1 torus, N = m + n."""
        cached = self._weights.get(g)
        if cached is not None:
            return cached
        m, n = self.m, self.n
        N = m + n
        mu = [0] * (N - 1)
        if g.kind != "f0":
            a, al = g.row, g.col
            for j in range(1, n):
                mu[j - 1] = (1 if a == j else 0) - (1 if a == j + 1 else 0)
            mu[n - 1] = (1 if a == n else 0) + (1 if al == m else 0)
            for i in range(1, m):
                j = n + i
                mu[j - 1] = (1 if al == m - i else 0) - (1 if al == m - i + 1 else 0)
            if g.kind in ("zs", "dzs"):
                mu = [-x for x in mu]
        out = tuple(mu)
        self._weights[g] = out
        return out

    def word_weight(self, word: tuple) -> tuple:
        N = self.m + self.n
        mu = [0] * (N - 1)
        for g in word:
            for j, x in enumerate(self.weight(g)):
                mu[j] += x
        return tuple(mu)

    def h0_degree(self, word: tuple) -> int:
        return sum(g.h0_degree for g in word)

    def kind_counts(self, word: tuple) -> dict:
        out = {k: 0 for k in self.kinds}
        for g in word:
            out[g.kind] += 1
        return out

    def __repr__(self):
        return (
            f"Presentation({self.name!r}, m={self.m}, n={self.n}, "
            f"|rules|={len(self.rules)})"
        )


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest
