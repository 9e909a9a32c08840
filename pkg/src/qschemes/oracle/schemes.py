"""Explicit vertex sets and relations of the four schemes at desk-scale sizes."""

from __future__ import annotations

import json
import os
from itertools import combinations, product
from pathlib import Path

from qschemes.errors import CapExceeded, ParameterError, UnsupportedField
from qschemes.oracle.fields import FiniteField, get_conjugate_field, get_field
from qschemes.spectra import Family, SchemeParams

DEFAULT_CAP = 100_000
CAP_ENV = "QSCHEMES_ORACLE_CAP"
ORACLE_FIELDS = (2, 3, 4, 5)
CACHE_FORMAT = "qschemes-scheme/1"


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(CAP_ENV, raw, "a positive integer") from None


class SchemeInstance:
    """Vertices plus a symmetric relation ``(a, b) -> class in 0..d``.

    Vertices are referred to by their index in :attr:`vertices`.
    """

    def __init__(self, params: SchemeParams, vertices: list):
        self.params = params
        self.vertices = vertices
        self._table: list[bytearray] | None = None

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_classes(self) -> int:
        return self.params.d + 1

    def relation(self, a: int, b: int) -> int:
        raise NotImplementedError

    def relation_row(self, a: int) -> list[int]:
        if self._table is not None:
            return list(self._table[a])
        return [self.relation(a, b) for b in range(self.num_vertices)]

    def relation_table(self) -> list[bytearray]:
        if self._table is None:
            self._table = [bytearray(self.relation_row(a)) for a in range(self.num_vertices)]
        return self._table

    def neighbors(self, a: int, j: int) -> list[int]:
        return [b for b, r in enumerate(self.relation_row(a)) if r == j]

    def class_sizes(self, a: int = 0) -> list[int]:
        counts = [0] * self.num_classes
        for r in self.relation_row(a):
            counts[r] += 1
        return counts


class TranslationScheme(SchemeInstance):
    """Vertices form an additive group; ``relation(a, b) = weight(a - b)``."""

    def __init__(self, params, vertices, add, sub, weight):
        super().__init__(params, vertices)
        self._add = add
        self._sub = sub
        self.index = {v: k for k, v in enumerate(vertices)}
        self.weight = [weight(v) for v in vertices]
        self.shells: list[list[tuple]] = [[] for _ in range(params.d + 1)]
        for v, w in zip(vertices, self.weight):
            self.shells[w].append(v)

    def _vsub(self, u: tuple, v: tuple) -> tuple:
        sub = self._sub
        return tuple(sub[x][y] for x, y in zip(u, v))

    def relation(self, a: int, b: int) -> int:
        return self.weight[self.index[self._vsub(self.vertices[a], self.vertices[b])]]

    def relation_row(self, a: int) -> list[int]:
        if self._table is not None:
            return list(self._table[a])
        u, index, weight, sub = self.vertices[a], self.index, self.weight, self._sub
        return [weight[index[tuple(sub[x][y] for x, y in zip(u, v))]] for v in self.vertices]

    def neighbors(self, a: int, j: int) -> list[int]:
        u, add, index = self.vertices[a], self._add, self.index
        return [index[tuple(add[x][y] for x, y in zip(u, s))] for s in self.shells[j]]

    def class_sizes(self, a: int = 0) -> list[int]:
        return [len(s) for s in self.shells]


class GrassmannScheme(SchemeInstance):
    """d-subspaces of F_q^n as RREF basis matrices; class j = d - dim(U ∩ W)."""

    def __init__(self, params: SchemeParams, field: FiniteField, vertices: list):
        super().__init__(params, vertices)
        self.field = field

    def relation(self, a: int, b: int) -> int:
        u, w = self.vertices[a], self.vertices[b]
        return self.field.rank([*u, *w]) - self.params.d


class TabulatedScheme(SchemeInstance):
    """A scheme restored from a stored relation table."""

    def __init__(self, params: SchemeParams, vertices: list, table: list[bytearray]):
        super().__init__(params, vertices)
        self._table = table

    def relation(self, a: int, b: int) -> int:
        return self._table[a][b]


def rref_subspaces(n: int, d: int, field: FiniteField) -> list[tuple[tuple[int, ...], ...]]:
    """Every d-subspace of F^n exactly once, as its reduced row echelon basis."""
    out = []
    for pivots in combinations(range(n), d):
        free = [(r, c) for r in range(d) for c in range(pivots[r] + 1, n) if c not in pivots]
        for fill in product(field.elements, repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), x in zip(free, fill):
                rows[r][c] = x
            out.append(tuple(tuple(r) for r in rows))
    return out


def _oracle_field(q: int) -> FiniteField:
    if q not in ORACLE_FIELDS:
        raise UnsupportedField(f"oracle fields are limited to q in {ORACLE_FIELDS}, got q={q}")
    return get_field(q)


def _matrix_rank(field: FiniteField, rows: int, cols: int):
    def weight(v: tuple) -> int:
        return field.rank([list(v[r * cols:(r + 1) * cols]) for r in range(rows)])

    return weight


def hermitian_matrices(d: int, q: int) -> list[tuple[int, ...]]:
    """All d x d Hermitian matrices over F_{q^2}, flattened row-major."""
    cf = get_conjugate_field(q)
    upper = [(r, c) for r in range(d) for c in range(r + 1, d)]
    out = []
    for diag in product(cf.fixed, repeat=d):
        for off in product(cf.field.elements, repeat=len(upper)):
            m = [0] * (d * d)
            for r, x in enumerate(diag):
                m[r * d + r] = x
            for (r, c), x in zip(upper, off):
                m[r * d + c] = x
                m[c * d + r] = cf.conj[x]
            out.append(tuple(m))
    return out


def build_scheme(params: SchemeParams, cap: int | None = None) -> SchemeInstance:
    """Construct the scheme explicitly.

    Raises CapExceeded above ``cap`` vertices (default from the
    ``QSCHEMES_ORACLE_CAP`` environment variable, else 100 000) and
    UnsupportedField for field sizes outside the oracle set.
    """
    cap = default_cap() if cap is None else cap
    v = params.num_vertices
    if v > cap:
        raise CapExceeded(f"{params.label()} has {v} vertices, cap is {cap}")
    d, q = params.d, params.q
    if params.family is Family.HAMMING:
        zq = range(q)
        add = [[(x + y) % q for y in zq] for x in zq]
        sub = [[(x - y) % q for y in zq] for x in zq]
        words = list(product(zq, repeat=d))
        return TranslationScheme(params, words, add, sub, lambda w: sum(1 for x in w if x))
    if params.family is Family.GRASSMANN:
        field = _oracle_field(q)
        return GrassmannScheme(params, field, rref_subspaces(params.n, d, field))
    if params.family is Family.BILINEAR:
        field = _oracle_field(q)
        e = params.e
        mats = list(product(field.elements, repeat=d * e))
        return TranslationScheme(params, mats, field.add, field.sub, _matrix_rank(field, d, e))
    _oracle_field(q)
    big = get_conjugate_field(q).field
    mats = hermitian_matrices(d, q)
    return TranslationScheme(params, mats, big.add, big.sub, _matrix_rank(big, d, d))


def save_scheme(scheme: SchemeInstance, path: str | Path) -> None:
    """Write vertices and relation table as JSON (header ``qschemes-scheme/1``).

    Each relation row is a string of class digits in base 36.
    """
    table = scheme.relation_table()
    payload = {
        "format": CACHE_FORMAT,
        "params": scheme.params.as_dict(),
        "vertices": [_flatten(v) for v in scheme.vertices],
        "relation": ["".join(_DIGITS[x] for x in row) for row in table],
    }
    Path(path).write_text(json.dumps(payload, separators=(",", ":")), encoding="utf-8")


def load_scheme(path: str | Path) -> TabulatedScheme:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("format") != CACHE_FORMAT:
        raise ValueError(f"unknown scheme cache format {payload.get('format')!r}")
    raw = dict(payload["params"])
    params = SchemeParams(Family(raw.pop("family")), **raw)
    table = [bytearray(_DIGITS.index(c) for c in row) for row in payload["relation"]]
    vertices = [tuple(v) for v in payload["vertices"]]
    return TabulatedScheme(params, vertices, table)


_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def _flatten(v) -> list[int]:
    if v and isinstance(v[0], tuple):
        return [x for row in v for x in row]
    return list(v)
