"""Sweepable suites for the term-level bounds (``qschemes lemma-check``).

Each record covers one parameter set and aggregates every ``(i, j)`` (or
``k``) under it: FAIL carries the first failing verdict, EXCLUDED means no
index satisfied the hypotheses.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Callable, Iterable, Iterator

from qschemes import terms
from qschemes.errors import NotAlternating, NotIncreasing
from qschemes.qcalc import check_gauss_bounds, gauss_signed, signed_base_sign
from qschemes.spectra import SchemeParams
from qschemes.sweep import CheckSpec, Grid, Record, register
from qschemes.verdict import Status, Verdict

QS = (2, 3, 4, 5)
SUITES: list[str] = []


def _aggregate(key: dict[str, int], verdicts: Iterable[Verdict]) -> Record:
    counts: Counter[str] = Counter()
    clauses: Counter[str] = Counter()
    for v in verdicts:
        counts[v.status.value] += 1
        if v.status is Status.FAIL:
            return Record(key, Status.FAIL, v.clause, v.as_dict()["witness"] | {"check": v.check})
        if v.status is Status.PASS and v.clause:
            clauses[v.clause] += 1
    status = Status.PASS if counts["PASS"] else Status.EXCLUDED
    witness = {"counts": dict(sorted(counts.items())), "clauses": dict(sorted(clauses.items()))}
    return Record(key, status, f"{counts['PASS']} checked, {counts['EXCLUDED']} excluded", witness)


def _all_ij(params: SchemeParams, fn: Callable[[SchemeParams, int, int], Verdict]) -> Iterator[Verdict]:
    for i in range(params.d + 1):
        for j in range(params.d + 1):
            yield fn(params, i, j)


def _grassmann_keys(grid: Grid) -> Iterator[dict[str, int]]:
    for q in grid.q:
        for d in grid.d:
            for n in grid.n_values(d):
                yield {"q": q, "n": n, "d": d}


def _bilinear_keys(grid: Grid) -> Iterator[dict[str, int]]:
    for q in grid.q:
        for d in grid.d:
            for e in grid.e_values(d):
                yield {"q": q, "d": d, "e": e}


def _qd_keys(grid: Grid) -> Iterator[dict[str, int]]:
    for q in grid.q:
        for d in grid.d:
            yield {"q": q, "d": d}


def _qn_keys(grid: Grid) -> Iterator[dict[str, int]]:
    for q in grid.q:
        for n in grid.n if grid.n is not None else ():
            yield {"q": q, "n": n}


def _qm_keys(grid: Grid) -> Iterator[dict[str, int]]:
    for q in grid.q:
        for m in grid.m or ():
            yield {"q": q, "m": m}


def _g(key: dict[str, int]) -> SchemeParams:
    return SchemeParams.grassmann(key["n"], key["d"], key["q"])


def _b(key: dict[str, int]) -> SchemeParams:
    return SchemeParams.bilinear(key["d"], key["e"], key["q"])


def _h(key: dict[str, int]) -> SchemeParams:
    return SchemeParams.hermitian(key["d"], key["q"])


def gauss_bounds(key: dict[str, int]) -> Record:
    q, n = key["q"], key["n"]
    verdicts = []
    for k in range(n + 1):
        bv = check_gauss_bounds(n, k, q)
        for c in bv.checks:
            if not c.applies:
                verdicts.append(Verdict(Status.EXCLUDED, "gauss-bounds", c.part))
            else:
                status = Status.PASS if c.holds else Status.FAIL
                verdicts.append(
                    Verdict(status, "gauss-bounds", f"({c.part}) {c.statement}", {"k": k, "lhs": c.lhs, "rhs": c.rhs})
                )
    return _aggregate(key, verdicts)


def signed_gauss(key: dict[str, int]) -> Record:
    """``|[m l]_(-q)|`` equals the product of absolute factor ratios and has
    sign ``(-1)^((m+1) l)``, for every ``0 <= l <= m``."""
    q, m = key["q"], key["m"]
    verdicts = []
    for l in range(m + 1):
        value = gauss_signed(m, l, -q)
        num = den = 1
        for i in range(1, l + 1):
            num *= abs((-q) ** (m - i + 1) - 1)
            den *= abs((-q) ** i - 1)
        ok = abs(value) * den == num and (value > 0) - (value < 0) == signed_base_sign(m, l)
        verdicts.append(Verdict(Status.PASS if ok else Status.FAIL, "signed-gauss", "", {"l": l, "value": value}))
    return _aggregate(key, verdicts)


def signed_base_estimate(key: dict[str, int]) -> Record:
    return _aggregate(key, [terms.check_signed_base_estimate(key["m"], key["q"])])


def hermitian_steps(key: dict[str, int]) -> Record:
    d, q = key["d"], key["q"]
    return _aggregate(key, (terms.check_hermitian_step(d, q, i, j) for i in range(d) for j in range(1, d + 1)))


def alternating_series(key: dict[str, int], samples: int = 1000) -> Record:
    """Random alternating sequences with strictly growing magnitudes: the sum
    has the sign of the last term and ``|a_n| - |a_{n-1}| <= |sum| <= |a_n|``."""
    rng = random.Random(key["seed"])
    verdicts = []
    for _ in range(samples):
        length = rng.randint(1, 12)
        top = 10 ** rng.randint(2, 30)
        mags = sorted({rng.randrange(1, top) for _ in range(length)})
        first = rng.choice((1, -1))
        seq = [first * (-1) ** t * m for t, m in enumerate(mags)]
        try:
            bounds = terms.alternating_bounds(seq)
        except (NotAlternating, NotIncreasing):
            verdicts.append(Verdict(Status.FAIL, "alternating", "premise rejected", {"sequence": seq}))
            continue
        ok = bounds.contains(sum(seq))
        verdicts.append(Verdict(Status.PASS if ok else Status.FAIL, "alternating", "", {"sequence": seq}))
    return _aggregate(key, verdicts)


def _seed_keys(grid: Grid) -> Iterator[dict[str, int]]:
    for s in grid.m or ():
        yield {"seed": s}


def _suite(name: str, claim: str, grid: Grid, keys, evaluate) -> None:
    SUITES.append(name)
    register(CheckSpec(name, claim, grid, keys, evaluate))


_suite(
    "gauss-bounds",
    "q^(k(n-k)) <= [n k]_q, (1+1/q) q^(k(n-k)) <= [n k]_q for 0<k<n, < 2 q^(k(n-k)) for q>=3, < q/(q-1) q^(k(n-k)) for k in {0,1,n-1,n}",
    Grid(q=QS, d=(1,), n=tuple(range(0, 31))),
    _qn_keys,
    gauss_bounds,
)
_suite(
    "signed-gauss",
    "negative-base Gaussian coefficients: magnitude and sign (-1)^((m+1) l)",
    Grid(q=(2, 3), d=(1,), m=tuple(range(0, 21))),
    _qm_keys,
    signed_gauss,
)
_suite(
    "signed-base-estimate",
    "(1 - q^-m) q^m <= |(-q)^m - 1| <= (1 + q^-m) q^m",
    Grid(q=(2, 3), d=(1,), m=tuple(range(1, 31))),
    _qm_keys,
    signed_base_estimate,
)
_suite(
    "grassmann-sandwich",
    "Grassmann terms alternate and grow; |T_max| - |T_max-1| <= |G_j(i)| <= |T_max| unless (n, q) = (2d, 2)",
    Grid(q=QS, d=tuple(range(1, 9)), n_offset=tuple(range(0, 7))),
    _grassmann_keys,
    lambda key: _aggregate(key, _all_ij(_g(key), terms.check_term_monotonicity)),
)
_suite(
    "grassmann-envelope",
    "q >= 3: 4/9 q^c < |G_j(i)| < 4 q^c; 5/32 <= |G_j(i)|/|T_(d-j)| <= 1 when n = 2d, i >= d-j",
    Grid(q=(3, 4, 5), d=tuple(range(1, 9)), n_offset=tuple(range(0, 7))),
    _grassmann_keys,
    lambda key: _aggregate(key, _all_ij(_g(key), terms.check_envelope_bounds)),
)
_suite(
    "grassmann-exponents",
    "q >= 3: q^g_h < |T_h| < 8 q^g_h and g_h - g_(h-1) = n-d-j-h+1",
    Grid(q=(3, 4, 5), d=tuple(range(2, 7)), n_offset=tuple(range(0, 5))),
    _grassmann_keys,
    lambda key: _aggregate(key, _all_ij(_g(key), terms.check_exponent_sandwich)),
)
_suite(
    "bilinear-sandwich",
    "bilinear terms alternate and grow; sandwich on |B_j(i)| unless q = 2 and d = e",
    Grid(q=QS, d=tuple(range(1, 13)), e_offset=tuple(range(0, 5))),
    _bilinear_keys,
    lambda key: _aggregate(key, _all_ij(_b(key), terms.check_term_monotonicity)),
)
_suite(
    "bilinear-envelope",
    "q >= 3: 1/4 q^s < |B_j(i)| < 2 q^s",
    Grid(q=(3, 4, 5), d=tuple(range(1, 13)), e_offset=tuple(range(0, 5))),
    _bilinear_keys,
    lambda key: _aggregate(key, _all_ij(_b(key), terms.check_envelope_bounds)),
)
_suite(
    "hermitian-terms",
    "d >= 6, j >= 2, 1 <= i <= d-3: terms of Q_j(i) grow in absolute value",
    Grid(q=(2, 3), d=tuple(range(2, 11))),
    _qd_keys,
    lambda key: _aggregate(key, _all_ij(_h(key), terms.check_term_monotonicity)),
)
_suite(
    "hermitian-envelope",
    "d >= 6, j >= 2, 1 <= i <= d-3: |Q_j(i)|/|T_hmax| within 43/78..113/78, 691/1296..1901/1296 or 31/216..401/216",
    Grid(q=(2, 3), d=tuple(range(2, 11))),
    _qd_keys,
    lambda key: _aggregate(key, _all_ij(_h(key), terms.check_envelope_bounds)),
)
_suite(
    "hermitian-steps",
    "d >= 6: |Q_j(i)| > |Q_j(i+1)| case by case, with the q = 2 exception and its substitute",
    Grid(q=(2, 3), d=tuple(range(2, 11))),
    _qd_keys,
    hermitian_steps,
)
_suite(
    "alternating",
    "alternating sums with growing terms: sign of the last term, |a_n| - |a_(n-1)| <= |sum| <= |a_n|",
    Grid(q=(2,), d=(1,), m=tuple(range(0, 10))),
    _seed_keys,
    alternating_series,
)
