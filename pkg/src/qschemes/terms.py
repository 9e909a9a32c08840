"""Term-level structure of the eigenvalue sums and exact checks of the
bounds built on it (alternating sandwich, exponent envelopes).

Every comparison is done in integers: fractional constants are cleared by
cross-multiplication and half-integer powers of q by squaring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from qschemes import spectra
from qschemes.errors import NotAlternating, NotIncreasing, ParameterError
from qschemes.spectra import Family, SchemeParams
from qschemes.verdict import Status, Verdict

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Term:
    h: int
    value: int
    exponent: Fraction | None


@dataclass(frozen=True)
class TermDecomposition:
    params: SchemeParams
    i: int
    j: int
    terms: tuple[Term, ...]
    h_min: int
    h_max: int

    @property
    def total(self) -> int:
        return sum(t.value for t in self.terms)

    @property
    def values(self) -> list[int]:
        return [t.value for t in self.terms]

    def term(self, h: int) -> int:
        for t in self.terms:
            if t.h == h:
                return t.value
        return 0


@dataclass(frozen=True)
class ExponentProfile:
    """``h -> -h^2/2 + linear*h + constant``: the log_q size of term h when
    every Gaussian coefficient ``[n k]`` is replaced by ``q^(k(n-k))``."""

    family: Family
    linear: Fraction
    constant: Fraction
    quadratic: Fraction = Fraction(-1, 2)

    def __call__(self, h: int) -> Fraction:
        return self.quadratic * h * h + self.linear * h + self.constant

    @property
    def vertex(self) -> Fraction:
        return -self.linear / (2 * self.quadratic)


def exponent_profile(params: SchemeParams, i: int, j: int) -> ExponentProfile:
    d = params.d
    if params.family is Family.GRASSMANN:
        n = params.n
        return ExponentProfile(
            Family.GRASSMANN,
            n - d - j + HALF,
            Fraction(j * (d - j) + i * (i - 1) // 2 + (n - d) * (j - i)),
        )
    if params.family is Family.BILINEAR:
        return ExponentProfile(Family.BILINEAR, params.e - i + HALF, j * (d - Fraction(j + 1, 2)))
    if params.family is Family.HERMITIAN:
        return ExponentProfile(Family.HERMITIAN, d - i + HALF, j * (d - Fraction(j + 1, 2)))
    raise ParameterError("family", params.family.value, "grassmann, bilinear or hermitian")


def term_range(params: SchemeParams, i: int, j: int) -> tuple[int, int]:
    d = params.d
    if params.family is Family.GRASSMANN:
        return spectra.grassmann_bounds(d, i, j)
    if params.family is Family.HAMMING:
        return max(0, j - (d - i)), min(i, j)
    return 0, min(j, d - i)


def term_value(params: SchemeParams, i: int, j: int, h: int) -> int:
    p = params
    if p.family is Family.GRASSMANN:
        return spectra.grassmann_term(p.n, p.d, p.q, j, i, h)
    if p.family is Family.BILINEAR:
        return spectra.bilinear_term(p.d, p.e, p.q, j, i, h)
    if p.family is Family.HERMITIAN:
        return spectra.hermitian_term(p.d, p.q, j, i, h)
    if h < 0 or h > j:
        return 0
    return (-1) ** h * (p.q - 1) ** (j - h) * comb(i, h) * comb(p.d - i, j - h)


def decompose(params: SchemeParams, i: int, j: int) -> TermDecomposition:
    """Nonzero terms of the eigenvalue sum for ``P_ij``, in increasing ``h``.

    Grassmann uses the truncated i-sum form; the other q-analog families
    their j-sums truncated at ``min(j, d - i)``. Hamming terms carry no
    exponent.
    """
    for name, v in (("i", i), ("j", j)):
        if not isinstance(v, int) or not 0 <= v <= params.d:
            raise ParameterError(name, v, f"integer 0 <= {name} <= d = {params.d}")
    lo, hi = term_range(params, i, j)
    profile = exponent_profile(params, i, j) if params.family is not Family.HAMMING else None
    terms = []
    for h in range(lo, hi + 1):
        value = term_value(params, i, j, h)
        if value:
            terms.append(Term(h, value, profile(h) if profile else None))
    return TermDecomposition(params, i, j, tuple(terms), lo, hi)


@dataclass(frozen=True)
class AlternatingBounds:
    sign: int
    lower: int
    upper: int

    def contains(self, total: int) -> bool:
        return (total > 0) - (total < 0) == self.sign and self.lower <= abs(total) <= self.upper


def alternating_bounds(terms: list[int]) -> AlternatingBounds:
    """Sign and magnitude sandwich of an alternating sum with growing terms.

    Zero terms are dropped first. Returns the sign of the last term and
    ``[|a_n| - |a_{n-1}|, |a_n|]``; a lone term gives ``[|a_0|, |a_0|]``.
    """
    seq = [t for t in terms if t]
    if not seq:
        raise ValueError("no nonzero terms")
    for a, b in zip(seq, seq[1:]):
        if (a > 0) == (b > 0):
            raise NotAlternating(f"consecutive terms {a}, {b} share a sign")
        if abs(b) <= abs(a):
            raise NotIncreasing(f"|{b}| <= |{a}|")
    last = seq[-1]
    prev = abs(seq[-2]) if len(seq) > 1 else 0
    return AlternatingBounds(1 if last > 0 else -1, abs(last) - prev, abs(last))


def compare_to_power(x: int, coef: Fraction, q: int, exponent: Fraction) -> int:
    """Sign of ``|x| - coef * q**exponent`` for ``coef >= 0`` and a half-integral exponent."""
    coef = Fraction(coef)
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        e = int(exponent)
        lhs = abs(x) * coef.denominator
        rhs = coef.numerator
        if e >= 0:
            rhs *= q**e
        else:
            lhs *= q**-e
    elif exponent.denominator == 2:
        a = exponent.numerator
        lhs = x * x * coef.denominator**2
        rhs = coef.numerator**2
        if a >= 0:
            rhs *= q**a
        else:
            lhs *= q**-a
    else:
        raise ValueError(f"exponent {exponent} is not half-integral")
    return (lhs > rhs) - (lhs < rhs)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def monotonicity_exclusion(params: SchemeParams, i: int, j: int) -> str | None:
    """Reason the increasing-terms claim does not cover ``(params, i, j)``, or None."""
    p = params
    if p.family is Family.GRASSMANN:
        if p.n == 2 * p.d and p.q == 2:
            return "(n, q) = (2d, 2)"
        return None
    if p.family is Family.BILINEAR:
        if p.q == 2 and p.d == p.e:
            return "q = 2 and d = e"
        return None
    if p.family is Family.HERMITIAN:
        if p.d < 6:
            return "needs d >= 6"
        if j < 2:
            return "needs j >= 2"
        if not 1 <= i <= p.d - 3:
            return "needs 1 <= i <= d-3"
        return None
    return "no term claim for the hamming family"


def check_term_monotonicity(params: SchemeParams, i: int, j: int) -> Verdict:
    """Consecutive nonzero terms grow strictly in absolute value.

    For Grassmann and bilinear families the terms must also alternate in
    sign, and the eigenvalue must sit in the alternating sandwich
    ``|T_max| - |T_max-1| <= |P_ij| <= |T_max|`` with the sign of ``T_max``.
    Hermitian terms do not alternate, so only growth is checked there.
    """
    check = "term-monotonicity"
    reason = monotonicity_exclusion(params, i, j)
    if reason:
        return Verdict(Status.EXCLUDED, check, reason)
    dec = decompose(params, i, j)
    values = dec.values
    total = dec.total
    witness = {"params": params.as_dict(), "i": i, "j": j, "terms": values, "eigenvalue": total}
    for a, b in zip(values, values[1:]):
        if abs(b) <= abs(a):
            return Verdict(Status.FAIL, check, "terms not increasing", witness)
    if params.family is Family.HERMITIAN:
        return Verdict(Status.PASS, check, "increasing", witness)
    try:
        bounds = alternating_bounds(values)
    except NotAlternating:
        return Verdict(Status.FAIL, check, "terms not alternating", witness)
    witness.update(lower=bounds.lower, upper=bounds.upper)
    if not bounds.contains(total):
        return Verdict(Status.FAIL, check, "sandwich violated", witness)
    return Verdict(Status.PASS, check, "alternating sandwich", witness)


def _hmax_term(params: SchemeParams, i: int, j: int) -> tuple[int, int]:
    _, hi = term_range(params, i, j)
    return hi, term_value(params, i, j, hi)


def envelope_exclusion(params: SchemeParams, i: int, j: int) -> str | None:
    p = params
    if p.family is Family.GRASSMANN:
        if p.q < 3:
            return "needs q >= 3"
        if j < 1:
            return "needs j >= 1"
        return None
    if p.family is Family.BILINEAR:
        if p.q < 3:
            return "needs q >= 3"
        if j < 1:
            return "needs j >= 1"
        return None
    if p.family is Family.HERMITIAN:
        return monotonicity_exclusion(p, i, j)
    return "no envelope for the hamming family"


# Hermitian clauses: (lower, upper) multiples of |T_hmax| by position of j against d - i.
HERMITIAN_ENVELOPES = {
    "j <= d-i-1": (Fraction(43, 78), Fraction(113, 78)),
    "j = d-i": (Fraction(691, 1296), Fraction(1901, 1296)),
    "j >= d-i+1": (Fraction(31, 216), Fraction(401, 216)),
}


def check_envelope_bounds(params: SchemeParams, i: int, j: int) -> Verdict:
    """Compare ``|P_ij|`` with the size envelope that applies to the family.

    grassmann, q >= 3:  4/9 q^c < |G| < 4 q^c with c the top exponent,
                        or 5/32 <= |G| / |T_{d-j}| <= 1 when n = 2d and i >= d-j
    bilinear,  q >= 3:  1/4 q^s < |B| < 2 q^s
    hermitian, d >= 6, j >= 2, 1 <= i <= d-3: a ratio window on |Q| / |T_hmax|
                        (see HERMITIAN_ENVELOPES), plus equal signs
    """
    check = "envelope"
    reason = envelope_exclusion(params, i, j)
    if reason:
        return Verdict(Status.EXCLUDED, check, reason)
    p = params
    value = spectra.eigenvalue(p, j, i)
    h, top = _hmax_term(p, i, j)
    witness = {"params": p.as_dict(), "i": i, "j": j, "eigenvalue": value, "h_max": h, "top_term": top}

    if p.family is Family.GRASSMANN and p.n == 2 * p.d and i >= p.d - j:
        clause = "n = 2d, i >= d-j: 5/32 <= |G|/|T| <= 1"
        ok = 32 * abs(value) >= 5 * abs(top) and abs(value) <= abs(top)
        return Verdict(Status.PASS if ok else Status.FAIL, check, clause, witness)

    if p.family in (Family.GRASSMANN, Family.BILINEAR):
        c = exponent_profile(p, i, j)(h)
        witness["exponent"] = c
        if p.family is Family.GRASSMANN:
            lo, hi, clause = Fraction(4, 9), Fraction(4), "4/9 q^c < |G| < 4 q^c"
        else:
            lo, hi, clause = Fraction(1, 4), Fraction(2), "1/4 q^s < |B| < 2 q^s"
        ok = compare_to_power(value, lo, p.q, c) > 0 and compare_to_power(value, hi, p.q, c) < 0
        return Verdict(Status.PASS if ok else Status.FAIL, check, clause, witness)

    d = p.d
    if j <= d - i - 1:
        key = "j <= d-i-1"
    elif j == d - i:
        key = "j = d-i"
    else:
        key = "j >= d-i+1"
    lo, hi = HERMITIAN_ENVELOPES[key]
    a, t = abs(value), abs(top)
    ok = (
        lo.denominator * a >= lo.numerator * t
        and hi.denominator * a <= hi.numerator * t
        and _sign(value) == _sign(top)
    )
    clause = f"{key}: {lo} <= |Q|/|T| <= {hi}, same sign"
    return Verdict(Status.PASS if ok else Status.FAIL, check, clause, witness)


def _grassmann_gauss_args(p: SchemeParams, i: int, j: int, h: int) -> list[tuple[int, int]]:
    return [(i, h), (p.d - h, j), (p.n - p.d - i + h, p.n - p.d - j)]


def check_exponent_sandwich(params: SchemeParams, i: int, j: int) -> Verdict:
    """Grassmann, q >= 3: ``q^g_h < |T_h| < 8 q^g_h`` for every nonzero term
    (``|T_h| = q^g_h`` when every Gaussian factor is trivial), and ``g_h - g_{h-1} = n - d - j - h + 1`` on consecutive indices."""
    check = "exponent-sandwich"
    p = params
    if p.family is not Family.GRASSMANN:
        return Verdict(Status.EXCLUDED, check, "grassmann only")
    if p.q < 3:
        return Verdict(Status.EXCLUDED, check, "needs q >= 3")
    dec = decompose(p, i, j)
    prof = exponent_profile(p, i, j)
    witness = {"params": p.as_dict(), "i": i, "j": j, "terms": dec.values}
    for t in dec.terms:
        # a term whose Gaussian factors are all 1 equals q^g exactly
        lower = compare_to_power(t.value, Fraction(1), p.q, t.exponent)
        trivial = all(k in (0, m) for m, k in _grassmann_gauss_args(p, i, j, t.h))
        if not ((lower == 0 if trivial else lower > 0)
                and compare_to_power(t.value, Fraction(8), p.q, t.exponent) < 0):
            witness.update(h=t.h, exponent=t.exponent)
            return Verdict(Status.FAIL, check, "q^g < |T| < 8 q^g", witness)
    for h in range(dec.h_min + 1, dec.h_max + 1):
        if prof(h) - prof(h - 1) != p.n - p.d - j - h + 1:
            witness.update(h=h)
            return Verdict(Status.FAIL, check, "exponent gap", witness)
    if not (dec.h_max < prof.vertex):
        return Verdict(Status.FAIL, check, "h_max below vertex", witness)
    return Verdict(Status.PASS, check, "q^g < |T| < 8 q^g; gap n-d-j-h+1", witness)


def check_signed_base_estimate(m: int, q: int) -> Verdict:
    """``(1 - q^-m) q^m <= |(-q)^m - 1| <= (1 + q^-m) q^m`` for ``m >= 1``."""
    check = "signed-base-estimate"
    if m < 1:
        return Verdict(Status.EXCLUDED, check, "needs m >= 1")
    v = abs((-q) ** m - 1)
    ok = q**m - 1 <= v <= q**m + 1
    return Verdict(Status.PASS if ok else Status.FAIL, check, "", {"m": m, "q": q, "value": v})


def hermitian_step_clause(d: int, q: int, i: int, j: int) -> str | None:
    """Which proven step claim covers ``|Q_j(i)|`` vs ``|Q_j(i+1)|`` (None if none)."""
    if d < 6 or j < 1 or not 0 <= i <= d - 1:
        return None
    if i == 0:
        return "valency"
    if j == 1:
        return "j = 1"
    if 1 <= i <= d - 5 or (i == d - 4 and 2 <= j <= 4):
        return "i <= d-5, or i = d-4 with 2 <= j <= 4"
    if i == d - 4 and j >= 5:
        return "i = d-4, j >= 5"
    if i == d - 3:
        return "i = d-3"
    if i == d - 2:
        return "i = d-2"
    return "i = d-1"


def hermitian_step_exception(q: int, d: int, i: int, j: int) -> bool:
    """The one place the step can fail: q = 2, i = d-1, j = d or j even."""
    return q == 2 and i == d - 1 and (j == d or j % 2 == 0)


def check_hermitian_step(d: int, q: int, i: int, j: int) -> Verdict:
    """``|Q_j(i)| > |Q_j(i+1)|`` on the cases the step lemmas cover (d >= 6).

    At the exceptional tuples the substitute claim ``|Q_j(d-2)| > |Q_j(d)|``
    is checked instead. Where a sign statement accompanies the step
    (j = 1; i in {d-2, d-1}), ``sign Q_j(i) = sign T_hmax(i, j)`` is checked too.
    """
    check = "hermitian-step"
    clause = hermitian_step_clause(d, q, i, j)
    if clause is None:
        return Verdict(Status.EXCLUDED, check, "needs d >= 6, j >= 1, 0 <= i <= d-1")
    params = SchemeParams.hermitian(d, q)
    col = spectra.eigen_column(params, j)
    witness = {"d": d, "q": q, "i": i, "j": j, "column": col}
    if hermitian_step_exception(q, d, i, j):
        ok = abs(col[d - 2]) > abs(col[d])
        return Verdict(Status.PASS if ok else Status.FAIL, check, "exception: |Q(d-2)| > |Q(d)|", witness)
    ok = abs(col[i]) > abs(col[i + 1])
    sign_rows = []
    if j == 1 and i >= 1:
        sign_rows = [i]
    elif i == d - 2:
        sign_rows = [d - 2, d - 1]
    elif i == d - 1 and j >= 2:
        sign_rows = [d - 1]
    for r in sign_rows:
        _, top = _hmax_term(params, r, j)
        if _sign(col[r]) != _sign(top):
            ok = False
            witness["sign_mismatch_row"] = r
    return Verdict(Status.PASS if ok else Status.FAIL, check, clause, witness)
