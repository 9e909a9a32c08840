from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from qschemes.errors import ParameterError
from qschemes.spectra import (
    Family,
    GrassmannForm,
    SchemeParams,
    eigenmatrix,
    eigenvalue,
    grassmann_eigenvalue,
    hamming_eigenvalue,
)

FROZEN = [
    (SchemeParams.grassmann(4, 2, 2), [(1, 18, 16), (1, 3, -4), (1, -3, 2)]),
    (SchemeParams.grassmann(5, 2, 2), [(1, 42, 112), (1, 11, -12), (1, -3, 2)]),
    (SchemeParams.bilinear(2, 3, 2), [(1, 21, 42), (1, 5, -6), (1, -3, 2)]),
    (SchemeParams.hermitian(2, 2), [(1, 5, 10), (1, -3, 2), (1, 1, -2)]),
    (SchemeParams.hermitian(3, 2), [(1, 21, 210, 280), (1, -11, 50, -40), (1, 5, 2, -8), (1, -3, -6, 8)]),
    (SchemeParams.hamming(2, 2), [(1, 2, 1), (1, 0, -1), (1, -2, 1)]),
]


@pytest.mark.parametrize("params, rows", FROZEN, ids=lambda x: x.label() if isinstance(x, SchemeParams) else "")
def test_frozen_eigenmatrices(params, rows):
    P = eigenmatrix(params)
    assert [P.row(i) for i in range(P.size)] == [tuple(r) for r in rows]


def test_krawtchouk_column():
    assert [hamming_eigenvalue(3, 3, 3, i) for i in range(4)] == [8, -4, 2, -1]


def test_both_grassmann_forms_at_small_case():
    assert grassmann_eigenvalue(4, 2, 2, 1, 1, GrassmannForm.J_SUM) == 3
    assert grassmann_eigenvalue(4, 2, 2, 1, 1, GrassmannForm.I_SUM) == 3


def test_first_column_is_ones_and_first_row_is_valencies():
    params = SchemeParams.grassmann(3, 1, 2)
    P = eigenmatrix(params)
    assert P.column(0) == (1, 1)
    assert sum(P.valencies) == params.num_vertices == 7


@pytest.mark.parametrize(
    "factory",
    [
        lambda: SchemeParams.grassmann(3, 2, 2),
        lambda: SchemeParams.bilinear(3, 2, 2),
        lambda: SchemeParams.hamming(0, 2),
        lambda: SchemeParams.hermitian(2, 1),
        lambda: SchemeParams(Family.HAMMING, 2, 2, n=5),
    ],
)
def test_invalid_parameters(factory):
    with pytest.raises(ParameterError) as info:
        factory()
    assert "valid domain" in str(info.value)


def test_index_out_of_range():
    with pytest.raises(ParameterError):
        eigenvalue(SchemeParams.hamming(2, 2), 3, 0)


def test_perturbed_copy_leaves_original():
    P = eigenmatrix(SchemeParams.hamming(2, 2))
    Q = P.perturbed(1, 1, 1)
    assert Q[1, 1] == P[1, 1] + 1
    assert P[1, 1] == 0


params_strategy = st.one_of(
    st.builds(lambda d, o, q: SchemeParams.grassmann(2 * d + o, d, q), st.integers(1, 5), st.integers(0, 3), st.integers(2, 5)),
    st.builds(lambda d, o, q: SchemeParams.bilinear(d, d + o, q), st.integers(1, 5), st.integers(0, 3), st.integers(2, 5)),
    st.builds(SchemeParams.hermitian, st.integers(1, 6), st.integers(2, 4)),
    st.builds(SchemeParams.hamming, st.integers(1, 8), st.integers(2, 6)),
)


@settings(max_examples=60, deadline=None)
@given(params_strategy)
def test_row_sums_and_orthogonality(params):
    """Row 0 sums to v, every other row sums to 0, and rows are orthogonal
    under the weights 1/k_j."""
    from fractions import Fraction

    P = eigenmatrix(params)
    k = P.valencies
    assert sum(P.row(0)) == params.num_vertices
    for i in range(1, P.size):
        assert sum(P.row(i)) == 0
    for a in range(P.size):
        for b in range(a + 1, P.size):
            assert sum(Fraction(P[a, j] * P[b, j], k[j]) for j in range(P.size)) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 4), st.integers(2, 5))
def test_grassmann_forms_agree(d, o, q):
    n = 2 * d + o
    for i in range(d + 1):
        for j in range(d + 1):
            assert grassmann_eigenvalue(n, d, q, j, i, GrassmannForm.J_SUM) == grassmann_eigenvalue(
                n, d, q, j, i, GrassmannForm.I_SUM
            )
