from __future__ import annotations

import pytest

from qschemes.errors import CapExceeded, UnsupportedField
from qschemes.oracle import (
    build_scheme,
    connectivity,
    get_conjugate_field,
    get_field,
    intersection_matrices,
    load_scheme,
    oracle_check,
    save_scheme,
    spectrum_multiset,
    validate_eigenmatrix,
)
from qschemes.oracle.schemes import rref_subspaces
from qschemes.spectra import Eigenmatrix, SchemeParams, eigenmatrix
from qschemes.verdict import Status


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 16, 25])
def test_field_axioms(q):
    F = get_field(q)
    for a in F.elements:
        assert F.add[a][F.neg[a]] == 0
        if a:
            assert F.mul[a][F.inv[a]] == 1
    # multiplicative group is cyclic of order q-1
    assert all(F.power(a, q - 1) == 1 for a in F.elements if a)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_conjugation_fixes_base_field(q):
    cf = get_conjugate_field(q)
    assert len(cf.fixed) == q
    assert all(cf.conj[cf.conj[x]] == x for x in cf.field.elements)


def test_unsupported_field():
    with pytest.raises(UnsupportedField):
        build_scheme(SchemeParams.grassmann(4, 2, 7))
    with pytest.raises(UnsupportedField):
        get_field(6)


def test_rank_over_f4():
    F = get_field(4)
    assert F.rank([[1, 2], [2, F.mul[2][2]]]) == 1
    assert F.rank([[1, 0], [0, 1]]) == 2


@pytest.mark.parametrize("n, d, q, count", [(4, 2, 2, 35), (5, 2, 2, 155), (4, 2, 3, 130)])
def test_rref_count(n, d, q, count):
    subs = rref_subspaces(n, d, get_field(q))
    assert len(subs) == len(set(subs)) == count


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        build_scheme(SchemeParams.hamming(6, 3), cap=100)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("QSCHEMES_ORACLE_CAP", "10")
    with pytest.raises(CapExceeded):
        build_scheme(SchemeParams.hamming(3, 3))


@pytest.mark.parametrize(
    "params",
    [SchemeParams.grassmann(4, 2, 2), SchemeParams.bilinear(2, 2, 2), SchemeParams.hermitian(2, 2), SchemeParams.hamming(3, 2)],
    ids=lambda p: p.label(),
)
def test_eigenvector_validation(params):
    scheme = build_scheme(params)
    L = intersection_matrices(scheme)
    P = eigenmatrix(params)
    assert L.valencies == P.valencies
    assert validate_eigenmatrix(P, L).status is Status.PASS


def test_perturbed_matrix_fails():
    params = SchemeParams.grassmann(4, 2, 2)
    L = intersection_matrices(build_scheme(params))
    verdict = validate_eigenmatrix(eigenmatrix(params).perturbed(1, 1, 1), L)
    assert verdict.status is Status.FAIL
    assert verdict.clause == "row 1, class 1"


def test_negated_hermitian_column_fails():
    # the negated first column passes neither the eigenvector test nor the spectrum
    params = SchemeParams.hermitian(2, 2)
    P = eigenmatrix(params)
    entries = tuple(tuple(-x if (c == 1 and r > 0) else x for c, x in enumerate(row)) for r, row in enumerate(P.entries))
    L = intersection_matrices(build_scheme(params))
    assert validate_eigenmatrix(Eigenmatrix(params, entries), L).status is Status.FAIL


def test_spectrum_multisets():
    scheme = build_scheme(SchemeParams.grassmann(4, 2, 2))
    assert spectrum_multiset(scheme, 1) == [(18, 1), (3, 14), (-3, 20)]
    herm = build_scheme(SchemeParams.hermitian(2, 2))
    assert spectrum_multiset(herm, 1) == [(5, 1), (1, 10), (-3, 5)]


def test_connectivity():
    assert connectivity(build_scheme(SchemeParams.hamming(2, 2)), 2) == (False, 2)
    assert connectivity(build_scheme(SchemeParams.hamming(3, 2)), 1) == (True, 1)


def test_cache_round_trip(tmp_path):
    scheme = build_scheme(SchemeParams.bilinear(2, 2, 2))
    path = tmp_path / "b222.json"
    save_scheme(scheme, path)
    loaded = load_scheme(path)
    assert loaded.params == scheme.params
    assert loaded.relation_table() == scheme.relation_table()
    assert intersection_matrices(loaded) == intersection_matrices(scheme)


def test_cache_rejects_unknown_format(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"format": "other"}')
    with pytest.raises(ValueError):
        load_scheme(path)


def test_oracle_check_report():
    report = oracle_check(SchemeParams.hermitian(2, 2))
    assert report.status is Status.PASS
    assert report.num_vertices == 16
    assert all(sum(m for _, m in s) == 16 for s in report.spectra.values())
