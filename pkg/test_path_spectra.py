# test_path_spectra.py
import numpy as np
import pytest

from src.spectra.path_spectra import (cycle_path_identity, moment_column, negative_cycle_inside_path,
                                      negative_cycle_values, path_adjacency, path_charpoly,
                                      path_squared_values, signed_cycle_squared_values,
                                      squared_spectrum_poly)
from src.traces.trace_engine import moment_bridge, power_of_two_bridge
from src.utils.errors import ParameterError


def test_path_charpoly_recurrence():
    assert path_charpoly(0).coeffs == (1,)
    assert path_charpoly(1).coeffs == (0, 1)
    assert path_charpoly(2).coeffs == (-1, 0, 1)
    assert path_charpoly(3).coeffs == (0, -2, 0, 1)
    assert path_charpoly(4).coeffs == (1, 0, -3, 0, 1)


@pytest.mark.parametrize("j, coeffs", [
    (1, (0, 1)),
    (2, (1, -2, 1)),
    (3, (0, 4, -4, 1)),
    (4, (1, -6, 11, -6, 1)),
    (5, (0, 9, -24, 22, -8, 1)),
])
def test_squared_spectrum_poly_small(j, coeffs):
    psi = squared_spectrum_poly(j)
    assert psi.j == j
    assert psi.poly.coeffs == coeffs


@pytest.mark.parametrize("j", range(1, 10))
def test_squared_spectrum_poly_shape(j):
    poly = squared_spectrum_poly(j).poly
    assert poly.is_monic()
    assert poly.degree == j
    assert (poly.coeffs[0] == 0) == (j % 2 == 1)


@pytest.mark.parametrize("j", range(1, 13))
def test_squared_spectrum_poly_roots_are_squared_eigenvalues(j):
    eigenvalues = np.linalg.eigvalsh(np.array(path_adjacency(j).to_rows(), dtype=float))
    coeffs = np.array([float(c) for c in reversed(squared_spectrum_poly(j).poly.coeffs)])
    scale = np.polyval(np.abs(coeffs), 4.0)
    for value in eigenvalues ** 2:
        assert abs(np.polyval(coeffs, value)) <= 1e-9 * scale


@pytest.mark.parametrize("j", range(2, 8))
def test_moment_column_is_power_sum_of_squared_spectrum(j):
    sums = squared_spectrum_poly(j).poly.power_sums(6)
    assert [moment_column(j, i) for i in range(1, 7)] == sums


def test_moment_column_values():
    assert [moment_column(1, i) for i in range(1, 4)] == [4, 16, 64]
    assert [moment_column(2, i) for i in range(1, 6)] == [2] * 5
    assert [moment_column(3, i) for i in range(1, 4)] == [4, 8, 16]
    with pytest.raises(ParameterError):
        moment_column(0, 1)


@pytest.mark.parametrize("j", range(2, 9))
def test_moment_bridge_counts_closed_walks(j):
    for i in range(1, 9):
        assert moment_bridge(j, i) == moment_column(j, i)


def test_power_of_two_bridge():
    assert [power_of_two_bridge(i) for i in range(1, 11)] == [4 ** i for i in range(1, 11)]


def test_signed_cycle_values():
    values = signed_cycle_squared_values(4)
    assert len(values) == 1 + 1 + 2 + 3 + 4
    assert values[0].value == 4.0
    assert len(signed_cycle_squared_values(4, r_is_three=True)) == 1 + 1 + 2 + 3
    with pytest.raises(ParameterError):
        signed_cycle_squared_values(2)


def test_path_squared_values():
    values = [v.value for v in path_squared_values(4)]
    assert values == pytest.approx([(3 + 5 ** 0.5) / 2, (3 - 5 ** 0.5) / 2, (3 - 5 ** 0.5) / 2, (3 + 5 ** 0.5) / 2])


@pytest.mark.parametrize("l", range(3, 10))
def test_negative_cycle_inside_path(l):
    assert len(negative_cycle_values(l)) == l
    assert negative_cycle_inside_path(l)


@pytest.mark.parametrize("t", [3, 5, 7, 9, 11])
def test_cycle_path_identity(t):
    passed, deviation = cycle_path_identity(t)
    assert passed
    assert deviation < 1e-9


def test_cycle_path_identity_rejects_even():
    with pytest.raises(ParameterError):
        cycle_path_identity(4)
