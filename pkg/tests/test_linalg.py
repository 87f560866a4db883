import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from srhtlab.linalg import (
    decimated_identity,
    gram,
    load_matrix_csv,
    orthonormality_defect,
    random_orthonormal,
    save_matrix_csv,
    singular_values,
    symmetric_eigenvalues,
)
from srhtlab.srht import apply_to_matrix, draw_srht
from srhtlab.wht import fwht


# --- independent oracles ----------------------------------------------------

def charpoly_coefficients(s):
    """Characteristic polynomial via Newton's identities on power-sum traces.

    Uses matrix products only, nothing spectral.  Returns [1, c1, ..., cn]
    for lambda^n + c1 lambda^(n-1) + ... + cn.
    """
    n = s.shape[0]
    power = np.eye(n)
    psums = []
    for _ in range(n):
        power = power @ s
        psums.append(np.trace(power))
    e = [1.0]
    for m in range(1, n + 1):
        acc = 0.0
        for i in range(1, m + 1):
            acc += (-1) ** (i - 1) * e[m - i] * psums[i - 1]
        e.append(acc / m)
    return [(-1) ** i * e[i] for i in range(n + 1)]


def eigenvalues_by_bisection(s, grid_points=40001):
    """Roots of the characteristic polynomial bracketed on a Gershgorin grid
    and refined by bisection.  Assumes distinct eigenvalues."""
    coeffs = charpoly_coefficients(s)

    def poly(x):
        acc = 0.0
        for c in coeffs:
            acc = acc * x + c
        return acc

    radius = float(np.max(np.sum(np.abs(s), axis=1)))
    grid = np.linspace(-radius - 1.0, radius + 1.0, grid_points)
    vals = [poly(x) for x in grid]
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            roots.append(a)
            continue
        if fa * fb < 0:
            lo, hi, flo = a, b, fa
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fmid = poly(mid)
                if fmid == 0.0:
                    lo = hi = mid
                    break
                if flo * fmid < 0:
                    hi = mid
                else:
                    lo, flo = mid, fmid
                if hi - lo < 1e-14 * max(1.0, abs(mid)):
                    break
            roots.append(0.5 * (lo + hi))
    assert len(roots) == s.shape[0], f"bracketed {len(roots)} of {s.shape[0]} roots"
    return np.sort(np.array(roots))[::-1]


def gram_by_loops(a):
    m, k = a.shape
    out = np.zeros((k, k))
    for i in range(k):
        for j in range(k):
            for r in range(m):
                out[i, j] += a[r, i] * a[r, j]
    return out


# --- random_orthonormal -----------------------------------------------------

def test_square_case_is_orthogonal():
    v = random_orthonormal(4, 4, 0)
    assert np.max(np.abs(v.T @ v - np.eye(4))) <= 1e-10
    assert np.max(np.abs(v @ v.T - np.eye(4))) <= 1e-10


def test_column_norms():
    v = random_orthonormal(64, 8, 1)
    assert np.max(np.abs(np.linalg.norm(v, axis=0) - 1.0)) <= 1e-12


def test_seed_sensitivity():
    a = random_orthonormal(16, 4, 0)
    b = random_orthonormal(16, 4, 1)
    assert np.linalg.norm(a - b) > 1e-3
    assert np.array_equal(a, random_orthonormal(16, 4, 0))


def test_random_orthonormal_rejects_wide():
    with pytest.raises(ValueError):
        random_orthonormal(3, 4, 0)


# --- gram ---------------------------------------------------------------

def test_gram_identity():
    assert np.array_equal(gram(np.eye(3)), np.eye(3))


def test_gram_single_column():
    assert np.allclose(gram(np.array([[3.0], [4.0]])), [[25.0]])


def test_gram_matches_triple_loop():
    a = np.random.default_rng(9).standard_normal((5, 2))
    assert np.max(np.abs(gram(a) - gram_by_loops(a))) <= 1e-12


def test_gram_output_symmetric():
    a = np.random.default_rng(10).standard_normal((40, 6))
    g = gram(a)
    assert np.max(np.abs(g - g.T)) <= 1e-14


# --- symmetric_eigenvalues ----------------------------------------------

def test_eigenvalues_of_diagonal():
    assert np.allclose(symmetric_eigenvalues(np.diag([5.0, 2.0, -1.0])), [5.0, 2.0, -1.0])


def test_eigenvalues_analytic_2x2():
    assert np.allclose(symmetric_eigenvalues([[2.0, 1.0], [1.0, 2.0]]), [3.0, 1.0], atol=1e-12)


def test_eigenvalues_match_charpoly_oracle():
    rng = np.random.default_rng(21)
    for _ in range(5):
        s = rng.standard_normal((4, 4))
        s = (s + s.T) / 2
        got = symmetric_eigenvalues(s)
        expected = eigenvalues_by_bisection(s)
        assert np.max(np.abs(got - expected)) <= 1e-8


def test_eigenvalue_sum_is_trace():
    rng = np.random.default_rng(22)
    s = rng.standard_normal((7, 7))
    s = (s + s.T) / 2
    eig = symmetric_eigenvalues(s)
    assert abs(eig.sum() - np.trace(s)) <= 1e-8 * np.linalg.norm(s)
    assert np.all(np.diff(eig) <= 0)


def test_similarity_invariance():
    rng = np.random.default_rng(23)
    s = rng.standard_normal((5, 5))
    s = (s + s.T) / 2
    p = random_orthonormal(5, 5, 99)
    a = symmetric_eigenvalues(s)
    b = symmetric_eigenvalues(p.T @ s @ p)
    assert np.max(np.abs(a - b)) <= 1e-8


def test_stacked_input_matches_loop():
    rng = np.random.default_rng(24)
    batch = rng.standard_normal((6, 5, 5))
    batch = (batch + batch.transpose(0, 2, 1)) / 2
    stacked = symmetric_eigenvalues(batch)
    for i in range(6):
        assert np.allclose(stacked[i], symmetric_eigenvalues(batch[i]), atol=1e-12)


def test_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        symmetric_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_zero_and_1x1():
    assert np.array_equal(symmetric_eigenvalues(np.zeros((3, 3))), np.zeros(3))
    assert np.allclose(symmetric_eigenvalues([[4.0]]), [4.0])


# --- singular_values ------------------------------------------------------

def test_singular_values_identity():
    assert np.allclose(singular_values(np.eye(4)), np.ones(4))


def test_singular_values_diagonal():
    assert np.allclose(singular_values(np.diag([3.0, 4.0])), [4.0, 3.0])


def test_singular_values_match_charpoly_oracle():
    a = np.random.default_rng(31).standard_normal((6, 3))
    got = singular_values(a)
    eig = eigenvalues_by_bisection(gram(a))
    expected = np.sqrt(np.clip(eig, 0.0, None))
    assert np.max(np.abs(got - expected)) <= 1e-7


def test_singular_values_rejects_wide():
    with pytest.raises(ValueError):
        singular_values(np.zeros((2, 3)))


def test_full_sample_sketch_has_unit_spectrum():
    n, k = 64, 5
    v = random_orthonormal(n, k, 7)
    op = draw_srht(n, n, 3)
    s = singular_values(apply_to_matrix(op, v))
    assert np.max(np.abs(s - 1.0)) <= 1e-8


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25)
def test_top_singular_value_vs_trace(seed):
    rng = np.random.default_rng(seed)
    m, k = int(rng.integers(2, 10)), int(rng.integers(1, 5))
    a = rng.standard_normal((m + k, k))
    s = singular_values(a)
    trace = np.trace(gram(a))
    assert s[0] ** 2 <= trace * (1 + 1e-10)
    assert trace <= k * s[0] ** 2 * (1 + 1e-10)


# --- decimated_identity -----------------------------------------------------

def test_decimated_identity_k2():
    w = decimated_identity(2)
    expected = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    assert np.array_equal(w, expected)


def test_decimated_identity_exactly_orthonormal():
    w = decimated_identity(8)
    assert np.array_equal(gram(w), np.eye(8))


def test_decimated_identity_rejects_non_power():
    with pytest.raises(ValueError):
        decimated_identity(6)


def test_transformed_decimation_has_row_classes():
    # after sign flip + transform, rows with equal floor(r/k) are parallel
    # and rows from different classes are orthogonal
    k = 4
    n = k * k
    w = decimated_identity(k)
    rng = np.random.default_rng(5)
    signs = 2.0 * rng.integers(0, 2, size=n) - 1.0
    v = fwht(signs[:, None] * w)
    for r in range(n):
        for rp in range(r + 1, n):
            dot = float(v[r] @ v[rp])
            cos = dot / (np.linalg.norm(v[r]) * np.linalg.norm(v[rp]))
            if r // k == rp // k:
                assert abs(abs(cos) - 1.0) <= 1e-10, (r, rp)
            else:
                assert abs(cos) <= 1e-10, (r, rp)


# --- orthonormality_defect / csv ------------------------------------------

def test_orthonormality_defect_values():
    assert orthonormality_defect(np.eye(5)) == 0.0
    assert orthonormality_defect(2 * np.eye(3)) == pytest.approx(3.0)


def test_csv_roundtrip(tmp_path):
    a = np.random.default_rng(77).standard_normal((5, 3))
    path = tmp_path / "m.csv"
    save_matrix_csv(path, a)
    header = path.read_text().splitlines()[0]
    assert header == "5,3"
    assert np.array_equal(load_matrix_csv(path), a)


def test_csv_rejects_ragged(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("2,2\n1.0,2.0\n3.0\n")
    with pytest.raises(ValueError):
        load_matrix_csv(path)
