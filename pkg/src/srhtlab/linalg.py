"""Dense kernels for the validation harness.

Matrices are plain row-major float64 numpy arrays.  Singular values go
through the Gram matrix and a hand-rolled cyclic Jacobi eigensolver: every
matrix here is tall with at most a few dozen columns, so the squared
condition number of the Gram route is acceptable and the tolerance budget is
set at 1e-7 accordingly.
"""

import numpy as np

from .srht import derived_rng

__all__ = [
    "decimated_identity",
    "gram",
    "load_matrix_csv",
    "orthonormality_defect",
    "random_orthonormal",
    "save_matrix_csv",
    "singular_values",
    "symmetric_eigenvalues",
]

# Full-rank decision: sigma_k > RANK_RTOL * max(sigma_1, 1).  The Gram route
# computes an exactly-zero singular value as sqrt(eps * lambda_max) ~ 2e-8,
# while the smallest genuinely nonzero sigma_k in the rank experiments is
# >= k**-0.5, so 1e-6 sits well clear of both.
RANK_RTOL = 1e-6

JACOBI_MAX_SWEEPS = 30
JACOBI_OFF_RTOL = 1e-12


def random_orthonormal(n: int, k: int, seed) -> np.ndarray:
    """n x k matrix with orthonormal columns, deterministic per seed.

    Householder QR of a standard-normal matrix; column signs are fixed to the
    sign of the R diagonal so the result does not depend on LAPACK's sign
    convention.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    g = derived_rng(seed).standard_normal((n, k))
    q, r = np.linalg.qr(g)
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return q * d[None, :]


def gram(a) -> np.ndarray:
    """A^T A, symmetrized on output.  Accepts stacks of matrices."""
    a = np.asarray(a, dtype=np.float64)
    s = np.swapaxes(a, -1, -2) @ a
    return (s + np.swapaxes(s, -1, -2)) / 2.0


def orthonormality_defect(v) -> float:
    """max |(V^T V - I)_ij|; zero iff the columns are exactly orthonormal."""
    v = np.asarray(v, dtype=np.float64)
    k = v.shape[1] if v.ndim == 2 else 1
    return float(np.max(np.abs(gram(v) - np.eye(k))))


def symmetric_eigenvalues(s, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, sorted descending.

    Cyclic-by-row Jacobi rotations; sweeping stops once the off-diagonal
    Frobenius mass drops below 1e-12 times the Frobenius norm of the input.
    Matrices may be stacked along a leading axis, in which case the rotations
    run vectorized across the stack.  Raises on a visibly non-symmetric input
    or if the cap of ``max_sweeps`` sweeps is hit.
    """
    a = np.array(s, dtype=np.float64)
    single = a.ndim == 2
    if single:
        a = a[None]
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError(f"expected square matrices, got shape {a.shape}")
    scale = np.maximum(1.0, np.max(np.abs(a), axis=(1, 2)))
    defect = np.max(np.abs(a - a.transpose(0, 2, 1)), axis=(1, 2))
    if np.any(defect > 1e-8 * scale):
        raise ValueError("matrix is not symmetric")
    a = (a + a.transpose(0, 2, 1)) / 2.0
    n = a.shape[1]
    if n > 1:
        _jacobi_sweeps(a, max_sweeps)
    eigs = np.sort(np.diagonal(a, axis1=1, axis2=2), axis=1)[:, ::-1]
    return eigs[0] if single else eigs


def _jacobi_sweeps(a, max_sweeps):
    """Run cyclic Jacobi similarity rotations in place on a (m, n, n) stack."""
    n = a.shape[1]
    diag = np.arange(n)
    tol = JACOBI_OFF_RTOL * np.linalg.norm(a, axis=(1, 2))

    def converged():
        off = a.copy()
        off[:, diag, diag] = 0.0
        return np.all(np.linalg.norm(off, axis=(1, 2)) <= tol)

    if converged():
        return
    for _ in range(max_sweeps):
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                    theta = (a[:, q, q] - a[:, p, p]) / (2.0 * apq)
                    t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                    t = np.where(np.abs(theta) > 1e150, 0.5 / theta, t)
                t = np.where(theta == 0.0, 1.0, t)
                t = np.where(np.abs(apq) < 1e-300, 0.0, t)
                c = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * c
                col_p, col_q = a[:, :, p].copy(), a[:, :, q].copy()
                a[:, :, p] = c[:, None] * col_p - sn[:, None] * col_q
                a[:, :, q] = sn[:, None] * col_p + c[:, None] * col_q
                row_p, row_q = a[:, p, :].copy(), a[:, q, :].copy()
                a[:, p, :] = c[:, None] * row_p - sn[:, None] * row_q
                a[:, q, :] = sn[:, None] * row_p + c[:, None] * row_q
        if converged():
            return
    raise RuntimeError(f"Jacobi sweep cap {max_sweeps} hit without converging")


def singular_values(a) -> np.ndarray:
    """Singular values of an m x k matrix (m >= k), sorted descending.

    Square roots of the Gram eigenvalues; tiny negative eigenvalues from
    rounding are clamped to zero before the root.  Accepts stacks of
    matrices.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim < 2 or a.shape[-2] < a.shape[-1]:
        raise ValueError(f"expected m >= k, got shape {a.shape}")
    eig = symmetric_eigenvalues(gram(a))
    return np.sqrt(np.clip(eig, 0.0, None))


def decimated_identity(k: int) -> np.ndarray:
    """k^2 x k orthonormal matrix from regular decimation of the identity.

    Row j (0-based) is the unit vector e_{j/k} when j is a multiple of k and
    zero otherwise: one nonzero per column, exactly orthonormal.  k must be a
    power of two so that k^2 is a valid transform size.
    """
    if not (isinstance(k, (int, np.integer)) and k >= 1 and (k & (k - 1)) == 0):
        raise ValueError(f"k must be a positive power of two, got {k!r}")
    w = np.zeros((k * k, k))
    w[np.arange(k) * k, np.arange(k)] = 1.0
    return w


def save_matrix_csv(path, a) -> None:
    """Write a matrix as CSV: header line ``rows,cols`` then one row per line."""
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    rows, cols = a.shape
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{rows},{cols}\n")
        for row in a:
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


def load_matrix_csv(path) -> np.ndarray:
    """Read a matrix written by ``save_matrix_csv``."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        rows, cols = (int(t) for t in header.split(","))
        a = np.empty((rows, cols))
        for i in range(rows):
            parts = fh.readline().strip().split(",")
            if len(parts) != cols:
                raise ValueError(f"row {i} has {len(parts)} fields, expected {cols}")
            a[i] = [float(t) for t in parts]
    return a
