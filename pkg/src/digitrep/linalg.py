"""Dense complex matrices: predicates, the lattice Fourier matrix, serialization.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` in the
decreasing-value basis ordering.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError
from .lattice import LatticeSpec

__all__ = [
    "DEFAULT_TOL",
    "cis_turns",
    "dft_matrix",
    "adjoint",
    "frobenius_distance",
    "is_hermitian",
    "is_unitary",
    "is_permutation",
    "matrix_to_dict",
    "matrix_from_dict",
    "dumps_matrix",
    "loads_matrix",
    "matrix_to_csv",
    "matrix_from_csv",
    "format_real",
]

DEFAULT_TOL = 1e-12
ORDERING = "decreasing"


def cis_turns(turns) -> complex:
    """``exp(2 pi i t)`` with ``t`` reduced modulo 1 first (exactly, for rationals)."""
    if isinstance(turns, Fraction):
        turns = float(turns % 1)
    else:
        turns = float(turns) % 1.0
    return complex(np.exp(2j * np.pi * turns))


def _cis_array(turns: Sequence[Fraction]) -> np.ndarray:
    return np.exp(2j * np.pi * np.array([float(t % 1) for t in turns]))


def _square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    return a


def _conforming(a: np.ndarray, b: np.ndarray) -> None:
    if np.shape(a) != np.shape(b):
        raise DomainError(f"dimension mismatch: {np.shape(a)} vs {np.shape(b)}")


@lru_cache(maxsize=64)
def _dft_cached(spec: LatticeSpec) -> np.ndarray:
    N = spec.N
    idx = np.arange(N - 1, -1, -1)  # lattice index held by each basis row
    # x p = m k / N + m dx b + k dp a + a b, with x = m dx + a, p = k dp + b
    a, b = spec.x_offset, spec.p_offset
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    core = roots[np.outer(idx, idx) % N]
    row_phase = _cis_array([int(m) * spec.dx * b for m in idx])
    col_phase = _cis_array([int(k) * spec.dp * a for k in idx])
    f = core * row_phase[:, None] * col_phase[None, :] * cis_turns(a * b) / np.sqrt(N)
    f.setflags(write=False)
    return f


def dft_matrix(spec: LatticeSpec) -> np.ndarray:
    """Fourier matrix ``F[x, p] = exp(2 pi i x p) / sqrt(N)`` on the (shifted) lattices.

    Rows are coordinate nodes, columns momentum nodes, both in decreasing order.
    The returned array is cached per spec and read-only.
    """
    return _dft_cached(spec)


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.conj(_square(a)).T


def frobenius_distance(a: np.ndarray, b: np.ndarray) -> float:
    _conforming(a, b)
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def is_hermitian(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    a = _square(a)
    return frobenius_distance(a, adjoint(a)) < tol


def is_unitary(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    a = _square(a)
    return frobenius_distance(a @ adjoint(a), np.eye(a.shape[0])) < tol


def is_permutation(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True when every entry is 0 or 1 (within ``tol``) with one 1 per row and column."""
    a = _square(a)
    ones = np.abs(a - 1) < tol
    zeros = np.abs(a) < tol
    if not np.all(ones | zeros):
        return False
    return bool(np.all(ones.sum(axis=0) == 1) and np.all(ones.sum(axis=1) == 1))


# -- serialization ---------------------------------------------------------

def matrix_to_dict(a: np.ndarray) -> dict:
    a = _square(a)
    return {
        "n": int(a.shape[0]),
        "ordering": ORDERING,
        "re": [[float(v) for v in row] for row in a.real],
        "im": [[float(v) for v in row] for row in a.imag],
    }


def matrix_from_dict(payload: dict) -> np.ndarray:
    if payload.get("ordering", ORDERING) != ORDERING:
        raise DomainError(f"unsupported basis ordering {payload.get('ordering')!r}")
    re_part = np.array(payload["re"], dtype=float)
    im_part = np.array(payload["im"], dtype=float)
    n = int(payload["n"])
    if re_part.shape != (n, n) or im_part.shape != (n, n):
        raise DomainError("matrix payload does not match its declared size")
    return re_part + 1j * im_part


def dumps_matrix(a: np.ndarray) -> str:
    # json writes floats with repr(), which round-trips doubles exactly
    return json.dumps(matrix_to_dict(a))


def loads_matrix(text: str) -> np.ndarray:
    return matrix_from_dict(json.loads(text))


def format_real(v: float) -> str:
    """Decimal text with 17 significant digits."""
    return f"{float(v):.17g}"


def _format_cell(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def matrix_to_csv(a: np.ndarray) -> str:
    """CSV with a header row ``row,c0,c1,...`` and ``re+im i`` cells."""
    a = _square(a)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["row"] + [f"c{j}" for j in range(a.shape[1])])
    for i, row in enumerate(a):
        writer.writerow([i] + [_format_cell(complex(z)) for z in row])
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    body = rows[1:]
    return np.array([[complex(cell[:-1] + "j") for cell in row[1:]] for row in body])
