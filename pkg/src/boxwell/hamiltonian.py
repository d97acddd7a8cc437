"""Closed-form Hamiltonian and potential matrix elements in the parity basis.

Everything is in reduced units (energy unit epsilon, coupling g). With
``c1 = 16 g / pi**2`` and ``c2 = 384 g / pi**4`` the same-parity off-diagonal
potential element is

    V_rs = sigma * [c1 (1/(r-s)**2 - 1/(r+s+2)**2) - c2 (1/(r-s)**4 - 1/(r+s+2)**4)],
    sigma = (-1)**(r//2 + s//2),

the diagonal is ``V_rr = (g/5)(1 - 20/(pi n)**2 + 120/(pi n)**4)`` with
``n = r+1``, and elements between opposite parities vanish. The kinetic part
is diagonal and equal to ``(r+1)**2``.

For even pairs ``sigma`` coincides with ``(-1)**((r+s)/2)``; for odd pairs
it is the opposite sign, which is what direct integration of the sine basis
gives (see ``tests/test_hamiltonian.py`` for the quadrature and
finite-difference checks). Second-order energies depend only on ``V_rs**2``
and are unaffected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .params import ReducedParams

__all__ = [
    "SymmetricMatrix",
    "ParityBlocks",
    "coupling_constants",
    "potential_elements",
    "h_element",
    "v_element",
    "build_matrix",
    "build_potential_matrix",
    "split_parity",
    "merge_parity",
]

PI2 = math.pi**2
PI4 = PI2 * PI2


def coupling_constants(g: float) -> tuple[float, float]:
    """Return ``(c1, c2)`` for reduced coupling ``g``; ``c1 / c2 == pi**2 / 24``."""
    return 16.0 * g / PI2, 384.0 * g / PI4


def potential_elements(r, s, g: float) -> np.ndarray:
    """Vectorized ``V_rs / epsilon`` for integer arrays ``r``, ``s`` (broadcast).

    This is the single code path for every potential element in the package,
    so scalar and matrix evaluations agree bit-for-bit.
    """
    r = np.asarray(r, dtype=np.int64)
    s = np.asarray(s, dtype=np.int64)
    if np.any(r < 0) or np.any(s < 0):
        raise DomainError("basis indices must be non-negative")
    r, s = np.broadcast_arrays(r, s)
    c1, c2 = coupling_constants(g)
    out = np.zeros(r.shape, dtype=float)

    diag = r == s
    n = (r[diag] + 1).astype(float)
    inv = 1.0 / (PI2 * n * n)
    out[diag] = (g / 5.0) * (1.0 - 20.0 * inv + 120.0 * inv * inv)

    off = (~diag) & ((r + s) % 2 == 0)
    if np.any(off):
        ro, so = r[off], s[off]
        assert np.all((ro + so) % 2 == 0)
        sigma = 1.0 - 2.0 * ((ro // 2 + so // 2) % 2)
        d2 = ((ro - so) ** 2).astype(float)
        t2 = ((ro + so + 2) ** 2).astype(float)
        a2 = 1.0 / d2 - 1.0 / t2
        a4 = 1.0 / (d2 * d2) - 1.0 / (t2 * t2)
        out[off] = sigma * c1 * a2 - sigma * c2 * a4
    return out


def _check_pair(r, s):
    for v in (r, s):
        if isinstance(v, bool) or int(v) != v or v < 0:
            raise DomainError(f"basis index must be a non-negative integer, got {v!r}")


def v_element(r: int, s: int, rp: ReducedParams) -> float:
    """Potential matrix element ``<phi_r| g x**4 / a**4 |phi_s>`` in units of epsilon."""
    _check_pair(r, s)
    return float(potential_elements(r, s, rp.g))


def h_element(r: int, s: int, rp: ReducedParams) -> float:
    """Hamiltonian matrix element in units of epsilon."""
    _check_pair(r, s)
    kinetic = float((r + 1) ** 2) if r == s else 0.0
    return kinetic + float(potential_elements(r, s, rp.g))


@dataclass(frozen=True)
class SymmetricMatrix:
    """Real symmetric matrix stored as its packed lower triangle (row-major)."""

    n: int
    packed: np.ndarray

    def __post_init__(self):
        if self.packed.shape != (self.n * (self.n + 1) // 2,):
            raise ValueError("packed storage has the wrong length")
        if not np.all(np.isfinite(self.packed)):
            raise ValueError("matrix entries must be finite")
        self.packed.setflags(write=False)

    @classmethod
    def from_dense(cls, a) -> "SymmetricMatrix":
        """Pack the lower triangle of ``a``; the upper triangle is ignored."""
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("expected a square matrix")
        n = a.shape[0]
        return cls(n, a[np.tril_indices(n)].copy())

    def entry(self, r: int, s: int) -> float:
        if r < s:
            r, s = s, r
        if not 0 <= s <= r < self.n:
            raise IndexError((r, s))
        return float(self.packed[r * (r + 1) // 2 + s])

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        rows, cols = np.tril_indices(self.n)
        out[rows, cols] = self.packed
        out[cols, rows] = self.packed
        return out

    def diagonal(self) -> np.ndarray:
        k = np.arange(self.n)
        return self.packed[k * (k + 1) // 2 + k].copy()

    def trace(self) -> float:
        return math.fsum(self.diagonal())

    def frobenius_norm(self) -> float:
        d = self.diagonal()
        return math.sqrt(2.0 * math.fsum(self.packed**2) - math.fsum(d**2))


@dataclass(frozen=True)
class ParityBlocks:
    """Even- and odd-index blocks of a parity-structured matrix.

    ``even_index[k]`` / ``odd_index[k]`` give the global basis index of row
    ``k`` of each block.
    """

    even: SymmetricMatrix
    odd: SymmetricMatrix
    even_index: np.ndarray
    odd_index: np.ndarray

    @property
    def n(self) -> int:
        return self.even.n + self.odd.n


def _assemble(index: np.ndarray, rp: ReducedParams, kinetic: bool) -> SymmetricMatrix:
    n = len(index)
    rows, cols = np.tril_indices(n)
    r, s = index[rows], index[cols]
    packed = potential_elements(r, s, rp.g)
    if kinetic:
        d = r == s
        packed[d] = ((r[d] + 1) ** 2).astype(float) + packed[d]
    return SymmetricMatrix(n, packed)


def build_matrix(n: int, rp: ReducedParams) -> SymmetricMatrix:
    """The ``n x n`` truncated Hamiltonian over basis indices ``0..n-1``."""
    if int(n) != n or n < 1:
        raise DomainError(f"matrix dimension must be a positive integer, got {n!r}")
    return _assemble(np.arange(int(n)), rp, kinetic=True)


def build_potential_matrix(n: int, rp: ReducedParams) -> SymmetricMatrix:
    """The potential part alone (no kinetic diagonal)."""
    if int(n) != n or n < 1:
        raise DomainError(f"matrix dimension must be a positive integer, got {n!r}")
    return _assemble(np.arange(int(n)), rp, kinetic=False)


def split_parity(m: SymmetricMatrix) -> ParityBlocks:
    dense = m.to_dense()
    even = np.arange(0, m.n, 2)
    odd = np.arange(1, m.n, 2)
    return ParityBlocks(
        even=SymmetricMatrix.from_dense(dense[np.ix_(even, even)]),
        odd=SymmetricMatrix.from_dense(dense[np.ix_(odd, odd)]),
        even_index=even,
        odd_index=odd,
    )


def merge_parity(blocks: ParityBlocks) -> SymmetricMatrix:
    """Reassemble the parent matrix; cross-parity entries are zero."""
    out = np.zeros((blocks.n, blocks.n))
    out[np.ix_(blocks.even_index, blocks.even_index)] = blocks.even.to_dense()
    out[np.ix_(blocks.odd_index, blocks.odd_index)] = blocks.odd.to_dense()
    return SymmetricMatrix.from_dense(out)
