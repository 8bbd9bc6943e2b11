"""Flat quaternionic linear algebra on R^{4m}.

Three constant integer complex structures J1, J2, J3 act blockwise on
R^{4m}, one 4x4 block per quaternionic coordinate, and satisfy the
quaternion relations J1 J2 = J3 (cyclically) together with
J1^2 = J2^2 = J3^2 = J1 J2 J3 = -id.  The blocks are left
multiplication by i, j, k on H = C + Cj written in the real basis
(Re z1, Im z1, Re z2, Im z2), so J1 is the standard complex structure
and multiplication by i in the complex coordinates
z_k = X[2k] + i X[2k+1].
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "QuaternionicStructure",
    "make_structure",
    "apply_J",
    "complex_coords",
    "real_coords",
]

# left multiplication by i, j, k on (Re z1, Im z1, Re z2, Im z2)
_J1_BLOCK = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
_J2_BLOCK = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
_J3_BLOCK = np.array([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])


@dataclass(frozen=True)
class QuaternionicStructure:
    """The triple (J1, J2, J3) on R^{4m}, stored as exact integer matrices."""

    m: int
    J1: np.ndarray
    J2: np.ndarray
    J3: np.ndarray

    @property
    def dim(self) -> int:
        return 4 * self.m


def make_structure(m: int) -> QuaternionicStructure:
    """Build the block-diagonal quaternionic structure on R^{4m}."""
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    blocks = [np.kron(np.eye(m, dtype=np.int64), b) for b in (_J1_BLOCK, _J2_BLOCK, _J3_BLOCK)]
    return QuaternionicStructure(m=m, J1=blocks[0], J2=blocks[1], J3=blocks[2])


def apply_J(Q: QuaternionicStructure, a: int, X: np.ndarray) -> np.ndarray:
    """Apply J_a to an ambient vector, a in {1, 2, 3}."""
    if a not in (1, 2, 3):
        raise IndexError(f"structure index must be 1, 2 or 3, got {a}")
    return (Q.J1, Q.J2, Q.J3)[a - 1] @ X


def complex_coords(Q: QuaternionicStructure, X: np.ndarray) -> np.ndarray:
    """Read an ambient vector as a point of C^{2m}, z_k = X[2k] + i X[2k+1]."""
    X = np.asarray(X, dtype=float)
    if X.shape != (Q.dim,):
        raise ValueError(f"expected an ambient vector of length {Q.dim}, got shape {X.shape}")
    return X[0::2] + 1j * X[1::2]


def real_coords(Q: QuaternionicStructure, z: np.ndarray) -> np.ndarray:
    """Inverse of :func:`complex_coords`."""
    z = np.asarray(z, dtype=complex)
    if z.shape != (2 * Q.m,):
        raise ValueError(f"expected {2 * Q.m} complex coordinates, got shape {z.shape}")
    X = np.empty(Q.dim)
    X[0::2] = z.real
    X[1::2] = z.imag
    return X
