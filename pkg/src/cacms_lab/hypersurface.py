"""Holomorphic hypersurfaces of C^{2m} = R^{4m} and projection onto them.

A hypersurface M is the zero set of a holomorphic polynomial
f: C^{2m} -> C.  At a regular point the gradients of Re f and Im f are
a pair of orthogonal normals of equal length (Cauchy-Riemann), so the
unit normal xi = grad(Re f)/|grad(Re f)| and J1 xi frame the normal
plane and the tangent space is J1-invariant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .quatlin import QuaternionicStructure, complex_coords

__all__ = [
    "HoloPolynomial",
    "SurfacePoint",
    "SingularPoint",
    "NonConvergence",
    "ambient_gradient_pair",
    "unit_normal",
    "project_to_surface",
    "tangential_projector",
    "random_tangent",
]


class SingularPoint(RuntimeError):
    """The polynomial gradient vanishes (below tolerance) at the point."""


class NonConvergence(RuntimeError):
    """Gauss-Newton projection failed to reach the surface tolerance."""


@dataclass(frozen=True)
class HoloPolynomial:
    """Holomorphic polynomial as a table of terms, exponent tuple -> coefficient.

    Exponent tuples have one nonnegative entry per complex variable.
    Terms with zero coefficient are dropped; what remains must be
    nonempty and of total degree at least one, since a constant map
    defines no hypersurface.
    """

    num_vars: int
    terms: dict[tuple[int, ...], complex]
    _exps: np.ndarray = field(init=False, repr=False, compare=False)
    _coeffs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("need at least one complex variable")
        cleaned: dict[tuple[int, ...], complex] = {}
        for exps, coeff in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.num_vars:
                raise ValueError(
                    f"term {exps} has {len(exps)} exponents, expected {self.num_vars}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"term {exps} has a negative exponent")
            if coeff != 0:
                cleaned[exps] = cleaned.get(exps, 0) + complex(coeff)
        cleaned = {e: c for e, c in cleaned.items() if c != 0}
        if not cleaned:
            raise ValueError("polynomial has no nonzero terms")
        if max(sum(e) for e in cleaned) < 1:
            raise ValueError("polynomial is constant and defines no hypersurface")
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(
            self, "_exps", np.array(sorted(cleaned), dtype=np.int64).reshape(len(cleaned), -1)
        )
        object.__setattr__(
            self, "_coeffs", np.array([cleaned[tuple(e)] for e in self._exps], dtype=complex)
        )

    @property
    def degree(self) -> int:
        return int(self._exps.sum(axis=1).max())

    def eval(self, z: np.ndarray) -> complex:
        z = np.asarray(z, dtype=complex)
        return complex(np.prod(z[None, :] ** self._exps, axis=1) @ self._coeffs)

    def wirtinger_gradient(self, z: np.ndarray) -> np.ndarray:
        """Formal term-by-term derivative (df/dz_1, ..., df/dz_n)."""
        z = np.asarray(z, dtype=complex)
        grad = np.zeros(self.num_vars, dtype=complex)
        for k in range(self.num_vars):
            ek = self._exps[:, k]
            lowered = self._exps.copy()
            np.maximum(lowered[:, k] - 1, 0, out=lowered[:, k])
            grad[k] = (self._coeffs * ek) @ np.prod(z[None, :] ** lowered, axis=1)
        return grad


@dataclass(frozen=True)
class SurfacePoint:
    """A point on M with its cached normal frame and tangential projector."""

    p: np.ndarray
    xi: np.ndarray
    j1xi: np.ndarray
    projector: np.ndarray
    f_residual: float

    @property
    def dim(self) -> int:
        return self.p.shape[0]


def _check_dims(Q: QuaternionicStructure, f: HoloPolynomial) -> None:
    if f.num_vars != 2 * Q.m:
        raise ValueError(
            f"polynomial in {f.num_vars} variables does not match C^{2 * Q.m}"
        )


def ambient_gradient_pair(
    Q: QuaternionicStructure, f: HoloPolynomial, x: np.ndarray
) -> tuple[np.ndarray, np.ndarray, complex]:
    """Euclidean gradients of (Re f, Im f) at an ambient point, plus f itself.

    With w = (df/dz_k) the interleaved components are
    grad(Re f) = (Re w_k, -Im w_k) and grad(Im f) = (Im w_k, Re w_k),
    so grad(Im f) = J1 grad(Re f) and both have length |w|.
    """
    z = complex_coords(Q, x)
    w = f.wirtinger_gradient(z)
    grad_re = np.empty(Q.dim)
    grad_re[0::2] = w.real
    grad_re[1::2] = -w.imag
    grad_im = np.empty(Q.dim)
    grad_im[0::2] = w.imag
    grad_im[1::2] = w.real
    return grad_re, grad_im, f.eval(z)


def unit_normal(
    Q: QuaternionicStructure,
    f: HoloPolynomial,
    x: np.ndarray,
    singular_tol: float = 1e-8,
) -> tuple[np.ndarray, np.ndarray]:
    """Unit normal xi = grad(Re f)/|grad(Re f)| and its partner J1 xi."""
    _check_dims(Q, f)
    grad_re, grad_im, _ = ambient_gradient_pair(Q, f, x)
    norm = float(np.linalg.norm(grad_re))
    if norm < singular_tol:
        raise SingularPoint(f"|grad f| = {norm:.3e} below {singular_tol:.1e}")
    return grad_re / norm, grad_im / norm


def project_to_surface(
    Q: QuaternionicStructure,
    f: HoloPolynomial,
    seed: np.ndarray,
    newton_tol: float = 1e-12,
    max_iter: int = 50,
    singular_tol: float = 1e-8,
) -> SurfacePoint:
    """Gauss-Newton projection of an ambient seed onto M = f^{-1}(0).

    Solves the two real constraints (Re f, Im f) = (0, 0) with the
    minimum-norm update.  The constraint Jacobian rows are orthogonal
    with equal norm |w| (Cauchy-Riemann), so the update is the closed
    form dx = -(Re f . grad Re f + Im f . grad Im f)/|w|^2.  Stops once
    |f| <= newton_tol.
    """
    _check_dims(Q, f)
    x = np.asarray(seed, dtype=float).copy()
    if x.shape != (Q.dim,):
        raise ValueError(f"seed must have length {Q.dim}, got shape {x.shape}")
    val = 0j
    for it in range(max_iter + 1):
        grad_re, grad_im, val = ambient_gradient_pair(Q, f, x)
        sq = float(grad_re @ grad_re)
        norm = np.sqrt(sq)
        if norm < singular_tol:
            raise SingularPoint(
                f"|grad f| = {norm:.3e} below {singular_tol:.1e} during projection"
            )
        if abs(val) <= newton_tol:
            xi = grad_re / norm
            j1xi = grad_im / norm
            P = np.eye(Q.dim) - np.outer(xi, xi) - np.outer(j1xi, j1xi)
            return SurfacePoint(p=x, xi=xi, j1xi=j1xi, projector=P, f_residual=abs(val))
        if it == max_iter:
            break
        x = x - (val.real * grad_re + val.imag * grad_im) / sq
    raise NonConvergence(
        f"|f| = {abs(val):.3e} after {max_iter} Gauss-Newton steps (tol {newton_tol:.1e})"
    )


def tangential_projector(sp: SurfacePoint, X: np.ndarray) -> np.ndarray:
    """Project an ambient vector onto the tangent space at sp."""
    return sp.projector @ X


def random_tangent(sp: SurfacePoint, rng: np.random.Generator, unit: bool = True) -> np.ndarray:
    """Draw a random tangent vector at sp, unit length by default."""
    for _ in range(100):
        v = sp.projector @ rng.standard_normal(sp.dim)
        norm = float(np.linalg.norm(v))
        if norm > 1e-8:
            return v / norm if unit else v
    raise RuntimeError("could not draw a nondegenerate tangent vector")
