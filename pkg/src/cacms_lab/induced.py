"""The complex almost contact metric structure induced at a surface point.

From the normal frame (xi, J1 xi) the structure is assembled purely
algebraically: U = J2 xi and V = J3 xi are tangent, the 1-forms u, v
are their metric duals, and the tensors G = P J2 P, H = P J3 P and
J = P J1 P act in ambient coordinates, vanishing on the normal plane.
All defining identities then hold pointwise to rounding error; no
derivatives are involved at this level.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .hypersurface import SurfacePoint
from .quatlin import QuaternionicStructure
from .report import ResidualEntry, SuiteResult

__all__ = [
    "InducedStructure",
    "AdaptedFrame",
    "FrameDegeneracy",
    "induced_structure",
    "structure_residuals",
    "gauge_rotate",
    "adapted_frame",
]


class FrameDegeneracy(RuntimeError):
    """Random draws kept collapsing while building an adapted frame."""


@dataclass(frozen=True)
class InducedStructure:
    """The tuple (U, V, u, v, G, H, J) at a point, in ambient coordinates.

    u and v are realised as the metric duals of U and V, so u(X) is the
    plain inner product U . X; no separate covector storage.
    """

    U: np.ndarray
    V: np.ndarray
    G: np.ndarray
    H: np.ndarray
    J: np.ndarray
    projector: np.ndarray

    def u(self, X: np.ndarray) -> float:
        return float(self.U @ X)

    def v(self, X: np.ndarray) -> float:
        return float(self.V @ X)


def induced_structure(Q: QuaternionicStructure, sp: SurfacePoint) -> InducedStructure:
    """Assemble the induced structure from the cached normal frame at sp."""
    P = sp.projector
    return InducedStructure(
        U=Q.J2 @ sp.xi,
        V=Q.J3 @ sp.xi,
        G=P @ Q.J2 @ P,
        H=P @ Q.J3 @ P,
        J=P @ Q.J1 @ P,
        projector=P,
    )


def _axiom_residuals(S: InducedStructure, X: np.ndarray, Y: np.ndarray) -> dict[str, float]:
    """Max-norm residuals of the defining identities on one tangent pair."""
    U, V, G, H, J = S.U, S.V, S.G, S.H, S.J
    u, v = S.u, S.v
    GX, HX, JX = G @ X, H @ X, J @ X
    GY = G @ Y

    def nrm(w: np.ndarray) -> float:
        return float(np.max(np.abs(w)))

    return {
        "G2_identity": nrm(G @ GX + X - u(X) * U - v(X) * V),
        "H2_identity": nrm(H @ HX + X - u(X) * U - v(X) * V),
        "J_squared": nrm(J @ JX + X),
        "H_equals_JG": nrm(HX - J @ GX),
        "GJ_equals_minus_H": nrm(G @ JX + HX),
        "GJ_anticommute": nrm(G @ JX + J @ GX),
        "GH_identity": nrm(G @ HX - JX - v(X) * U + u(X) * V),
        "G_skew": abs(float(GX @ Y) + float(X @ GY)),
        "H_skew": abs(float(HX @ Y) + float(X @ (H @ Y))),
        "u_of_G": abs(u(GX)),
        "v_of_G": abs(v(GX)),
        "u_of_H": abs(u(HX)),
        "v_of_H": abs(v(HX)),
        "v_plus_u_of_J": abs(v(X) + u(JX)),
        "metric_compat_G": abs(float(GX @ GY) - float(X @ Y) + u(X) * u(Y) + v(X) * v(Y)),
        "metric_compat_H": abs(float(HX @ (H @ Y)) - float(X @ Y) + u(X) * u(Y) + v(X) * v(Y)),
    }


def _vector_residuals(S: InducedStructure) -> dict[str, float]:
    """Residuals of the identities involving only U and V."""
    U, V = S.U, S.V

    def nrm(w: np.ndarray) -> float:
        return float(np.max(np.abs(w)))

    return {
        "GU": nrm(S.G @ U),
        "GV": nrm(S.G @ V),
        "HU": nrm(S.H @ U),
        "HV": nrm(S.H @ V),
        "u_of_U_minus_1": abs(S.u(U) - 1.0),
        "v_of_V_minus_1": abs(S.v(V) - 1.0),
        "u_of_V": abs(S.u(V)),
        "v_of_U": abs(S.v(U)),
        "U_norm_minus_1": abs(float(np.linalg.norm(U)) - 1.0),
        "V_norm_minus_1": abs(float(np.linalg.norm(V)) - 1.0),
        "UV_inner": abs(float(U @ V)),
        "V_minus_JU": nrm(V - S.J @ U),
        "U_tangent": nrm(U - S.projector @ U),
        "V_tangent": nrm(V - S.projector @ V),
    }


def structure_residuals(
    S: InducedStructure,
    trials: int = 20,
    rng_seed: int = 0,
    tol: float = 1e-10,
    vectors: np.ndarray | None = None,
) -> SuiteResult:
    """Evaluate the full identity suite on random tangent pairs.

    Residuals are maximised over `trials` unit tangent draws (or over
    the rows of `vectors` when given, e.g. a projected basis sweep for
    a deterministic run).  Every entry is asserted against `tol`.
    """
    dim = S.projector.shape[0]
    if vectors is None:
        rng = np.random.default_rng(rng_seed)
        draws = []
        while len(draws) < max(trials, 2):
            w = S.projector @ rng.standard_normal(dim)
            n = float(np.linalg.norm(w))
            if n > 1e-8:
                draws.append(w / n)
        vectors = np.array(draws)
    else:
        vectors = np.asarray(vectors, dtype=float)
        if vectors.ndim != 2 or vectors.shape[1] != dim:
            raise ValueError(f"vectors must be (k, {dim}), got {vectors.shape}")

    worst = _vector_residuals(S)
    k = len(vectors)
    for i in range(k):
        pair = _axiom_residuals(S, vectors[i], vectors[(i + 1) % k])
        for name, val in pair.items():
            worst[name] = max(worst.get(name, 0.0), val)

    entries = [ResidualEntry(name=n, value=v, tol=tol) for n, v in sorted(worst.items())]
    return SuiteResult(suite="axioms", h=None, entries=entries)


def gauge_rotate(S: InducedStructure, a: float, b: float) -> InducedStructure:
    """Rotate the structure through the circle action, a^2 + b^2 = 1."""
    if abs(a * a + b * b - 1.0) > 1e-12:
        raise ValueError(f"(a, b) = ({a}, {b}) is not on the unit circle")
    return replace(
        S,
        U=a * S.U - b * S.V,
        V=b * S.U + a * S.V,
        G=a * S.G - b * S.H,
        H=b * S.G + a * S.H,
    )


@dataclass(frozen=True)
class AdaptedFrame:
    """Orthonormal tangent frame (X_i, JX_i, GX_i, HX_i)_i followed by (U, V).

    `vectors` stacks the frame row-wise.  `correction` records the
    largest adjustment a defensive re-orthonormalisation pass would
    have applied; the stored vectors keep the exact quadruple images
    JX_i = J X_i etc. unless that defect was unexpectedly large.
    """

    vectors: np.ndarray
    n: int
    correction: float

    def gram(self) -> np.ndarray:
        return self.vectors @ self.vectors.T


def _orthonormalize(rows: np.ndarray) -> np.ndarray:
    out = rows.copy()
    for i in range(len(out)):
        for j in range(i):
            out[i] -= (out[j] @ out[i]) * out[j]
        out[i] /= np.linalg.norm(out[i])
    return out


def adapted_frame(
    S: InducedStructure,
    sp: SurfacePoint,
    rng_seed: int = 0,
    degeneracy_tol: float = 1e-8,
    max_draws: int = 20,
) -> AdaptedFrame:
    """Greedy construction of an adapted frame of the tangent space at sp.

    Draw a random tangent vector, project out U, V and every frame
    vector chosen so far, normalise, and append its images under J, G
    and H.  The quadruple spans are invariant under all three tensors,
    so orthonormality is automatic; a Gram-Schmidt pass is still run
    defensively and its correction magnitude recorded.
    """
    dim = sp.dim
    n = (dim - 4) // 4  # tangent dim is 4n + 2
    rng = np.random.default_rng(rng_seed)
    frame: list[np.ndarray] = []
    for _ in range(n):
        picked = None
        for _ in range(max_draws):
            X = sp.projector @ rng.standard_normal(dim)
            X -= (S.U @ X) * S.U + (S.V @ X) * S.V
            for w in frame:
                X -= (w @ X) * w
            norm = float(np.linalg.norm(X))
            if norm > degeneracy_tol:
                picked = X / norm
                break
        if picked is None:
            raise FrameDegeneracy(
                f"no usable tangent direction after {max_draws} draws "
                f"(residuals below {degeneracy_tol:.1e})"
            )
        frame.extend([picked, S.J @ picked, S.G @ picked, S.H @ picked])
    frame.extend([S.U, S.V])
    vectors = np.array(frame)
    correction = float(np.max(np.abs(_orthonormalize(vectors) - vectors)))
    if correction > 1e-12:
        vectors = _orthonormalize(vectors)
    return AdaptedFrame(vectors=vectors, n=n, correction=correction)
