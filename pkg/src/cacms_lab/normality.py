"""Normality tensors and the contact-metric diagnostic.

Everything here is diagnostic: the tensors S and T are assembled and
reported but never asserted to vanish, and the contact-metric defect
is evaluated under two common normalisations of the exterior
derivative without preferring either.

Conventions, fixed once for the whole package:

* Lie brackets of tangent fields use unprojected central differences,
  [W1, W2] = d_{W1(p)} W2 - d_{W2(p)} W1; the result is tangent up to
  finite-difference error.
* The Nijenhuis torsion of a (1,1) tensor G is
  [G, G](X, Y) = G^2 [X, Y] + [GX, GY] - G [GX, Y] - G [X, GY]
  (no 1/2 factor, brackets of the canonical extensions).
* "plain" 2-form normalisation: du(X, Y) = X u(Y) - Y u(X) - u([X, Y])
  and (a ^ b)(X, Y) = a(X) b(Y) - a(Y) b(X); the "half" normalisation
  divides both by two.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .connection import (
    FDConfig,
    TangentField,
    ambient_derivative,
    curve_point,
    extend_tangent_field,
    sigma_form,
)
from .hypersurface import HoloPolynomial, SurfacePoint
from .induced import InducedStructure, induced_structure
from .quatlin import QuaternionicStructure

__all__ = [
    "TensorSample",
    "ContactDiagnostic",
    "lie_bracket",
    "nijenhuis_torsion",
    "normality_tensors",
    "S_tensor",
    "T_tensor",
    "contact_metric_residual",
]

NIJENHUIS_CONVENTION = "[G,G](X,Y) = G^2[X,Y] + [GX,GY] - G[GX,Y] - G[X,GY]"
EXTERIOR_CONVENTIONS = {
    "plain": "du(X,Y) = X u(Y) - Y u(X) - u([X,Y]); (a^b)(X,Y) = a(X)b(Y) - a(Y)b(X)",
    "half": "du(X,Y) = (X u(Y) - Y u(X) - u([X,Y]))/2; (a^b)(X,Y) = (a(X)b(Y) - a(Y)b(X))/2",
}


def lie_bracket(
    Q: QuaternionicStructure,
    f: HoloPolynomial,
    sp: SurfacePoint,
    W1: TangentField,
    W2: TangentField,
    cfg: FDConfig,
) -> np.ndarray:
    """[W1, W2] at sp, differentiating each field along the other's value."""
    X1 = W1(sp)
    X2 = W2(sp)
    return ambient_derivative(Q, f, sp, X1, W2, cfg) - ambient_derivative(Q, f, sp, X2, W1, cfg)


def _image_field(Ja: np.ndarray, W: TangentField) -> TangentField:
    # q -> G(q) W(q) with G(q) = P_q Ja P_q
    return lambda q: q.projector @ (Ja @ (q.projector @ W(q)))


def _torsion(
    Q: QuaternionicStructure,
    f: HoloPolynomial,
    sp: SurfacePoint,
    Ja: np.ndarray,
    X: np.ndarray,
    Y: np.ndarray,
    cfg: FDConfig,
) -> np.ndarray:
    WX = extend_tangent_field(X)
    WY = extend_tangent_field(Y)
    GWX = _image_field(Ja, WX)
    GWY = _image_field(Ja, WY)
    G_here = sp.projector @ (Ja @ sp.projector)
    return (
        G_here @ (G_here @ lie_bracket(Q, f, sp, WX, WY, cfg))
        + lie_bracket(Q, f, sp, GWX, GWY, cfg)
        - G_here @ lie_bracket(Q, f, sp, GWX, WY, cfg)
        - G_here @ lie_bracket(Q, f, sp, WX, GWY, cfg)
    )


def nijenhuis_torsion(
    Q: QuaternionicStructure,
    f: HoloPolynomial,
    sp: SurfacePoint,
    which: str,
    X: np.ndarray,
    Y: np.ndarray,
    cfg: FDConfig,
) -> np.ndarray:
    """[G, G](X, Y) or [H, H](X, Y) for which in {"G", "H"}."""
    try:
        Ja = {"G": Q.J2, "H": Q.J3}[which]
    except KeyError:
        raise ValueError(f"which must be 'G' or 'H', got {which!r}") from None
    return _torsion(Q, f, sp, Ja, np.asarray(X, float), np.asarray(Y, float), cfg)


@dataclass(frozen=True)
class TensorSample:
    """S and T evaluated on one tangent pair, with the term breakdown."""

    base: SurfacePoint
    X: np.ndarray
    Y: np.ndarray
    S_val: np.ndarray
    T_val: np.ndarray
    aux: dict[str, np.ndarray | float]


def normality_tensors(
    Q: QuaternionicStructure,
    f: HoloPolynomial,
    sp: SurfacePoint,
    X: np.ndarray,
    Y: np.ndarray,
    cfg: FDConfig,
) -> TensorSample:
    """Assemble the normality tensors

        S(X,Y) = [G,G](X,Y) + 2g(X,GY)U - 2g(X,HY)V + 2v(Y)HX - 2v(X)HY
                 + sigma(GY)HX - sigma(GX)HY + sigma(X)GHY - sigma(Y)GHX,
        T(X,Y) = [H,H](X,Y) - 2g(X,GY)U + 2g(X,HY)V + 2u(Y)GX - 2u(X)GY
                 + sigma(HX)GY - sigma(HY)GX + sigma(X)GHY - sigma(Y)GHX.

    The sigma values are finite-difference samples of the vertical
    connection form along the listed directions.
    """
    X = np.asarray(X, float)
    Y = np.asarray(Y, float)
    S = induced_structure(Q, sp)
    GX, GY = S.G @ X, S.G @ Y
    HX, HY = S.H @ X, S.H @ Y
    GHX, GHY = S.G @ HX, S.G @ HY

    def sig(direction: np.ndarray) -> float:
        return sigma_form(Q, f, sp, direction, cfg)

    sigma = {
        "X": sig(X),
        "Y": sig(Y),
        "GX": sig(GX),
        "GY": sig(GY),
        "HX": sig(HX),
        "HY": sig(HY),
    }
    bracket_G = _torsion(Q, f, sp, Q.J2, X, Y, cfg)
    bracket_H = _torsion(Q, f, sp, Q.J3, X, Y, cfg)

    gXGY = float(X @ GY)
    gXHY = float(X @ HY)
    S_alg = (
        2.0 * gXGY * S.U
        - 2.0 * gXHY * S.V
        + 2.0 * S.v(Y) * HX
        - 2.0 * S.v(X) * HY
        + sigma["GY"] * HX
        - sigma["GX"] * HY
        + sigma["X"] * GHY
        - sigma["Y"] * GHX
    )
    T_alg = (
        -2.0 * gXGY * S.U
        + 2.0 * gXHY * S.V
        + 2.0 * S.u(Y) * GX
        - 2.0 * S.u(X) * GY
        + sigma["HX"] * GY
        - sigma["HY"] * GX
        + sigma["X"] * GHY
        - sigma["Y"] * GHX
    )
    aux: dict[str, np.ndarray | float] = {
        "bracket_G": bracket_G,
        "bracket_H": bracket_H,
        "S_algebraic": S_alg,
        "T_algebraic": T_alg,
    }
    aux.update({f"sigma_{k}": v for k, v in sigma.items()})
    return TensorSample(
        base=sp, X=X, Y=Y, S_val=bracket_G + S_alg, T_val=bracket_H + T_alg, aux=aux
    )


def S_tensor(Q, f, sp, X, Y, cfg: FDConfig) -> np.ndarray:
    return normality_tensors(Q, f, sp, X, Y, cfg).S_val


def T_tensor(Q, f, sp, X, Y, cfg: FDConfig) -> np.ndarray:
    return normality_tensors(Q, f, sp, X, Y, cfg).T_val


@dataclass(frozen=True)
class ContactDiagnostic:
    """Defect of the contact-metric compatibility conditions

        g(X, GY) = du(X,Y) + (sigma ^ v)(X,Y)
        g(X, HY) = dv(X,Y) - (sigma ^ u)(X,Y)

    under both 2-form normalisations.  Reported, never asserted: the
    induced structure carries no vanishing claim here.
    """

    res_u_plain: float
    res_v_plain: float
    res_u_half: float
    res_v_half: float

    def as_dict(self) -> dict[str, float]:
        return {
            "contact_u_plain": self.res_u_plain,
            "contact_v_plain": self.res_v_plain,
            "contact_u_half": self.res_u_half,
            "contact_v_half": self.res_v_half,
        }


def contact_metric_residual(
    Q: QuaternionicStructure,
    f: HoloPolynomial,
    sp: SurfacePoint,
    X: np.ndarray,
    Y: np.ndarray,
    cfg: FDConfig,
) -> ContactDiagnostic:
    """Evaluate both contact-metric defects on one tangent pair."""
    X = np.asarray(X, float)
    Y = np.asarray(Y, float)
    S = induced_structure(Q, sp)
    WX = extend_tangent_field(X)
    WY = extend_tangent_field(Y)

    def u_of(q: SurfacePoint, W: TangentField) -> float:
        return float((Q.J2 @ q.xi) @ W(q))

    def v_of(q: SurfacePoint, W: TangentField) -> float:
        return float((Q.J3 @ q.xi) @ W(q))

    # scalar derivatives X(u(W_Y)) etc. along the two coordinate curves
    def d_scalar(direction: np.ndarray, phi) -> float:
        plus = curve_point(Q, f, sp, direction, +cfg.h, cfg)
        minus = curve_point(Q, f, sp, direction, -cfg.h, cfg)
        return (phi(plus) - phi(minus)) / (2.0 * cfg.h)

    bracket = lie_bracket(Q, f, sp, WX, WY, cfg)
    du = d_scalar(X, lambda q: u_of(q, WY)) - d_scalar(Y, lambda q: u_of(q, WX)) - S.u(bracket)
    dv = d_scalar(X, lambda q: v_of(q, WY)) - d_scalar(Y, lambda q: v_of(q, WX)) - S.v(bracket)

    sigma_X = sigma_form(Q, f, sp, X, cfg)
    sigma_Y = sigma_form(Q, f, sp, Y, cfg)
    wedge_sv = sigma_X * S.v(Y) - sigma_Y * S.v(X)
    wedge_su = sigma_X * S.u(Y) - sigma_Y * S.u(X)
    gXGY = float(X @ (S.G @ Y))
    gXHY = float(X @ (S.H @ Y))

    return ContactDiagnostic(
        res_u_plain=abs(gXGY - du - wedge_sv),
        res_v_plain=abs(gXHY - dv + wedge_su),
        res_u_half=abs(gXGY - du / 2.0 - wedge_sv / 2.0),
        res_v_half=abs(gXHY - dv / 2.0 + wedge_su / 2.0),
    )
