"""Per-point residual suites behind the command line driver.

Random draws are derived from (scene rng_seed, point index, suite
index), so every suite sees the same vectors at every step size and a
rerun of the same scene reproduces the report byte for byte.
Tolerances for the first-derivative suites follow the truncation
model: the base tolerance holds at the reference step 1e-3 and scales
with (h / 1e-3)^2 for coarser steps.
"""
from __future__ import annotations

import numpy as np

from .connection import (
    FDConfig,
    connection_form_residual,
    skew_derivative_residual,
    structure_derivative_residual,
)
from .hypersurface import HoloPolynomial, SurfacePoint, random_tangent
from .induced import adapted_frame, gauge_rotate, induced_structure, structure_residuals
from .normality import contact_metric_residual, normality_tensors
from .quatlin import QuaternionicStructure
from .report import RatioEntry, ResidualEntry, SuiteResult
from .scene import SUITE_NAMES, Scene

__all__ = [
    "H_DEPENDENT",
    "DEFAULT_TOLERANCES",
    "run_algebraic_suite",
    "make_draws",
    "run_suite_at_h",
    "make_ratios",
]

SUITE_ORDER = {name: i for i, name in enumerate(SUITE_NAMES)}
H_DEPENDENT = ("theorem41", "prop42", "prop43", "normality", "contact")

DEFAULT_TOLERANCES = {
    "axioms": 1e-10,
    "gauge": 1e-10,
    "gauge_composition": 1e-12,
    "frame": 1e-10,
    "theorem41": 1e-5,
    "prop42": 1e-5,
    "prop43": 1e-5,
}

H_REF = 1e-3

# entries that measure an error shrinking like h^2, eligible for ratios
RATIO_NAMES = {
    "theorem41": ("nabla_G_formula", "nabla_H_formula"),
    "prop42": ("s_form_consistency",),
    "prop43": ("nabla_G_skew", "nabla_H_skew"),
    "normality": ("S_tangency", "T_tangency", "S_antisymmetry", "T_antisymmetry"),
    "contact": (),
}

RATIO_FLOOR = 1e-8  # below this the coarse residual is treated as noise


def _tol(scene: Scene, name: str) -> float:
    return scene.tolerances.get(name, DEFAULT_TOLERANCES[name])


def _scaled_tol(scene: Scene, name: str, h: float) -> float:
    return _tol(scene, name) * max(1.0, (h / H_REF) ** 2)


def _rng(scene: Scene, point_index: int, suite: str) -> np.random.Generator:
    return np.random.default_rng([scene.rng_seed, point_index, SUITE_ORDER[suite]])


def _int_seed(scene: Scene, point_index: int, suite: str) -> int:
    ss = np.random.SeedSequence([scene.rng_seed, point_index, SUITE_ORDER[suite]])
    return int(ss.generate_state(1)[0])


def _basis_vectors(sp: SurfacePoint) -> np.ndarray:
    rows = []
    for i in range(sp.dim):
        w = sp.projector[:, i].copy()
        n = float(np.linalg.norm(w))
        if n > 1e-8:
            rows.append(w / n)
    return np.array(rows)


def _run_axioms(Q, f, sp, scene: Scene, point_index: int) -> SuiteResult:
    S = induced_structure(Q, sp)
    vectors = _basis_vectors(sp) if scene.basis_sweep else None
    return structure_residuals(
        S,
        trials=scene.trials,
        rng_seed=_int_seed(scene, point_index, "axioms"),
        tol=_tol(scene, "axioms"),
        vectors=vectors,
    )


def _run_gauge(Q, f, sp, scene: Scene, point_index: int) -> SuiteResult:
    tol = _tol(scene, "gauge")
    ctol = _tol(scene, "gauge_composition")
    S = induced_structure(Q, sp)
    seed = _int_seed(scene, point_index, "gauge")
    entries = []
    for a, b, label in ((1.0, 0.0, "a1_b0"), (0.0, 1.0, "a0_b1"), (0.6, 0.8, "a0.6_b0.8")):
        rotated = gauge_rotate(S, a, b)
        sub = structure_residuals(rotated, trials=scene.trials, rng_seed=seed, tol=tol)
        entries.append(ResidualEntry(name=f"axioms_{label}", value=sub.max_residual, tol=tol))

    def block_diff(R, parts) -> float:
        return max(float(np.max(np.abs(got - want))) for got, want in parts)

    identity = gauge_rotate(S, 1.0, 0.0)
    entries.append(
        ResidualEntry(
            name="identity_exact",
            value=block_diff(
                identity,
                [(identity.G, S.G), (identity.H, S.H), (identity.U, S.U), (identity.V, S.V)],
            ),
            tol=ctol,
        )
    )
    quarter = gauge_rotate(S, 0.0, 1.0)
    entries.append(
        ResidualEntry(
            name="quarter_turn_exact",
            value=block_diff(
                quarter,
                [(quarter.G, -S.H), (quarter.H, S.G), (quarter.U, -S.V), (quarter.V, S.U)],
            ),
            tol=ctol,
        )
    )
    a1, b1 = 0.6, 0.8
    a2, b2 = -0.28, 0.96
    twice = gauge_rotate(gauge_rotate(S, a1, b1), a2, b2)
    once = gauge_rotate(S, a1 * a2 - b1 * b2, a1 * b2 + a2 * b1)
    entries.append(
        ResidualEntry(
            name="composition",
            value=block_diff(twice, [(twice.G, once.G), (twice.H, once.H), (twice.U, once.U), (twice.V, once.V)]),
            tol=ctol,
        )
    )
    return SuiteResult(suite="gauge", h=None, entries=entries)


def _run_frame(Q, f, sp, scene: Scene, point_index: int) -> SuiteResult:
    tol = _tol(scene, "frame")
    S = induced_structure(Q, sp)
    frame = adapted_frame(S, sp, rng_seed=_int_seed(scene, point_index, "frame"))
    gram = frame.gram()
    gram_defect = float(np.max(np.abs(gram - np.eye(len(gram)))))
    quad = 0.0
    for i in range(frame.n):
        base = frame.vectors[4 * i]
        for offset, T in ((1, S.J), (2, S.G), (3, S.H)):
            quad = max(quad, float(np.max(np.abs(frame.vectors[4 * i + offset] - T @ base))))
    quad = max(
        quad,
        float(np.max(np.abs(frame.vectors[-2] - S.U))),
        float(np.max(np.abs(frame.vectors[-1] - S.V))),
    )
    return SuiteResult(
        suite="frame",
        h=None,
        entries=[
            ResidualEntry(name="gram_defect", value=gram_defect, tol=tol),
            ResidualEntry(name="quadruple_defect", value=quad, tol=1e-12),
            ResidualEntry(name="reorthonormalization", value=frame.correction, asserted=False),
        ],
    )


def run_algebraic_suite(Q, f, sp, scene: Scene, point_index: int, suite: str) -> SuiteResult:
    runner = {"axioms": _run_axioms, "gauge": _run_gauge, "frame": _run_frame}[suite]
    return runner(Q, f, sp, scene, point_index)


def make_draws(Q, sp, scene: Scene, point_index: int, suite: str):
    """Draw the tangent vectors for one h-dependent suite, shared across h."""
    rng = _rng(scene, point_index, suite)
    k = scene.trials
    if suite == "theorem41" or suite == "contact":
        return [(random_tangent(sp, rng), random_tangent(sp, rng)) for _ in range(k)]
    if suite == "prop42":
        return [random_tangent(sp, rng) for _ in range(k)]
    if suite == "prop43":
        return [
            (random_tangent(sp, rng), random_tangent(sp, rng), random_tangent(sp, rng))
            for _ in range(k)
        ]
    if suite == "normality":
        return [
            (random_tangent(sp, rng), random_tangent(sp, rng))
            for _ in range(max(1, k // 4))
        ]
    raise ValueError(f"suite {suite!r} takes no step size")


def run_suite_at_h(
    Q: QuaternionicStructure,
    f: HoloPolynomial,
    sp: SurfacePoint,
    scene: Scene,
    suite: str,
    draws,
    h: float,
) -> SuiteResult:
    cfg = FDConfig(h=h, newton_tol=scene.newton_tol, max_iter=scene.max_iter)
    if suite == "theorem41":
        res_G = res_H = 0.0
        for X, Y in draws:
            rg, rh = structure_derivative_residual(Q, f, sp, X, Y, cfg)
            res_G = max(res_G, rg)
            res_H = max(res_H, rh)
        tol = _scaled_tol(scene, suite, h)
        entries = [
            ResidualEntry(name="nabla_G_formula", value=res_G, tol=tol),
            ResidualEntry(name="nabla_H_formula", value=res_H, tol=tol),
        ]
    elif suite == "prop42":
        worst = max(connection_form_residual(Q, f, sp, X, cfg) for X in draws)
        entries = [
            ResidualEntry(name="s_form_consistency", value=worst, tol=_scaled_tol(scene, suite, h))
        ]
    elif suite == "prop43":
        res_G = res_H = 0.0
        for X, Y, Z in draws:
            rg, rh = skew_derivative_residual(Q, f, sp, X, Y, Z, cfg)
            res_G = max(res_G, rg)
            res_H = max(res_H, rh)
        tol = _scaled_tol(scene, suite, h)
        entries = [
            ResidualEntry(name="nabla_G_skew", value=res_G, tol=tol),
            ResidualEntry(name="nabla_H_skew", value=res_H, tol=tol),
        ]
    elif suite == "normality":
        P = sp.projector
        dim = sp.dim
        off = np.eye(dim) - P
        vals = {k: 0.0 for k in (
            "S_max_abs", "T_max_abs", "S_tangency", "T_tangency",
            "S_antisymmetry", "T_antisymmetry",
        )}
        for X, Y in draws:
            ts = normality_tensors(Q, f, sp, X, Y, cfg)
            st = normality_tensors(Q, f, sp, Y, X, cfg)
            vals["S_max_abs"] = max(vals["S_max_abs"], float(np.max(np.abs(ts.S_val))))
            vals["T_max_abs"] = max(vals["T_max_abs"], float(np.max(np.abs(ts.T_val))))
            vals["S_tangency"] = max(vals["S_tangency"], float(np.max(np.abs(off @ ts.S_val))))
            vals["T_tangency"] = max(vals["T_tangency"], float(np.max(np.abs(off @ ts.T_val))))
            vals["S_antisymmetry"] = max(
                vals["S_antisymmetry"], float(np.max(np.abs(ts.S_val + st.S_val)))
            )
            vals["T_antisymmetry"] = max(
                vals["T_antisymmetry"], float(np.max(np.abs(ts.T_val + st.T_val)))
            )
        entries = [
            ResidualEntry(name=name, value=value, asserted=False)
            for name, value in vals.items()
        ]
    elif suite == "contact":
        worst = {"contact_u_plain": 0.0, "contact_v_plain": 0.0,
                 "contact_u_half": 0.0, "contact_v_half": 0.0}
        for X, Y in draws:
            diag = contact_metric_residual(Q, f, sp, X, Y, cfg)
            for name, value in diag.as_dict().items():
                worst[name] = max(worst[name], value)
        entries = [
            ResidualEntry(
                name=name,
                value=value,
                asserted=False,
                convention="half" if name.endswith("half") else "plain",
            )
            for name, value in worst.items()
        ]
    else:
        raise ValueError(f"suite {suite!r} takes no step size")
    return SuiteResult(suite=suite, h=h, entries=entries)


def make_ratios(suite: str, per_h: list[SuiteResult]) -> list[RatioEntry]:
    """Richardson ratios between consecutive step sizes, coarse over fine."""
    out = []
    for coarse_res, fine_res in zip(per_h, per_h[1:]):
        for name in RATIO_NAMES[suite]:
            coarse = coarse_res.value_of(name)
            fine = fine_res.value_of(name)
            ratio = coarse / fine if (coarse > RATIO_FLOOR and fine > 0.0) else None
            out.append(
                RatioEntry(
                    suite=suite,
                    name=name,
                    h_coarse=coarse_res.h,
                    h_fine=fine_res.h,
                    coarse=coarse,
                    fine=fine,
                    ratio=ratio,
                )
            )
    return out
