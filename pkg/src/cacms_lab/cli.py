"""Command line driver: run a scene file and emit a residual report.

    cacms-lab verify <scene> [--format json|csv] [--out PATH]
                     [--suite NAME]... [--basis-sweep]
    cacms-lab convergence <scene> [--format json|csv] [--out PATH]

`verify` exits 0 when every asserted residual passes, 1 on any
failure, 2 on infrastructure errors (unreadable or invalid scene,
singular point, projection that does not converge, degenerate frame).
`convergence` needs at least two step sizes in the scene and restricts
the run to the suites that produce Richardson ratios.

The environment variable CACMS_SEED, when set, overrides the scene's
rng_seed.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .connection import S_SIGN_CONVENTION
from .hypersurface import NonConvergence, SingularPoint, project_to_surface
from .induced import FrameDegeneracy
from .normality import EXTERIOR_CONVENTIONS, NIJENHUIS_CONVENTION
from .quatlin import make_structure
from .report import PointReport, ResidualReport, emit
from .scene import SUITE_NAMES, Scene, SceneError, parse_scene
from .suites import H_DEPENDENT, make_draws, make_ratios, run_algebraic_suite, run_suite_at_h

__all__ = ["run", "main", "entry"]

CONVENTIONS = {
    "weingarten": S_SIGN_CONVENTION,
    "nijenhuis": NIJENHUIS_CONVENTION,
    "exterior_plain": EXTERIOR_CONVENTIONS["plain"],
    "exterior_half": EXTERIOR_CONVENTIONS["half"],
}


def run(scene: Scene) -> ResidualReport:
    """Execute every requested suite at every seed of a scene."""
    Q = make_structure(scene.m)
    f = scene.polynomial
    points = []
    for idx, seed in enumerate(scene.seeds):
        pt = PointReport(index=idx, seed=[float(x) for x in seed])
        try:
            sp = project_to_surface(Q, f, np.asarray(seed, float), scene.newton_tol, scene.max_iter)
            pt.point = [float(x) for x in sp.p]
            pt.f_residual = float(sp.f_residual)
            for suite in scene.suites:
                if suite in H_DEPENDENT:
                    draws = make_draws(Q, sp, scene, idx, suite)
                    per_h = [
                        run_suite_at_h(Q, f, sp, scene, suite, draws, h)
                        for h in scene.h_values
                    ]
                    pt.suites.extend(per_h)
                    pt.ratios.extend(make_ratios(suite, per_h))
                else:
                    pt.suites.append(run_algebraic_suite(Q, f, sp, scene, idx, suite))
        except (SingularPoint, NonConvergence, FrameDegeneracy) as exc:
            pt.error = f"{type(exc).__name__}: {exc}"
        points.append(pt)
    return ResidualReport(
        scene_hash=scene.text_hash,
        rng_seed=scene.rng_seed,
        conventions=dict(CONVENTIONS),
        points=points,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cacms-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("verify", "run the scene's suites and report residuals"),
        ("convergence", "run the step-size study; needs >= 2 h_values"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("scene", type=Path, help="scene file")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", type=Path, default=None, help="write the report here")
        if name == "verify":
            p.add_argument(
                "--suite",
                action="append",
                metavar="NAME",
                help=f"restrict to this suite (repeatable); one of {', '.join(SUITE_NAMES)}",
            )
            p.add_argument(
                "--basis-sweep",
                action="store_true",
                help="sweep the projected coordinate basis in the axioms suite",
            )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        text = args.scene.read_text()
    except OSError as exc:
        print(f"cacms-lab: cannot read {args.scene}: {exc}", file=sys.stderr)
        return 2
    try:
        scene = parse_scene(text)
    except SceneError as exc:
        print(f"cacms-lab: {args.scene}: {exc}", file=sys.stderr)
        return 2

    env_seed = os.environ.get("CACMS_SEED")
    if env_seed is not None:
        try:
            scene = replace(scene, rng_seed=int(env_seed))
        except ValueError:
            print(f"cacms-lab: CACMS_SEED={env_seed!r} is not an integer", file=sys.stderr)
            return 2
        if scene.rng_seed < 0:
            print("cacms-lab: CACMS_SEED must be nonnegative", file=sys.stderr)
            return 2

    if args.command == "verify":
        if args.suite:
            bad = [s for s in args.suite if s not in SUITE_NAMES]
            if bad:
                print(f"cacms-lab: unknown suite(s): {', '.join(bad)}", file=sys.stderr)
                return 2
            scene = replace(scene, suites=tuple(s for s in SUITE_NAMES if s in args.suite))
        if args.basis_sweep:
            scene = replace(scene, basis_sweep=True)
    else:  # convergence
        if len(scene.h_values) < 2:
            print(
                "cacms-lab: convergence needs at least two h_values in the scene",
                file=sys.stderr,
            )
            return 2
        from .suites import RATIO_NAMES

        keep = tuple(s for s in scene.suites if s in H_DEPENDENT and RATIO_NAMES[s])
        if not keep:
            print("cacms-lab: no ratio-producing suites selected by the scene", file=sys.stderr)
            return 2
        scene = replace(scene, suites=keep)

    report = run(scene)
    payload = emit(report, args.format)
    if args.out is not None:
        args.out.write_bytes(payload)
    else:
        sys.stdout.write(payload.decode())
    return report.exit_code


def entry() -> None:
    sys.exit(main())
