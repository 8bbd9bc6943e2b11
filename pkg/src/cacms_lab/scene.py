"""Line-oriented scene files describing one verification run.

Grammar: one ``key = value`` pair per line; blank lines and text after
``#`` are ignored.  Keys:

    m = 2                               quaternionic dimension, ambient R^{4m}
    term = RE IM : E1 E2 ... E2m        polynomial term, repeatable
    seed = X1 X2 ... X4m                ambient start point, repeatable
    h_values = 1e-3 5e-4                FD step sizes, strictly descending
    rng_seed = 1234                     nonnegative; CACMS_SEED overrides
    trials = 20                         random tangent draws per suite
    suites = axioms gauge ...           subset of the suite names below
    basis_sweep = true                  sweep the projected basis instead of
                                        random draws in the axioms suite
    newton_tol = 1e-12                  projection tolerance (<= min(h)^3)
    max_iter = 50                       projection iteration budget
    tol.NAME = 1e-10                    override one suite tolerance

``m`` and at least one ``term`` and one ``seed`` are required; every
other key has the default shown.  Except for ``term`` and ``seed``,
repeating a key is an error, as is any unknown key.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .hypersurface import HoloPolynomial

__all__ = ["Scene", "SceneError", "parse_scene", "SUITE_NAMES"]

SUITE_NAMES = (
    "axioms",
    "gauge",
    "frame",
    "theorem41",
    "prop42",
    "prop43",
    "normality",
    "contact",
)

_TOL_NAMES = SUITE_NAMES + ("gauge_composition",)


class SceneError(ValueError):
    """Scene text rejected; `line` is the 1-based offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, eq=False)
class Scene:
    m: int
    polynomial: HoloPolynomial
    seeds: tuple[np.ndarray, ...]
    h_values: tuple[float, ...] = (1e-3,)
    rng_seed: int = 0
    trials: int = 20
    suites: tuple[str, ...] = SUITE_NAMES
    basis_sweep: bool = False
    newton_tol: float = 1e-12
    max_iter: int = 50
    tolerances: dict[str, float] = field(default_factory=dict)
    text_hash: str = ""


def _floats(raw: str, line: int, what: str) -> list[float]:
    try:
        return [float(tok) for tok in raw.split()]
    except ValueError:
        raise SceneError(line, f"could not parse {what} {raw!r} as numbers") from None


def _int(raw: str, line: int, key: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise SceneError(line, f"could not parse {key} = {raw!r} as an integer") from None


def parse_scene(text: str) -> Scene:
    """Parse and validate scene text; raises SceneError with a line number."""
    pairs: list[tuple[int, str, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise SceneError(line_no, f"expected 'key = value', got {stripped!r}")
        key, value = stripped.split("=", 1)
        pairs.append((line_no, key.strip(), value.strip()))

    known_single = {
        "m",
        "h_values",
        "rng_seed",
        "trials",
        "suites",
        "basis_sweep",
        "newton_tol",
        "max_iter",
    }
    seen: dict[str, int] = {}
    for line_no, key, _ in pairs:
        if key in ("term", "seed"):
            continue
        if not (key in known_single or key.startswith("tol.")):
            raise SceneError(line_no, f"unknown key {key!r}")
        if key in seen:
            raise SceneError(line_no, f"duplicate key {key!r} (first on line {seen[key]})")
        seen[key] = line_no

    if "m" not in seen:
        raise SceneError(len(text.splitlines()) or 1, "missing required key 'm'")
    m_line = seen["m"]
    m_raw = next(v for ln, k, v in pairs if k == "m")
    m = _int(m_raw, m_line, "m")
    if m < 1:
        raise SceneError(m_line, f"m must be a positive integer, got {m}")

    terms: dict[tuple[int, ...], complex] = {}
    seeds: list[np.ndarray] = []
    kw: dict[str, object] = {}
    tolerances: dict[str, float] = {}

    for line_no, key, value in pairs:
        if key == "term":
            if ":" not in value:
                raise SceneError(line_no, f"term {value!r} is missing the ':' separator")
            coeff_raw, exps_raw = value.split(":", 1)
            coeff = _floats(coeff_raw, line_no, "term coefficient")
            if len(coeff) != 2:
                raise SceneError(
                    line_no, f"term coefficient needs two numbers (re im), got {len(coeff)}"
                )
            exps = _floats(exps_raw, line_no, "term exponents")
            if len(exps) != 2 * m:
                raise SceneError(
                    line_no,
                    f"term {value!r} has {len(exps)} exponents, expected {2 * m} for m = {m}",
                )
            if any(e != int(e) or e < 0 for e in exps):
                raise SceneError(line_no, f"term {value!r} has a non-integer or negative exponent")
            tup = tuple(int(e) for e in exps)
            terms[tup] = terms.get(tup, 0) + complex(coeff[0], coeff[1])
        elif key == "seed":
            vals = _floats(value, line_no, "seed")
            if len(vals) != 4 * m:
                raise SceneError(
                    line_no, f"seed has {len(vals)} coordinates, expected {4 * m} for m = {m}"
                )
            seeds.append(np.array(vals))
        elif key == "m":
            pass
        elif key == "h_values":
            hs = _floats(value, line_no, "h_values")
            if not hs:
                raise SceneError(line_no, "h_values is empty")
            if any(not 0.0 < h < 0.1 for h in hs):
                raise SceneError(line_no, "every h must lie in (0, 0.1)")
            if any(a <= b for a, b in zip(hs, hs[1:])):
                raise SceneError(line_no, "h_values must be strictly descending")
            kw["h_values"] = tuple(hs)
        elif key == "rng_seed":
            v = _int(value, line_no, key)
            if v < 0:
                raise SceneError(line_no, "rng_seed must be nonnegative")
            kw["rng_seed"] = v
        elif key == "trials":
            v = _int(value, line_no, key)
            if v < 1:
                raise SceneError(line_no, "trials must be at least 1")
            kw["trials"] = v
        elif key == "max_iter":
            v = _int(value, line_no, key)
            if v < 1:
                raise SceneError(line_no, "max_iter must be at least 1")
            kw["max_iter"] = v
        elif key == "newton_tol":
            try:
                kw["newton_tol"] = float(value)
            except ValueError:
                raise SceneError(line_no, f"could not parse newton_tol = {value!r}") from None
        elif key == "suites":
            names = value.split()
            if not names:
                raise SceneError(line_no, "suites is empty")
            for name in names:
                if name not in SUITE_NAMES:
                    raise SceneError(
                        line_no,
                        f"unknown suite {name!r} (known: {', '.join(SUITE_NAMES)})",
                    )
            if len(set(names)) != len(names):
                raise SceneError(line_no, "suites lists a name twice")
            kw["suites"] = tuple(s for s in SUITE_NAMES if s in names)
        elif key == "basis_sweep":
            low = value.lower()
            if low not in ("true", "false"):
                raise SceneError(line_no, f"basis_sweep must be true or false, got {value!r}")
            kw["basis_sweep"] = low == "true"
        elif key.startswith("tol."):
            name = key[4:]
            if name not in _TOL_NAMES:
                raise SceneError(
                    line_no, f"unknown tolerance target {name!r} (known: {', '.join(_TOL_NAMES)})"
                )
            try:
                tolerances[name] = float(value)
            except ValueError:
                raise SceneError(line_no, f"could not parse {key} = {value!r}") from None

    if not terms:
        raise SceneError(m_line, "scene defines no polynomial terms")
    if not seeds:
        raise SceneError(m_line, "scene defines no seeds")
    try:
        poly = HoloPolynomial(num_vars=2 * m, terms=terms)
    except ValueError as exc:
        raise SceneError(m_line, f"invalid polynomial: {exc}") from None

    h_values = kw.get("h_values", (1e-3,))
    newton_tol = float(kw.get("newton_tol", 1e-12))
    h_min = min(h_values)
    if newton_tol > h_min**3:
        raise SceneError(
            seen.get("newton_tol", m_line),
            f"newton_tol = {newton_tol:.1e} exceeds min(h)^3 = {h_min**3:.1e}",
        )

    return Scene(
        m=m,
        polynomial=poly,
        seeds=tuple(seeds),
        tolerances=tolerances,
        text_hash=hashlib.sha256(text.encode()).hexdigest(),
        **{k: v for k, v in kw.items() if k != "newton_tol"},
        newton_tol=newton_tol,
    )
