"""Scene grammar: parsing, validation, defaults and the text hash."""
import numpy as np
import pytest

from cacms_lab import Scene, SceneError, parse_scene
from cacms_lab.scene import SUITE_NAMES

MINIMAL = """
m = 1
term = 1 0 : 1 0
seed = 0.1 0.2 0.3 0.4
"""


def test_minimal_scene_defaults():
    sc = parse_scene(MINIMAL)
    assert sc.m == 1
    assert sc.polynomial.num_vars == 2
    assert len(sc.seeds) == 1
    assert sc.h_values == (1e-3,)
    assert sc.rng_seed == 0
    assert sc.trials == 20
    assert sc.suites == SUITE_NAMES
    assert sc.basis_sweep is False
    assert sc.newton_tol == 1e-12
    assert sc.max_iter == 50
    assert sc.tolerances == {}
    assert len(sc.text_hash) == 64


def test_full_scene_roundtrip():
    sc = parse_scene(
        """
        # quadric with everything customised
        m = 2
        term = 1 0 : 2 0 0 0
        term = 1 0 : 0 2 0 0
        term = -1 0 : 0 0 0 0
        seed = 1 0 0 0 0 0 0 0   # comment after the value
        seed = 0 0 1 0 0 0 0 0
        h_values = 2e-3 1e-3 5e-4
        rng_seed = 99
        trials = 7
        suites = contact axioms theorem41
        basis_sweep = true
        newton_tol = 1e-13
        max_iter = 11
        tol.axioms = 1e-9
        tol.gauge_composition = 1e-11
        """
    )
    assert sc.m == 2
    assert len(sc.polynomial.terms) == 3
    assert len(sc.seeds) == 2
    assert sc.h_values == (2e-3, 1e-3, 5e-4)
    assert sc.rng_seed == 99
    assert sc.trials == 7
    # suites come back in canonical order regardless of listing order
    assert sc.suites == ("axioms", "theorem41", "contact")
    assert sc.basis_sweep is True
    assert sc.newton_tol == 1e-13
    assert sc.max_iter == 11
    assert sc.tolerances == {"axioms": 1e-9, "gauge_composition": 1e-11}


def test_coefficients_merge_and_go_complex():
    sc = parse_scene(
        """
        m = 1
        term = 1 0.5 : 2 0
        term = 0 0.5 : 2 0
        seed = 1 0 0 0
        """
    )
    assert sc.polynomial.terms[(2, 0)] == 1 + 1j


def test_hash_tracks_text():
    a = parse_scene(MINIMAL)
    b = parse_scene(MINIMAL)
    c = parse_scene(MINIMAL + "\ntrials = 5\n")
    assert a.text_hash == b.text_hash
    assert a.text_hash != c.text_hash


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("m = 1\nwibble = 3\n", 2, "unknown key"),
        ("m = 1\nm = 2\nterm = 1 0 : 1 0\nseed = 0 0 0 0\n", 2, "duplicate"),
        ("m = x\n", 1, "integer"),
        ("m = 0\n", 1, "positive"),
        ("term = 1 0 : 1 0\nseed = 0 0 0 0\n", 2, "missing required key 'm'"),
        ("m = 1\nterm = 1 0 1 0\nseed = 0 0 0 0\n", 2, "':'"),
        ("m = 1\nterm = 1 : 1 0\nseed = 0 0 0 0\n", 2, "two numbers"),
        ("m = 1\nterm = 1 0 : 1 0 0\nseed = 0 0 0 0\n", 2, "expected 2"),
        ("m = 1\nterm = 1 0 : -1 2\nseed = 0 0 0 0\n", 2, "negative"),
        ("m = 1\nterm = 1 0 : 0.5 0\nseed = 0 0 0 0\n", 2, "non-integer"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0\n", 3, "expected 4"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = a b c d\n", 3, "as numbers"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\nh_values = 1e-3 1e-3\n", 4, "descending"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\nh_values = 0.5\n", 4, "(0, 0.1)"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\nh_values =\n", 4, "empty"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\nrng_seed = -1\n", 4, "nonnegative"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\ntrials = 0\n", 4, "at least 1"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\nmax_iter = 0\n", 4, "at least 1"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\nsuites = axioms axioms\n", 4, "twice"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\nsuites = banana\n", 4, "unknown suite"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\nbasis_sweep = maybe\n", 4, "true or false"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\ntol.banana = 1e-9\n", 4, "tolerance target"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\nnewton_tol = 1e-6\n", 4, "min(h)^3"),
        ("m = 1\nterm = 1 0 : 1 0\nseed = 0 0 0 0\nnonsense line\n", 4, "key = value"),
        ("m = 1\nseed = 0 0 0 0\n", 1, "no polynomial terms"),
        ("m = 1\nterm = 1 0 : 1 0\n", 1, "no seeds"),
        ("m = 1\nterm = 0 0 : 1 0\nseed = 0 0 0 0\n", 1, "invalid polynomial"),
    ],
)
def test_rejections_carry_line_numbers(text, line, fragment):
    with pytest.raises(SceneError) as err:
        parse_scene(text)
    assert err.value.line == line
    assert fragment in str(err.value)


def test_seeds_are_arrays():
    sc = parse_scene(MINIMAL)
    assert isinstance(sc.seeds[0], np.ndarray)
    assert sc.seeds[0].shape == (4,)


def test_shipped_scenes_parse():
    import pathlib

    root = pathlib.Path(__file__).resolve().parent.parent / "scenes"
    for name in ("hyperplane.scene", "quadric.scene"):
        sc = parse_scene((root / name).read_text())
        assert sc.m == 2
        assert len(sc.seeds) == 5
        assert sc.h_values == (1e-3, 5e-4)
        assert sc.suites == SUITE_NAMES
