import json
import math
import os
import subprocess
import sys

import pytest

module_dir = os.environ.get("SLAPMAPS_MODULE_DIR")
if module_dir:
    sys.path.insert(0, module_dir)

sm = pytest.importorskip("_slapmaps")


def test_polygon_roundtrip():
    P = sm.regular_polygon(5)
    assert P.sides == 5
    assert P.perimeter == pytest.approx(5.0)
    Q = sm.polygon_from_json(P.to_json())
    assert Q.perimeter == pytest.approx(P.perimeter)


def test_slap_map_extraction():
    P = sm.regular_polygon(7)
    f = sm.extract_slap_map(P)
    assert f.expanding
    assert f.domain_hi == pytest.approx(P.perimeter)


def test_parallel_facing_detection():
    square = sm.build_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert sm.has_parallel_facing(square)
    assert not sm.has_parallel_facing(sm.regular_polygon(5))


def test_pentagon_analysis():
    rep = sm.analyze(sm.extract_slap_map(sm.regular_polygon(5)), 1000)
    assert len(rep.components) == 1
    assert rep.components[0].period == 2
    assert rep.refinement_stable


def test_predictions():
    assert sm.predict_acips(7) == (7, 4)
    assert sm.m_of_polygon(9) == 3
    assert sm.predicted_mixing_components(1.0 / math.cos(math.pi / 11)) == 16


def test_tower():
    m, intervals = sm.renormalization_tower(math.sqrt(5.0) - 1.0)
    assert m == 1
    e = (3.0 - math.sqrt(5.0)) / 2.0
    assert intervals[1][0] == pytest.approx(e, abs=1e-12)


def test_kite_root():
    alpha, beta, residual = sm.newton_solve(1.0, 0.5)
    assert alpha == pytest.approx(1.0212641074975735, abs=1e-10)
    assert beta == pytest.approx(0.5207195027145912, abs=1e-10)
    assert residual < 1e-12


def test_errors_are_typed():
    with pytest.raises(sm.SlapmapError):
        sm.build_polygon([(0, 0), (1, 0)])


@pytest.mark.skipif("SLAPMAP_CLI" not in os.environ, reason="cli path not set")
def test_cli_regular():
    out = subprocess.run(
        [os.environ["SLAPMAP_CLI"], "regular", "5", "--bins", "800"],
        capture_output=True, text=True, check=True)
    report = json.loads(out.stdout)
    assert report["match"] is True
    assert report["measured"] == {"ergodic": 1, "mixing": 2}
