"""Smoke test for the minsurf Python extension.

Build and install first, e.g.:
    cd crates/python && maturin build --release -o dist && pip install dist/minsurf-*.whl
"""

import json
import math
import os
import tempfile

import minsurf


def main():
    names = [f["name"] for f in json.loads(minsurf.families())["families"]]
    assert "new-surface" in names and len(names) == 9, names

    s = minsurf.Surface.family("new-surface", {"a": "0", "b": "2"})
    assert s.space == "R3"
    assert json.loads(s.verify())["overall"] is True

    profile = json.loads(s.analyze())["maps"][0]["profile"]
    assert profile["nu"] == "5/2" and profile["omitted"] == 2, profile

    audit = json.loads(s.audit())
    assert audit["sharp"] and not audit["contradiction"]

    curv = json.loads(s.curvature())
    assert curv["total_curvature_pi_multiple"] == -16
    assert abs(curv["total_curvature"] + 16 * math.pi) < 1e-12
    assert curv["numeric_relative_error"] < 1e-3

    assert minsurf.Surface.from_json(s.to_json()) == s

    voss = json.loads(minsurf.Surface.family("voss").verify())
    assert voss["overall"] is False and voss["periods"]["real_max"] > 0

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "catenoid.obj")
        mesh = json.loads(minsurf.Surface.family("catenoid").mesh(grid=(32, 32), path=path))
        assert mesh["vertices"] == 1024 and mesh["closure_max"] < 1e-8
        with open(path) as f:
            assert sum(1 for line in f if line.startswith("v ")) == 1024

    z3 = json.loads(minsurf.ramification(["0", "0", "0", "1"], ["1"], ["inf"]))
    assert z3["nu"] == "5/3" and z3["omitted"] == 1, z3

    try:
        minsurf.Surface.family("hkw-r4", {"a": "1", "b": "2"})
    except ValueError as e:
        assert "(a+1)(b+1)=8" in str(e)
    else:
        raise AssertionError("constraint violation not raised")

    print("minsurf", minsurf.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
