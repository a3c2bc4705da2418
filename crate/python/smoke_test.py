"""Smoke test for the pbconic Python extension.

Build and install it first:
    pip install -e crates/python --no-build-isolation
then run:
    python3 python/smoke_test.py
"""

import math
import pathlib

import pbconic

SYSTEMS = pathlib.Path(__file__).resolve().parent.parent / "systems"


def main():
    quad = pbconic.System.from_file(SYSTEMS / "quad.sys", {"d": "1/10"})
    assert quad.degree == 2
    assert quad.params == {"d": "1/10"}

    family = quad.glue(axis="y")
    inner = family.conic("-1/11")
    assert inner.kind == "Ellipse"
    assert abs(inner(0.0, -1 / 11)) < 1e-12

    verdict = family.certify("-1/11")
    assert verdict["schema"] == pbconic.SCHEMA
    assert verdict["verdict"] == "Certified"
    assert family.certify("-1/2")["verdict"] == "Failure"

    region = family.region(["-1/11", "-613/2000"])
    assert region["valid"]
    assert region["conclusion"]["AtLeastOneLimitCycle"]["stability"] == "Stable"

    sweep = family.sweep("-1", "0", "1/100")
    assert sweep["bands"], "expected at least one certified band"

    eqs = quad.equilibria()
    assert eqs["count"] >= 1
    assert any(p["is_origin"] for p in eqs["points"])

    cycle = quad.find_cycle(-0.25, axis="y")
    assert -613 / 2000 < -cycle["crossing"] < -1 / 11

    vdp = pbconic.System("param e = 1\ndx = y - e*(x^3/3 - x)\ndy = -x\n", {"e": "2"})
    c = vdp.find_cycle(1.8)
    assert math.sqrt(3) < c["crossing"] < 1.83
    assert c["multiplier"] < 1

    try:
        pbconic.System("dx = y\ndy = -x\n", {"nope": "1"})
    except pbconic.PbconicError as e:
        assert "nope" in str(e)
    else:
        raise AssertionError("unknown parameter accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
