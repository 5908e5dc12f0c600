"""Builds the extension, imports it and checks a few known values.

Run from the repository root: python3 python/smoke_test.py
"""

import json
import math
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "natchain-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libnatchain.so"
    dest = pathlib.Path(tempfile.mkdtemp()) / "natchain.so"
    shutil.copy(lib, dest)
    sys.path.insert(0, str(dest.parent))


def main():
    build()
    import natchain

    square = json.dumps({
        "n": 2,
        "m": 2,
        "terms": [
            {"coef": 1, "vertices": [[0, 0], [1, 0], [1, 1]]},
            {"coef": 1, "vertices": [[0, 0], [1, 1], [0, 1]]},
        ],
    })
    x_dy = json.dumps({"degree": 1, "ambient": 2, "components": {"2": [{"coef": 1, "powers": [1, 0]}]}})

    assert natchain.mass(square) == 1.0
    edge = natchain.boundary(square)
    assert abs(natchain.integrate(edge, x_dy) - 1.0) < 1e-15
    assert natchain.stokes_residual(square, x_dy) < 1e-15

    value, witness = natchain.natural_norm(edge, 2.0)
    assert abs(value - 4.0) < 1e-12 and json.loads(witness)["lambda"] == 2.0

    limit, ratio, verdict = natchain.koch_limit(x_dy, 10, 1e-4)
    assert verdict == "converged" and abs(ratio - 4 / 9) < 1e-6
    assert abs(limit + math.sqrt(3) / 20) < 1e-4

    chain, witness = natchain.harrison_curve_chain(1)
    value, _ = natchain.natural_norm(chain, 3.0, witness)
    assert value < 36

    closed, area, bnd = natchain.lebesgue([(0.0, 1.0, 2.0), (2.0, 3.5, -1.0)])
    assert max(closed, area, bnd) - min(closed, area, bnd) < 1e-12

    assert abs(natchain.flat_norm_polygon(64) - math.pi) < 0.05 * math.pi

    try:
        natchain.mass("{\"n\": 1}")
    except ValueError as e:
        assert "line" in str(e)
    else:
        raise AssertionError("malformed chain accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
