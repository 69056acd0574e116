"""Smoke test for the z2q_py extension module.

Build and run from the repository root:

    cargo build --release -p z2q-py --features extension-module
    python3 crates/py/python/smoke_test.py

The script imports `z2q_py` if it is already installed, otherwise it copies
the shared library from target/{release,debug} into a temporary directory.
"""

import importlib
import json
import os
import shutil
import sys
import tempfile

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "..", ".."))


def load():
    try:
        return importlib.import_module("z2q_py")
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libz2q_py.so", "libz2q_py.dylib", "z2q_py.dll"):
            lib = os.path.join(ROOT, "target", profile, name)
            if os.path.exists(lib):
                tmp = tempfile.mkdtemp(prefix="z2q_py_")
                ext = ".pyd" if name.endswith(".dll") else ".so"
                shutil.copy(lib, os.path.join(tmp, "z2q_py" + ext))
                sys.path.insert(0, tmp)
                return importlib.import_module("z2q_py")
    sys.exit("z2q_py not found; build it with cargo build -p z2q-py --features extension-module")


def main():
    z = load()

    assert z.normalize("xi*x") == "q^-1*x*xi"
    assert z.normalize("z*xi") == "-q*xi*z"
    assert z.normalize("S(xi)", algebra="dqsp-ext") == "-q*x^-2*xi"
    assert z.normalize("d(x*xi)", algebra="dqsp-omega") == "q*xi*dx + x*dxi"

    p = z.Presentation("dqsp")
    assert p.generators == ["x", "xi", "theta", "z"]
    assert p.degree_of("z") == (1, 1)
    assert p.is_confluent()
    assert sorted(z.Presentation.builtins()) == sorted(
        ["dqsp", "dqsp-ext", "dqsp-omega", "dqsp-ops", "manin-sp", "z22-commutative"]
    )

    x, xi, theta, zz = (p.generator(s) for s in ("x", "xi", "theta", "z"))
    assert str(xi * x) == "q^-1*x*xi"
    assert (xi * xi).is_zero()
    assert (x * xi - z.Scalar("q") * xi * x).is_zero()
    assert (xi * theta).degree() == (1, 1)
    assert (x + xi).degree() is None
    assert str(2 * x + 1) == "1 + 2*x"

    delta = zz.coproduct()
    assert delta.rank == 2
    assert str(delta) == "z (x) x + x (x) z"
    assert (xi.coproduct() * xi.coproduct()).is_zero()
    assert str((x ** 3).counit()) == "1"
    assert xi.counit().is_zero()

    ext = z.Presentation("dqsp-ext")
    s_xi = ext.generator("xi").antipode()
    assert str(s_xi) == "-q*x^-2*xi"
    assert s_xi.antipode() == ext.generator("xi")

    omega = z.Presentation("dqsp-omega")
    dxi = omega.parse("d(xi)")
    assert str(dxi) == "dxi"
    assert omega.parse("d(d(x*z))").is_zero()
    assert str(dxi.coaction("left")) == "xi (x) dx + x (x) dxi"

    ops = z.Presentation("dqsp-ops")
    assert str(ops.parse("Dxi(x*xi)")) == "q*x"
    assert str(z.parse("Dx(x^2*xi)").__class__.__name__) == "Element"
    assert str(z.Scalar("1 - q^2").eval(2)) == "('-3', '1')"

    try:
        z.normalize("S(x)")
    except ValueError:
        pass
    else:
        raise AssertionError("S outside dqsp-ext should fail")

    report = json.loads(z.verify("engine", 3))
    assert report["failed"] == 0 and report["passed"] > 0

    print("z2q_py smoke test passed")


if __name__ == "__main__":
    main()
