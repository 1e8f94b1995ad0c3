"""Smoke test for the springer_qh_py extension module.

Builds the cdylib in release mode, loads it under its module name and
exercises each exported class once.

    python3 python/smoke_test.py [--no-build]
"""

import argparse
import importlib.util
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    lib = ROOT / "target" / "release" / "libspringer_qh_py.so"
    tmp = pathlib.Path(tempfile.mkdtemp())
    dest = tmp / "springer_qh_py.so"
    shutil.copy(lib, dest)
    spec = importlib.util.spec_from_file_location("springer_qh_py", dest)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--no-build", action="store_true")
    args = parser.parse_args()
    if not args.no_build:
        subprocess.run(["cargo", "build", "--release", "-p", "springer-qh-python"], cwd=ROOT, check=True)
    sqh = load()

    x = sqh.Expr("chi1 + hbar*q1/(1 - q1)")
    assert (x - x).is_zero()
    assert x * sqh.Expr("1") == x
    assert str(sqh.Expr("hbar/hbar")) == "1"
    assert "\\hbar" in x.latex()

    sl2 = sqh.RootSystem("A", 2, special_linear=True)
    g = sl2.weyl_group()
    assert len(g) == 2
    assert g.verify_trace_relation("fund:1", 2)
    assert g.verify_eigencolumn("fund:1")
    assert all(g.verify_automorphism(u, "fund:1", w) for u in g.words() for w in g.words())

    gl3 = sqh.RootSystem("A", 3)
    pres = gl3.presentation()
    assert len(pres["relations"]) == 3
    m = gl3.m_chi()
    assert m.dim == 3
    assert m.char_poly()[0] == m.trace()

    assert sqh.verify_matching_theorem(3)
    assert sqh.matching_formula(3, 3) == gl3.m_chi().determinant()
    assert sqh.cyclic_sum(4).is_zero()
    assert sqh.verify_toda_limit("B", 2)
    report = g.verify_hamiltonian("fund:1")
    assert report.passed and report.suite == "hamiltonian"

    print("python smoke test passed")


if __name__ == "__main__":
    sys.exit(main())
