#!/usr/bin/env python3
"""Smoke test for the orecalc Python bindings.

Builds the extension with cargo, loads it from a scratch directory, and checks a
handful of canonical forms against the values the CLI prints for the same inputs.
Exits nonzero on the first discrepancy summary.
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def build_module() -> Path:
    subprocess.run(["cargo", "build", "-p", "orecalc-py"], cwd=REPO, check=True)
    for stem in ("liborecalc_py.so", "liborecalc_py.dylib"):
        lib = REPO / "target" / "debug" / stem
        if lib.exists():
            return lib
    sys.exit("extension library not found; did the build succeed?")


def main() -> None:
    lib = build_module()
    scratch = Path(tempfile.mkdtemp(prefix="orecalc-py-"))
    shutil.copy2(lib, scratch / "orecalc.so")
    sys.path.insert(0, str(scratch))

    import orecalc

    failures = []
    checks = 0

    def expect(label, got, want):
        nonlocal checks
        checks += 1
        if got != want:
            failures.append(f"{label}: got {got!r}, want {want!r}")
        else:
            print(f"ok  {label}: {got!r}")

    expect("builtin count", len(orecalc.builtin_names()), 8)
    expect("menu lists the Weyl pair", any(n == "weyl" for n, _ in orecalc.builtin_menu()), True)

    so = orecalc.Algebra("so13")
    expect("so13 straightening", so.normalize("J2*J1"), "-L13*L23")
    expect("so13 bracket", so.normalize("[L01, L12]"), "i*L02")
    expect("so13 adjoint", so.normalize("adj(i*L01)"), "-i*L01")
    expect("so13 vanishing bracket", so.check("[L01, L23]", "0"), True)
    expect("so13 grade 2", so.grade(2), 21)
    expect("so13 generators", so.generators()[:2], ["L01", "L02"])
    jacobi_ok, _ = so.jacobi_check()
    expect("so13 jacobi", jacobi_ok, True)

    flipped = orecalc.Algebra("so13", metric="mostly-plus")
    expect("metric flips the bracket", flipped.normalize("[L01, L12]"), "-i*L02")

    weyl = orecalc.Algebra("weyl")
    expect("weyl product", weyl.normalize("x*t"), "t*x + 1")
    expect("weyl quartic", weyl.normalize("x^2*t^2"), "t^2*x^2 + 4*t*x + 2")
    expect("weyl kind", weyl.kind, "ore")

    skew = orecalc.Algebra("skewccr4")
    suite_ok, suite_report = skew.check_skew_ccr()
    expect("skewccr4 suite", suite_ok, True)
    expect("skewccr4 suite covers bilinears", "bilinear" in suite_report, True)

    su2 = orecalc.Algebra.from_file(str(REPO / "algebras" / "su2.json"))
    expect("file route straightening", su2.normalize("J2*J1"), "J1*J2 - i*J3")
    expect("broken endomorphism is reported", su2.endomorphism_reports()["swap"][0], False)
    checks += 1
    try:
        su2.normalize("swap(J1)")
    except ValueError:
        print("ok  quarantine: swap(J1) raises ValueError")
    else:
        failures.append("quarantine: swap(J1) should have raised ValueError")

    if failures:
        print("\n".join(f"FAIL {f}" for f in failures))
        sys.exit(1)
    print(f"\nall {checks} smoke checks passed")


if __name__ == "__main__":
    main()
