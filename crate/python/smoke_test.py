"""Build the extension module, import it and check a handful of values.

    python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "knoerrer-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libknoerrer_py.so"
    dest = Path(tempfile.mkdtemp()) / "knoerrer_py.so"
    shutil.copy(lib, dest)
    return dest.parent


def main() -> None:
    sys.path.insert(0, str(build()))
    import knoerrer_py as k

    assert k.expand_fraction(17, 5) == [4, 2, 3]
    assert k.dual([4, 2, 3]) == [2, 2, 4, 2]
    assert k.evaluate_fraction([4, 2, 3]) == (17, 5)
    assert k.lambda_sequence(17, 5) == [17, 5, 3, 1]
    assert k.t(17, 5) == [1, 1, 1, 3, 3]
    assert k.ideal_dims(17, 5) == [17, 5, 3, 1]

    text = k.present("knoerrer", 5, 2, "text")
    assert "z2z2z2=0" in text.splitlines()
    pres = k.present("lambda", 17, 5)
    assert isinstance(pres, dict)

    v = k.verify(17, 5)
    assert v["phi_iso"] and v["corner_is_kappa"], v
    assert v["global_dimension"] == "2"

    ext = k.ext_table(5, 2)
    assert ext["global_dimension"] == "2"
    assert ext["dims"][0] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert all(x == 0 for x in sum(ext["dims"][3], [])), ext["dims"][3]

    eq = k.equivalent(([2, 3], [0]), ([2, 2, 3], [0, 2]))
    assert eq["equivalent"] is False and eq["disagreement"] is True

    assert k.k0("dihedral", [7, 2])["k0"] == "Z/2 x Z/6"
    assert k.k0("cyclic", [5, 2])["order"] == 5

    try:
        k.expand_fraction(4, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("non-coprime pair accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
