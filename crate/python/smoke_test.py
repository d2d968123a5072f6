"""Smoke test for the `kgr` extension module.

Build and run from the repository root:

    cargo build -p kgr-py --release --features extension-module
    cp target/release/libkgr.so python/kgr.so
    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import kgr  # noqa: E402

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")


def read(name):
    with open(os.path.join(DATA, name)) as f:
        return f.read()


def main():
    k = kgr.kgr_graph(read("k2_graph.json"))
    assert str(k) == "K0^gr = Z/5, K1^gr = 0", str(k)
    assert k.k0.order() == 5 and k.k1.is_trivial()

    assert str(kgr.cuntz(2, 0)) == "K0^gr = Z/3, K1^gr = 0"
    assert str(kgr.clifford(3)) == "K0^gr = 0, K1^gr = Z"
    assert kgr.clifford(3).shift() == kgr.clifford(4)

    g = kgr.Group("Z^2 (+) Z/2 (+) Z/6")
    assert (g.rank, g.torsion, g.order()) == (2, [2, 6], None)

    try:
        kgr.kgr_graph(read("fibonacci_f3.json"))
    except RuntimeError as e:
        assert "sources" in str(e)
    else:
        raise AssertionError("expected a hypothesis violation")
    assert str(kgr.kgr_graph(read("fibonacci_f3.json"), force=True)) == "K0^gr = 0, K1^gr = 0"

    pair, text = kgr.pv_solve(read("twisted_t2_pv.json"))
    assert pair == kgr.GradedK(kgr.Group("Z/2"), kgr.Group("Z/2")), text

    u, d, v = kgr.snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [d[i][i] for i in range(3)] == [2, 6, 12]
    big = 10**40
    _, d, _ = kgr.snf([[big, 0], [0, big * 3]])
    assert d[1][1] == 3 * big

    assert kgr.inner_potential(read("bipartite_cycle.json")) == [
        ("v1", 0), ("v2", 1), ("v3", 0), ("v4", 1)]
    assert kgr.inner_potential(read("k2_graph.json")) is None

    assert kgr.kappa_is_cocycle(3)
    assert kgr.kappa_coboundary([2, 1, 3]) is not None
    assert kgr.product_sign(1, 1, 1, 1)

    assert kgr.validate(read("torus2.kgraph.json")) == []
    assert kgr.validate(read("torus2_missing_square.kgraph.json"))
    out = json.loads(kgr.decompose(read("omega_table.json")))
    assert out["action"]["generators"][0]["vertices"] == {"0": "1", "1": "0"}

    code, stdout, _ = kgr.run_cli(["gallery"])
    assert code == 0 and "FAIL" not in stdout

    print("smoke test passed")


if __name__ == "__main__":
    main()
