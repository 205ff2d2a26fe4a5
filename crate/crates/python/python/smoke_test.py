"""Smoke test for the conformal_forge_py extension module.

Build and run from the repository root:

    PYO3_BUILD_EXTENSION_MODULE=1 cargo build --release -p conformal-forge-python
    cp target/release/libconformal_forge_py.so crates/python/python/conformal_forge_py.so
    python3 crates/python/python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import conformal_forge_py as cf

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "..", "..")


def main():
    ns = cf.Algebra.builtin("neveu_schwarz")
    assert ns.rank == 2
    assert ns.generators == [("L", "even"), ("G", "odd")]
    assert ns.check_axioms().passed

    L, G = ns.generator("L"), ns.generator("G")
    assert str(ns.bracket(G, G)) == "2L"
    assert ns.bracket(L, G).source() == "(d + 3/2*l) G"
    assert ns.element("d L - 1/2 G") == L.d() - ns.element("1/2 G")

    text = open(os.path.join(ROOT, "lcsa", "ns_mutated_ll.lcsa")).read()
    bad = cf.Algebra.from_source(text, "NS")
    report = bad.check_skew()
    assert not report
    failures = json.loads(report.to_json())["failures"]
    assert failures[0]["residual"] == "(-d) L"
    assert ns.bracket(L, L) != L.d()

    cder = ns.solve("cder", "even", 2)
    inner = ns.inner_space("even", 2)
    assert cder.dim == 2 and cder.equals(inner)
    ctder = ns.solve("abcd:1,1,1,1", "even", 2)
    assert ctder.equals(cder)
    assert ctder.centralizer(inner).dim == 0
    assert ns.solve("tc", "even", 2).dim == 0
    assert cf.Space.from_json(cder.to_json()).to_json() == cder.to_json()

    ad_g = ns.ad(G)
    assert ad_g.parity == "odd"
    assert ns.check_map(ad_g, "cder").passed
    identity = ns.conformal_map(["L", "G"])
    assert not ns.check_map(identity, "cder").passed
    for phi in cder.maps(ns):
        for psi in cder.maps(ns):
            assert ns.check_map(phi.bracket(psi), "ctder").passed

    pair = ns.direct_sum(ns)
    f = ns.hom(pair, ["L#1 - L#2", "G#1 - G#2"])
    delta = ns.hom(pair, ["L#1 + L#2", "G#1 + G#2"])
    assert f.is_triple_hom() and not f.is_hom() and not f.is_antihom()
    certified, plus, minus, summary = f.decompose(delta)
    assert certified and plus.is_hom() and minus.is_antihom(), summary

    sign = ns.hom(ns, ["L", "-G"])
    assert sign.is_automorphism() == (True, "-1")
    assert ns.selftest(1).passed

    try:
        ns.element("L +")
    except cf.ConformalForgeError as e:
        assert "1:4" in str(e)
    else:
        raise AssertionError("parse error not raised")

    print("smoke test passed")


if __name__ == "__main__":
    main()
