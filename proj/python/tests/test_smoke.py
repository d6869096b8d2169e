import pytest

import dbl


def test_ring_norms():
    assert dbl.Ring("IntInf").norm(-7) == "7"
    assert dbl.Ring("IntTriv").norm(5) == "1"
    assert dbl.Ring("ZmodQuot(6)").norm(5) == "1"
    assert dbl.Ring("FpTriv(3)").non_archimedean


def test_bad_ring_raises_with_kind():
    with pytest.raises(dbl.DblError) as info:
        dbl.Ring("FpTriv(4)")
    assert info.value.kind == "UnsupportedRing"
    assert isinstance(info.value, ValueError)


def test_space_clopens_and_components():
    x = dbl.Space({"points": 3, "opens": [[0], [0, 1, 2]]})
    assert x.quasi_components == [[0, 1, 2]]
    assert x.clopens == [[], [0, 1, 2]]
    assert len(dbl.Space(3).ultrafilters()) == 3


def test_cech_cover_is_acyclic():
    rep = dbl.cech(3, [[0, 1], [1, 2]])
    assert rep["cover"] and rep["exact"]
    assert rep["dims"] == [3, 4, 1]
    assert all(h["vanishes"] for h in rep["homology"])


def test_non_cover_has_witness():
    rep = dbl.equivalence(4, [[0, 1], [2]], ring=dbl.Ring("IntTriv"))
    assert not rep["cover"] and not rep["exact"]
    assert rep["witness"]["values"] == [0, 0, 0, 1]


def test_enumeration_agrees():
    rep = dbl.enumerate_equivalence(3, 2)
    assert rep["disagreements"] == 0 and rep["cases"] > 0


def test_mahler_exact_integers():
    assert dbl.mahler_coeffs([1, 4, 9, 16]) == [1, 3, 2, 0]
    assert dbl.mahler_coeffs([1, 4, 9, 16], modulus=3) == [1, 0, 2, 0]
    big = 10**30
    assert dbl.mahler_coeffs([big, big]) == [big, 0]
    assert all(dbl.mahler_pairing(n, i) == (n == i) for n in range(8) for i in range(8))


def test_vdp_basis_unimodular():
    b = dbl.basis("vdp", 2, 2)
    assert b["clopens"] == [[0, 1, 2, 3], [1, 3], [2], [3]]
    assert abs(b["determinant"]) == 1


def test_sw_certificate():
    cert = dbl.sw_certificate(3, [[0, 1, 2]], [1])
    assert cert["verified"]
    assert cert["a_U"] == 16
    assert cert["evaluation"] == [0, 16, 0]


def test_sw_non_separating():
    with pytest.raises(dbl.DblError) as info:
        dbl.sw_certificate(3, [[0, 0, 1]], [0])
    assert info.value.kind == "NonSeparating"


def test_criterion_runs():
    c = dbl.run_criterion(5)
    assert c["passed"], c["detail"]
