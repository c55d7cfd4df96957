"""Tests for the classification tables.

verify_all re-derives every internal consistency identity; on top of
that we freeze a handful of externally known values: j-invariants of
named curves, the image of the nonsplit-11 criterion map at small
multiples of its generator, and conjugacy of listed generators with the
standard subgroup constructors.
"""

from fractions import Fraction as F

from modimage.ec import PointQ, ShortCurve, scalar_mul
from modimage.gl2 import (Mat2, Subgroup, is_conjugate, normalizer_nonsplit,
                          octahedral_normalizer)
from modimage.polyq import INFINITY, evaluate
from modimage.tables import (CM_TABLE, EXCEPTIONAL_LOOKUP, cm_entry,
                             group_from_label, nonsplit11, nonsplit11_contains,
                             nonsplit11_j, prime_table, supported_primes,
                             verify_all)


def test_verify_all_green():
    results = verify_all()
    bad = [(name, detail) for name, ok, detail in results if not ok]
    assert bad == []
    assert len(results) > 150


def test_tables_listed_by_decreasing_index():
    for l in supported_primes():
        entries = prime_table(l).entries
        indexes = [e.index for e in entries]
        assert indexes == sorted(indexes, reverse=True)


def test_fixed_curves_are_known_j():
    t11 = prime_table(11)
    by_label = {e.label: e for e in t11.entries}
    assert by_label["11.G1"].curve.j_invariant() == -121
    assert by_label["11.G2"].curve.j_invariant() == -24729001


def test_cover_values_pin_down_transcription():
    # independent spot values of the genus zero covers
    assert evaluate(prime_table(2).entries[0].cover, F(2)) == F(21952, 9)
    assert evaluate(prime_table(5).entries[7].cover, F(1)) == 5 ** 2 * 16 ** 3
    # the four covers with a finite value at t = infinity, all CM j's
    finite_at_infinity = {}
    for l in supported_primes():
        for e in prime_table(l).entries:
            if e.cover is None:
                continue
            v = evaluate(e.cover, INFINITY)
            if v is not INFINITY:
                finite_at_infinity[e.label] = v
    assert finite_at_infinity == {
        "5.G3": F(0), "5.G7": F(8000), "7.G5": F(-3375), "7.G6": F(8000),
        "13.G3": F(-49353408, 5),
    }
    # the only non-CM value in that list has affine preimages as well, so
    # a rational-root search cannot silently miss a containment
    cover = prime_table(13).entries[3].cover
    assert evaluate(cover, F(0)) == F(-49353408, 5)
    assert evaluate(cover, F(1)) == F(-49353408, 5)


def test_criterion_curve_points_map_to_cm_j():
    crit = nonsplit11()
    gen = PointQ(crit.curve, *crit.generator)
    values = [nonsplit11_j(*(lambda q: (q.x, q.y))(scalar_mul(gen, k)))
              for k in range(1, 6)]
    assert values[0] == -147197952000          # CM discriminant -67
    assert values[1] == 1728                   # CM discriminant -4
    assert values[2] is INFINITY               # a cusp
    assert values[3] == -262537412640768000    # CM discriminant -163
    assert values[4] == F(
        15998695788196884593181069048231000,
        55614717793339117396720595443969)


def test_criterion_contains_inert_cm_j():
    # 54000 sits over the point at infinity, the rest over affine points
    assert nonsplit11_contains(54000)
    assert nonsplit11_contains(0)
    assert nonsplit11_contains(-12288000)
    assert nonsplit11_contains(1728)
    assert nonsplit11_contains(-147197952000)
    assert not nonsplit11_contains(F(1))
    assert not nonsplit11_contains(8000)       # split at 11, not inert


def test_listed_generators_match_constructors():
    # the generator pair listed for the nonsplit normalizer at 3 spans a
    # conjugate of the standard model
    G = Subgroup(3, [Mat2(1, 2, 1, 1, 3), Mat2(1, 0, 0, 2, 3)])
    ok, witness = is_conjugate(G, normalizer_nonsplit(3))
    assert ok and witness is not None


def test_group_from_label():
    for l in supported_primes():
        for e in prime_table(l).entries:
            G = group_from_label(l, e.label)
            assert G.order * e.index == len(list(G.elements)) * e.index
            assert group_from_label(l, e.label.split(".", 1)[1]).order == G.order
    B = group_from_label(5, "B")
    assert B.order == 80
    ns = group_from_label(7, "Ns")
    assert ns.order == 2 * 36
    oct13 = group_from_label(13, "G7")
    ok, _ = is_conjugate(oct13, octahedral_normalizer(13))
    assert ok
    gl = group_from_label(11, "GL2")
    assert gl.index == 1


def test_cm_table_lookup():
    assert len(CM_TABLE) == 13
    e = cm_entry(F(54000))
    assert e is not None and e.field_disc == 3 and e.order_index == 2
    assert cm_entry(F(1)) is None
    assert cm_entry(1728).field_disc == 4
    assert cm_entry(-262537412640768000).field_disc == 163
    for e in CM_TABLE:
        assert e.model.j_invariant() == e.j


def test_exceptional_lookup_keys():
    assert EXCEPTIONAL_LOOKUP[(17, F(-17 * 373 ** 3, 2 ** 17))] == "17.G1"
    assert EXCEPTIONAL_LOOKUP[(17, F(-17 ** 2 * 101 ** 3, 2))] == "17.G2"
    assert EXCEPTIONAL_LOOKUP[(37, F(-7 * 11 ** 3))] == "37.G3"
    assert EXCEPTIONAL_LOOKUP[(37, F(-7 * 137 ** 3 * 2083 ** 3))] == "37.G4"
    assert len(EXCEPTIONAL_LOOKUP) == 4
