"""Verdict pipeline: decide_ci, the 6x6 witness, and the classification table."""

import pytest

from commuting_ci.cidecide import (
    CIReport,
    WitnessReport,
    classify_table,
    decide_ci,
    resolve_field,
    u6_witness,
)
from commuting_ci.groebner import buchberger, normal_form
from commuting_ci.koszul import build_complex, homology_slice
from commuting_ci.polyring import QQ, PrimeField, parse_poly

from conftest import system


def test_resolve_field_policy():
    assert resolve_field("un", 4, None) == QQ
    assert resolve_field("un", 5, None) == PrimeField(32003)
    assert resolve_field("bn", 2, None) == QQ
    assert resolve_field("bn", 3, None) == PrimeField(32003)
    assert resolve_field("un", 6, "q") == QQ
    assert resolve_field("un", 3, "gf:7") == PrimeField(7)


# -- decide_ci ---------------------------------------------------------------


def test_decide_u2_trivial():
    r = decide_ci("un", 2, 1)
    assert r.verdict == "CI"
    assert r.generators == 0 and r.codim == 0
    assert r.nvars == 2 and r.dim == 2
    assert r.exterior_factors == 1


def test_decide_u3():
    r = decide_ci("un", 3, 1)
    assert (r.nvars, r.generators, r.dim, r.codim) == (6, 1, 5, 1)
    assert r.verdict == "CI"
    assert r.field == "q"
    assert r.structure is not None and "2 degree-1 generators" in r.structure


def test_decide_u5_modular():
    r = decide_ci("un", 5, 1)
    assert (r.nvars, r.generators, r.dim, r.codim) == (20, 6, 14, 6)
    assert r.verdict == "CI" and r.field == "gf:32003"


def test_decide_b2():
    r = decide_ci("bn", 2, 1)
    assert r.nvars == 10
    assert r.generators + r.unit_relations == 5
    assert r.dim == 5 and r.codim == 5
    assert r.verdict == "CI"
    assert r.exterior_factors == 2
    assert r.structure is None  # structure statement is recorded for unipotent only


def test_decide_higher_genus_u3():
    r = decide_ci("un", 3, 2)
    assert r.verdict in ("CI", "NotCI")
    assert r.codim is not None and r.codim <= r.generators
    assert r.note is not None and "tool-derived" in r.note
    assert r.nvars == 12


def test_decide_incomplete_on_timeout():
    r = decide_ci("un", 5, 1, timeout=0.0)
    assert r.verdict == "Incomplete"
    assert r.dim is None and r.codim is None


def test_codim_never_exceeds_generator_count():
    for kind, n, genus in [("un", 3, 1), ("un", 4, 1), ("un", 3, 2), ("bn", 2, 1)]:
        r = decide_ci(kind, n, genus)
        assert r.codim <= r.generators + r.unit_relations
        assert (r.verdict == "CI") == (r.codim == r.generators + r.unit_relations)


def test_verdicts_agree_with_koszul_vanishing():
    # the two criteria must agree on completed runs
    for n in (3, 4):
        r = decide_ci("un", n, 1)
        K = build_complex(system("un", n, 1))
        h1 = [homology_slice(K, 1, w).h_dim for w in range(9)]
        assert r.verdict == "CI"
        assert all(h == 0 for h in h1)


# -- the 6x6 witness ------------------------------------------------------------


@pytest.fixture(scope="module")
def witness():
    return u6_witness("q")


def test_witness_concludes_not_ci(witness):
    assert witness.pattern_ok
    assert witness.conclusion == "NotCI"
    assert witness.codim_bound == 6
    assert witness.bounding_generators == 6
    assert len(witness.memberships) == 7 and all(witness.memberships.values())


def test_witness_pattern_values(witness):
    sys6 = system("un", 6, 1)
    ring = sys6.ring
    kill = {name: ring.zero() for name in witness.substitution}
    image14 = sys6.generator_at(1, 4).substitute(kill)
    assert image14 == parse_poly(
        "x_1_1_2*y_1_2_4 + x_1_1_3*y_1_3_4 - x_1_3_4*y_1_1_3 - x_1_2_4*y_1_1_2", ring
    )
    assert sys6.generator_at(2, 5).substitute(kill).is_zero
    image36 = sys6.generator_at(3, 6).substitute(kill)
    assert image36 == parse_poly(
        "x_1_3_4*y_1_4_6 + x_1_3_5*y_1_5_6 - x_1_5_6*y_1_3_5 - x_1_4_6*y_1_3_4", ring
    )


def test_witness_membership_of_f13_directly():
    sys6 = system("un", 6, 1)
    ring = sys6.ring
    bounding = [ring.gen(v) for v in ("x_1_2_3", "x_1_4_5", "y_1_2_3", "y_1_4_5")]
    bounding.append(
        parse_poly("x_1_1_2*y_1_2_4 + x_1_1_3*y_1_3_4 - x_1_3_4*y_1_1_3 - x_1_2_4*y_1_1_2", ring)
    )
    bounding.append(
        parse_poly("x_1_3_4*y_1_4_6 + x_1_3_5*y_1_5_6 - x_1_5_6*y_1_3_5 - x_1_4_6*y_1_3_4", ring)
    )
    gb = buchberger(bounding, ring=ring)
    assert normal_form(sys6.generator_at(1, 3), gb.basis, gb.order).is_zero


def test_witness_modular_run():
    w = u6_witness("gf:32003")
    assert w.conclusion == "NotCI" and w.field == "gf:32003"


def test_witness_under_permuted_order():
    w = u6_witness("q", order_seed=7)
    assert w.conclusion == "NotCI"


def test_witness_json_round_trip(witness):
    data = witness.to_json()
    again = WitnessReport.from_json(data)
    assert again == witness


# -- classification table ----------------------------------------------------------


def test_table_unipotent_small():
    rows = classify_table("un", 3, 1)
    assert [r.n for r in rows] == [2, 3]
    assert all(r.verdict == "CI" for r in rows)


def test_table_borel():
    rows = classify_table("bn", 3, 1)
    assert [(r.n, r.verdict) for r in rows] == [(2, "CI"), (3, "CI")]


def test_table_includes_u6_witness_row():
    rows = classify_table("un", 6, 1)
    by_n = {r.n: r for r in rows}
    assert by_n[6].verdict == "NotCI"
    assert by_n[6].witness is not None
    assert by_n[6].witness["conclusion"] == "NotCI"
    assert by_n[6].note is None  # n = 6 is a complete certificate
    assert all(by_n[n].verdict == "CI" for n in (2, 3, 4, 5))


def test_table_n7_is_conjectural():
    from commuting_ci.cidecide import _witness_report_row

    row = _witness_report_row(7, 1, "q", None, 30, 3600.0)
    assert row.verdict == "NotCI"
    assert row.note is not None and "conjectural" in row.note
    assert row.generators == 15 and row.nvars == 42


def test_table_parallel_matches_serial():
    serial = classify_table("un", 4, 1)
    parallel = classify_table("un", 4, 1, jobs=2)
    strip = lambda r: {k: v for k, v in r.to_json().items() if k != "wall_seconds" and k != "stats"}
    assert [strip(r) for r in serial] == [strip(r) for r in parallel]


def test_report_json_round_trip():
    r = decide_ci("un", 3, 1)
    data = r.to_json()
    again = CIReport.from_json(data)
    assert again == r or again.to_json() == data
