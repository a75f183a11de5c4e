import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trisector.family import ParameterPoint
from trisector.infinity import NO_REAL_BRANCH, TWO_REAL_CROSSINGS
from trisector.pipeline import (
    BUDGET,
    FAIL,
    PARAMS,
    PASS,
    REPORT_KEYS,
    CertificationReport,
    Chamber,
    Constraint,
    Infeasible,
    assemble_transition_report,
    candidate_walls,
    certify_boundary,
    certify_chamber,
    chamber_witness,
    combine_statuses,
    decode,
    encode,
    enumerate_chambers,
    find_witness,
    random_chamber_point,
    simplest_between,
    symbolic_direction_discriminant,
)
from trisector.polyring import rational

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=40)


def brute_simplest(lo: Fraction, hi: Fraction) -> Fraction:
    d = 1
    while True:
        n_lo = int(lo * d) - 1
        inside = [Fraction(n, d) for n in range(n_lo, int(hi * d) + 2) if lo < Fraction(n, d) < hi]
        if inside:
            return min(inside, key=lambda q: (abs(q.numerator), q))
        d += 1


@given(fracs, fracs)
def test_simplest_between_matches_brute_force(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    got = simplest_between(rational(lo), rational(hi))
    want = brute_simplest(lo, hi)
    assert got.denominator == want.denominator
    assert Fraction(int(got.numerator), int(got.denominator)) == want


def test_simplest_between_examples():
    assert simplest_between(rational(1) / 3, rational(1) / 2) == rational(2) / 5
    assert simplest_between(-3, 3) == 0
    assert simplest_between(rational(3) / 2, rational(7) / 2) == 2
    with pytest.raises(ValueError):
        simplest_between(1, 1)


def test_encoding_roundtrip():
    for q in (rational(0), rational(-3), rational(7) / 9):
        assert decode(encode(q)) == q
    assert encode(2) == "2/1"


def test_find_witness_feasible():
    k, R, t = PARAMS.gens()
    point = find_witness([Constraint(k - 1), Constraint(3 - k), Constraint(R), Constraint(-t)])
    assert 1 < point["k"] < 3 and point["R"] > 0 and point["t"] < 0


def test_find_witness_nonlinear():
    k, R, t = PARAMS.gens()
    # a thin region between two parabolas
    cons = [Constraint(R - k * k), Constraint(k * k + rational(1) / 8 - R), Constraint(k - 1), Constraint(t)]
    point = find_witness(cons)
    assert all(c.holds(point) for c in cons)


def test_find_witness_infeasible():
    k, R, t = PARAMS.gens()
    with pytest.raises(Infeasible) as info:
        find_witness([Constraint(k), Constraint(-k)])
    assert info.value.reason == "empty"
    with pytest.raises(Infeasible) as info:
        find_witness([Constraint(-(k ** 2) - 1)])
    assert info.value.reason == "empty"


def test_find_witness_budget():
    k, R, t = PARAMS.gens()
    # feasible, but only on 0 < k < 10⁻⁶, which shallow boxes never isolate
    thin = [Constraint(k * (rational(1) / 10 ** 6 - k))]
    with pytest.raises(Infeasible) as info:
        find_witness(thin, max_depth=4)
    assert info.value.reason == "budget"
    with pytest.raises(Infeasible) as info:
        find_witness(thin, node_limit=10)
    assert info.value.reason == "budget"
    # a band of width 1/100 is reached within a few bisections
    band = [Constraint(k * (rational(1) / 100 - k))]
    assert 0 < find_witness(band)["k"] < rational(1) / 100


def test_walls_derivation():
    deriv = candidate_walls()
    assert deriv.walls == (0, 1)
    assert deriv.affine_walls == (0, 1)
    assert deriv.closed_form_agrees
    assert str(symbolic_direction_discriminant()) == "4*k^2*s^2 - 4*k*s^2"


def test_chamber_enumeration():
    chambers = enumerate_chambers()
    assert [c.name for c in chambers] == [
        "k<0,t>0", "k<0,t<0", "0<k<1,t>0", "0<k<1,t<0", "k>1,t>0", "k>1,t<0",
    ]
    by_name = {c.name: c for c in chambers}
    for c in chambers:
        assert by_name[c.mirror].mirror == c.name
        assert c.contains(c.witness)
    assert by_name["0<k<1,t>0"].expected_kind == NO_REAL_BRANCH
    assert by_name["k<0,t<0"].expected_kind == TWO_REAL_CROSSINGS


def test_chamber_search_witnesses_inside():
    for ch in enumerate_chambers():
        w = chamber_witness(ch)
        assert ch.contains(w)
        # the search must respect the genericity constraint
        assert w.k - w.k ** 2 - w.R ** 2 != 0


def test_other_wall_sets_get_search_witnesses():
    chambers = enumerate_chambers((0, 2))
    assert len(chambers) == 6
    assert all(c.contains(c.witness) for c in chambers)


def test_random_chamber_points_seeded():
    ch = enumerate_chambers()[2]
    a = [random_chamber_point(ch, random.Random(4)) for _ in range(3)]
    b = [random_chamber_point(ch, random.Random(4)) for _ in range(3)]
    assert a == b
    assert all(ch.contains(p) for p in a)


def test_combine_statuses_precedence():
    assert combine_statuses([{"status": PASS}, {"status": BUDGET}]) == BUDGET
    assert combine_statuses([{"status": BUDGET}, {"status": FAIL}]) == FAIL
    assert combine_statuses([{"status": PASS}]) == PASS
    assert combine_statuses([]) == PASS


def test_certify_chamber_fails_on_bad_witness():
    bad = Chamber("0<k<1,t>0", (rational(0), rational(1)), 1, "0<k<1,t<0", ParameterPoint(2, 1, 1))
    out = certify_chamber(bad, extra_samples=0)
    assert out["checks"]["witness_in_chamber"]["status"] == FAIL
    assert out["checks"]["classification"]["status"] == FAIL


def test_certify_boundary():
    for k in (0, 1):
        out = certify_boundary(k, seed=3)
        assert out["status"] == PASS
        assert len(out["samples"]) == 4
        assert out["singular_at_wall"]["observed"] == "proper"
        first = out["samples"][0]
        assert first["node_check"]["expected"] == "16/1"


@pytest.fixture(scope="module")
def report():
    return assemble_transition_report(seed=0)


def test_report_schema(report):
    d = report.to_dict()
    assert tuple(d) == REPORT_KEYS
    assert d["walls"]["values"] == ["0/1", "1/1"]
    assert len(d["chambers"]) == 6 and len(d["boundaries"]) == 2
    assert d["status"] == PASS and report.exit_code == 0
    assert d["benchmarks"] == {}
    finding = d["walls"]["findings"][0]
    assert finding["singular_point"] == ["0/1", "0/1", "1/2"]
    for ch in d["chambers"]:
        assert ch["status"] == PASS
        assert len(ch["samples"]) == 5


def test_report_deterministic_and_roundtrip(report):
    again = assemble_transition_report(seed=0)
    assert again.to_json() == report.to_json()
    back = CertificationReport.from_json(report.to_json())
    assert back.to_json() == report.to_json()
    assert json.loads(report.to_json())["seed"] == 0


def test_report_seed_changes_samples(report):
    other = assemble_transition_report(seed=1, extra_samples=2)
    assert other.status == PASS
    assert other.chambers[0]["samples"][0]["params"] != report.chambers[0]["samples"][0]["params"]


def test_report_rejects_missing_keys():
    with pytest.raises(ValueError):
        CertificationReport.from_dict({"walls": {}})


def test_tiny_budget_is_reported():
    rep = assemble_transition_report(seed=0, gb_budget=5, extra_samples=0)
    assert rep.status == BUDGET
    assert rep.exit_code == 2
    statuses = {ch["checks"]["affine_smooth"]["status"] for ch in rep.chambers}
    assert statuses == {BUDGET}


def test_parametric_section_budget():
    rep = assemble_transition_report(seed=0, parametric=True, parametric_budget=20, extra_samples=0)
    assert rep.walls["parametric"]["status"] == "budget_exceeded"
    # an exhausted optional elimination does not fail the run
    assert rep.status == PASS
