import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import to_sympy
from trisector.family import (
    AFFINE,
    PARAMETERS,
    CertificationError,
    ParameterPoint,
    affine_discriminant_eval,
    axis_condition,
    axis_singular_point,
    boundary_split,
    bracket_factor,
    build_lifted_system,
    build_trisector,
    certify_affine_smooth,
    discriminant_sample_points,
    generators_vanish_on_discriminant,
    lifted_projects_to_trisector,
    node_points,
    parametric_elimination,
    symbolic_discriminant,
    symbolic_lifted_system,
    t_sign_symmetry_holds,
    weierstrass,
)
from trisector.pipeline import enumerate_chambers, random_chamber_point
from trisector.polyring import rational

WITNESSES = [(k, 1, t) for k in (-1, rational(1) / 2, 2) for t in (1, -1)]

nonzero_q = st.fractions(min_value=-12, max_value=12, max_denominator=9).filter(lambda q: q != 0)
positive_q = st.fractions(min_value=0, max_value=12, max_denominator=9).filter(lambda q: q > 0)


def sympy_singular_basis(params: ParameterPoint):
    """Affine singular locus computed by sympy straight from F1, F2."""
    x, y, z = sympy.symbols("x y z")
    system = build_trisector(params)
    F = [to_sympy(system.F1), to_sympy(system.F2)]
    M = sympy.Matrix([[sympy.diff(f, v) for v in (x, y, z)] for f in F])
    minors = [M[:, [i, j]].det() for i, j in ((0, 1), (0, 2), (1, 2))]
    return sympy.groebner(F + minors, x, y, z, order="grevlex")


def test_weierstrass_on_circle():
    for t in (1, -1, rational(1) / 3, 7):
        c, s = weierstrass(t)
        assert c * c + s * s == 1
    assert weierstrass(1) == (0, 1)


def test_parameter_point_validation():
    with pytest.raises(ValueError):
        ParameterPoint(1, 0, 1)
    with pytest.raises(ValueError):
        ParameterPoint(1, 1, 0)
    assert not ParameterPoint(0, 1, 1).admissible
    assert not ParameterPoint(1, 1, 1).admissible
    assert ParameterPoint(2, 1, 1).mirrored().t == -1
    assert str(ParameterPoint(rational(1) / 2, 1, -1)) == "(k=1/2, R=1, t=-1)"


def test_defining_polynomials_at_known_point():
    # t = 1 gives c = 0, s = 1
    system = build_trisector(ParameterPoint(2, 1, 1))
    x, y, z = AFFINE.gens()
    assert system.F1 == 2 * z - 1 - x ** 2 + y ** 2
    assert system.F2 == (x ** 2 - 4 * z + 5) ** 2 - 4 * (x ** 2 + y ** 2)
    assert system.F1h.is_homogeneous() and system.F2h.total_degree() == 4


@given(nonzero_q, positive_q, nonzero_q)
def test_t_sign_symmetry(k, R, t):
    assert t_sign_symmetry_holds(ParameterPoint(k, R, t))


def test_lifted_system_projects():
    for k, R, t in WITNESSES[:3]:
        assert lifted_projects_to_trisector(ParameterPoint(k, R, t))


def test_lifted_system_shapes():
    lifted = build_lifted_system(ParameterPoint(2, 1, 1))
    assert len(lifted.generators) == 4
    assert len(lifted.jacobian_minors()) == 5
    sym = symbolic_lifted_system()
    c, s = sym.ctx.gen("c"), sym.ctx.gen("s")
    assert c ** 2 + s ** 2 - 1 in sym.generators


@pytest.mark.parametrize("k, R, t", WITNESSES)
def test_witnesses_smooth_against_sympy(k, R, t):
    p = ParameterPoint(k, R, t)
    cert = certify_affine_smooth(p)
    assert cert.smooth and bool(cert)
    assert cert.minor_count >= 1
    assert list(sympy_singular_basis(p).exprs) == [1]


CHAMBERS = enumerate_chambers()


@pytest.mark.parametrize("index", range(len(CHAMBERS)), ids=[ch.name for ch in CHAMBERS])
def test_chamber_samples_smooth(index):
    chamber = CHAMBERS[index]
    rng = random.Random(100 + index)
    for _ in range(25):
        p = random_chamber_point(chamber, rng)
        assert chamber.contains(p)
        assert axis_condition(p) != 0
        assert certify_affine_smooth(p).smooth
        # the bracket factor is bounded below by R² (with h = 1)
        assert bracket_factor(p) >= p.R ** 2


def test_axis_locus_is_singular():
    # R² = k − k² puts the vertex of the squared bisector on the quadric
    p = ParameterPoint(rational(1) / 2, rational(1) / 2, rational(1) / 2)
    assert axis_condition(p) == 0
    assert affine_discriminant_eval(p) == rational(1) / 64
    assert not certify_affine_smooth(p).smooth
    pt = axis_singular_point(p)
    system = build_trisector(p)
    env = dict(zip("xyz", pt))
    for F in (system.F1, system.F2):
        assert F.evaluate(env) == 0
    # F2 is singular at the vertex, so the Jacobian has rank at most one
    assert all(system.F2.diff(v).evaluate(env) == 0 for v in "xyz")
    x, y, z = sympy.symbols("x y z")
    assert set(sympy_singular_basis(p).exprs) == {x, y, z - sympy.Rational(1, 2)}


def test_axis_locus_more_points():
    for k in (rational(1) / 5, rational(9) / 25, rational(16) / 25):
        R2 = k - k * k
        num, den = R2.numerator, R2.denominator
        r = sympy.sqrt(sympy.Rational(int(num), int(den)))
        assert r.is_Rational
        p = ParameterPoint(k, rational(int(r.p)) / int(r.q), 3)
        assert axis_condition(p) == 0
        assert not certify_affine_smooth(p).smooth


def test_walls_are_singular():
    for k in (0, 1):
        assert not certify_affine_smooth(ParameterPoint(k, 1, 1)).smooth
        assert affine_discriminant_eval(ParameterPoint(k, 1, 1)) == 0


def test_discriminant_sign_logic(rng):
    outcomes = []
    for _ in range(12):
        k = rational(rng.randint(-20, 30)) / rng.randint(1, 10)
        R = rational(rng.randint(1, 20)) / rng.randint(1, 10)
        t = rational(rng.choice([-1, 1]) * rng.randint(1, 20)) / rng.randint(1, 10)
        p = ParameterPoint(k, R, t)
        if axis_condition(p) == 0:
            continue
        smooth = certify_affine_smooth(p).smooth
        outcomes.append((affine_discriminant_eval(p) != 0) == smooth)
    assert len(outcomes) >= 10 and all(outcomes)


def test_discriminant_closed_form():
    D = symbolic_discriminant()
    assert D.ctx == PARAMETERS
    assert affine_discriminant_eval(ParameterPoint(rational(1) / 2, 1, 1)) == rational(25) / 64
    p = ParameterPoint(3, 2, rational(1) / 2)
    env = {"h": 1, "k": p.k, "R": p.R, "c": p.c, "s": p.s}
    assert D.evaluate(env) == affine_discriminant_eval(p)


def test_discriminant_sample_points_vanish():
    D = symbolic_discriminant()
    pts = discriminant_sample_points(random.Random(2), per_factor=5)
    for points in pts.values():
        for env in points:
            assert env["c"] ** 2 + env["s"] ** 2 == 1
            assert D.evaluate(env) == 0
    assert generators_vanish_on_discriminant([D], random.Random(2), per_factor=5)
    x = PARAMETERS.gen("k")
    assert not generators_vanish_on_discriminant([x + 1], random.Random(2), per_factor=5)


def test_parametric_elimination_budget():
    out = parametric_elimination(budget=10)
    assert out.status == "budget_exceeded"
    assert out.generators == ()


# --- boundaries ------------------------------------------------------------


def boundary_params(rng):
    yield rational(1), rational(1)
    for _ in range(3):
        yield rational(rng.randint(1, 9)) / rng.randint(1, 5), rational(rng.randint(-9, 9) or 1) / rng.randint(1, 5)


@pytest.mark.parametrize("k_wall", [0, 1])
def test_boundary_identity_and_nodes(k_wall, rng):
    for R, t in boundary_params(rng):
        split = boundary_split(k_wall, R, t)
        assert split.identity_holds and split.projected == split.P_a * split.P_b
        nodes = node_points(split)
        assert len(nodes) == 2
        c, s = weierstrass(t)
        for n in nodes:
            assert n.residuals == (0, 0) and n.component_residuals == (0, 0)
            assert abs(n.gradient_determinant) == 16 * R ** 2
        if k_wall == 1:
            want = {(R * c, R * s, (1 - R * R * s * s) / 2), (-R * c, -R * s, (1 - R * R * s * s) / 2)}
        else:
            want = {(R, 0, (1 + R * R * s * s) / 2), (-R, 0, (1 + R * R * s * s) / 2)}
        assert {n.point for n in nodes} == want


@pytest.mark.parametrize("k_wall", [0, 1])
def test_boundary_factorization_matches_sympy(k_wall):
    split = boundary_split(k_wall, 2, rational(1) / 3)
    gens = sympy.symbols("x y z")
    factors = sympy.factor_list(to_sympy(split.projected))[1]
    got = {sympy.Poly(f, *gens).monic() for f, e in factors for _ in range(e)}
    want = {sympy.Poly(to_sympy(P), *gens).monic() for P in (split.P_a, split.P_b)}
    assert len(factors) == 2 and got == want


def test_boundary_node_determinant_scales_with_R():
    split = boundary_split(1, 2, 1)
    assert all(abs(n.gradient_determinant) == 64 for n in node_points(split))


def test_boundary_rejects_non_wall():
    with pytest.raises(ValueError):
        boundary_split(rational(1) / 2, 1, 1)


def test_certification_error_type():
    assert issubclass(CertificationError, RuntimeError)
