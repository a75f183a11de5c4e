"""Walk through the certification of one chamber witness per wall interval.

Run with ``python3 demos/walkthrough.py``.  Everything printed is exact.
"""

from trisector.family import ParameterPoint, axis_condition, boundary_split, certify_affine_smooth, node_points
from trisector.infinity import classify_branches, infinity_points, tangent_form
from trisector.pipeline import candidate_walls
from trisector.polyring import format_rational as fmt
from trisector.polyring import rational


def show_witness(p: ParameterPoint) -> None:
    print("witness", p)
    form = tangent_form(p)
    print("  tangent form at infinity:", form.form)
    print("  discriminant:", fmt(form.discriminant))
    rep = infinity_points(p)
    print("  points at infinity:", rep.point, "scheme degree", rep.scheme_degree)
    c = classify_branches(p)
    if c.lambdas:
        print("  branches:", c.kind, "lambda =", ", ".join(fmt(x) for x in c.lambdas))
    else:
        print("  branches:", c.kind, "min g =", fmt(c.min_g))
    print("  affine smooth:", certify_affine_smooth(p).smooth)


def main() -> None:
    walls = candidate_walls()
    print("walls from the direction discriminant:", ", ".join("k=%s" % fmt(w) for w in walls.walls))
    for k in (-1, rational(1) / 2, 2):
        show_witness(ParameterPoint(k, 1, 1))

    # the curve picks up a real singular point when R^2 = k - k^2
    p = ParameterPoint(rational(1) / 2, rational(1) / 2, rational(1) / 2)
    print("axis locus point", p, "k - k^2 - R^2 =", fmt(axis_condition(p)))
    print("  affine smooth:", certify_affine_smooth(p).smooth)

    split = boundary_split(1, 1, 1)
    print("at k=1 the plane projection splits:")
    print("  P_a =", split.P_a)
    print("  P_b =", split.P_b)
    for n in node_points(split):
        print("  node", tuple(fmt(v) for v in n.point), "|det| =", fmt(abs(n.gradient_determinant)))


if __name__ == "__main__":
    main()
