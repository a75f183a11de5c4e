"""The two three-line benchmarks: a smooth quartic and a line plus cubic."""

from trisector.benchmark import three_line_degenerate, three_line_generic
from trisector.polyring import format_rational as fmt


def main() -> None:
    g = three_line_generic()
    print("generic configuration")
    print("  degree", g.degree, "affine smooth", g.affine_smooth)
    print("  direction discriminants", fmt(g.delta_x), fmt(g.delta_y))

    d = three_line_degenerate()
    print("degenerate configuration")
    print("  line on ruling", d.line.family, ":".join(fmt(v) for v in d.line.parameter))
    print("  residual degree", d.residual_degree, "nonsingular", d.residual_nonsingular)
    elim = " + ".join("%s*Z^%d" % (fmt(c), i) for i, c in enumerate(d.elimination.monic().coeffs) if c)
    print("  line meets residual where", elim, "= 0;", d.real_intersections, "real roots")


if __name__ == "__main__":
    main()
