"""Where do the radial roots for lambda = -x^2 sit?

For very negative epsilon the phase density behaves like -x / (2 |eps|),
so consecutive roots (one per pi of phase) form a geometric sequence with
ratio exp(2 pi / x).  This script lists the roots for a few x, compares
the observed ratios with that prediction, and reports how many roots fall
into the windows [-30, -10] and [-60, -40].

    python scripts/negative_radial_spacing.py
"""

import math

from calogero.radial import RadialBoundary, negative_condition_residual, solve_radial_negative

WINDOWS = ((-30.0, -10.0), (-60.0, -40.0))


def survey(x: float, kappa: float = 1.0, c: float = 1.0, depth: float = 1e6) -> None:
    bc = RadialBoundary(kappa)
    roots = [lv.epsilon for lv in solve_radial_negative(x, bc, c, (-depth, -1.0))]
    ratios = [a / b for a, b in zip(roots, roots[1:])]
    print(f"x = {x:g}: {len(roots)} roots in [-{depth:g}, -1], predicted ratio {math.exp(2 * math.pi / x):.4f}")
    for eps in roots[-6:]:
        print(f"    eps = {eps:14.6f}   residual {negative_condition_residual(x, bc, c, eps):.1e}")
    if ratios:
        print(f"    observed ratios (deepest first): {', '.join(f'{r:.4f}' for r in ratios[:4])}")
    counts = [len(solve_radial_negative(x, bc, c, w)) for w in WINDOWS]
    print(f"    roots per window {WINDOWS}: {counts}")


def smallest_x_with_two_roots_per_window(kappa: float = 1.0, c: float = 1.0) -> float:
    bc = RadialBoundary(kappa)
    x = 1.0
    while x < 200.0:
        if all(len(solve_radial_negative(x, bc, c, w)) >= 2 for w in WINDOWS):
            return x
        x += 0.5
    return math.nan


if __name__ == "__main__":
    for x in (1.0, 4.0, 12.0):
        survey(x)
    print(f"smallest x (step 0.5) with >= 2 roots in both windows: {smallest_x_with_two_roots_per_window():g}")
