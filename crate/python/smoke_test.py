"""Smoke test for the abcu_py extension module.

Build and install first:
    cd crates/python && maturin build --release -o dist && pip install dist/*.whl
"""

import json
import math

import abcu_py as ab


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b} (tol {tol})"


def main():
    y1 = ab.student_t([0.523, 2.460, 1.119])
    y2 = ab.student_t([0.072, -2.275, -4.554, -0.077])
    assert y1.origin == "objective"
    both = ab.combine([y1, y2])
    close(both.p_value(-1.0), 0.104, 0.005)
    close(both.p_value(-1.0, "less") + both.p_value(-1.0), 1.0, 0.0)

    a1 = ab.subjective_normal(0.0, 3.0)
    a2 = ab.subjective_normal(2.0, 4.0)
    flat = ab.combine([y1, y2, a1, a2])
    tree = ab.combine_tree([[y1, y2], [a1, a2]])
    assert abs(flat.p_value(-1.0) - tree.p_value(-1.0)) > 0.001

    lo, hi = both.central_interval(0.95)
    assert lo < hi
    close(both.set_probability([(lo, hi)]), 0.95, 1e-9)

    again = ab.Curve.from_csv(both.to_csv())
    assert again.nodes == both.nodes and again.cdf_values == both.cdf_values

    assert ab.polynomial(3) == [("1", "1"), ("5", "8"), ("1", "8")]
    close(ab.de_cdf(2, -2.34482), 0.1042, 1e-4)

    torricelli = ab.hypothetical_data([740.0], sigma=25.0)
    assert torricelli.origin == "subjective"
    close(torricelli.cdf(740.0), 0.5, 1e-12)

    elicited = ab.elicited_pvalues([(-2.0, 0.1), (0.0, 0.5), (2.0, 0.9)])
    close(elicited.cdf(0.0), 0.5, 0.0)
    post = ab.posterior([(-1.0, 0.2), (1.0, 0.8)])
    assert post.approximate

    try:
        ab.elicited_pvalues([(0.0, 0.5), (1.0, 0.4)])
    except ValueError:
        pass
    else:
        raise AssertionError("decreasing p-values accepted")
    try:
        ab.elicited_pvalues([(0.0, 0.2), (1.0, 0.4)], extend_tails=False).quantile(0.9)
    except (ValueError, ArithmeticError):
        pass
    else:
        raise AssertionError("incomplete curve accepted")

    report = json.loads(ab.game(1.0, 1.0, 3, reps=2000, seed=7))
    assert report["seed"] == 7 and len(report["records"]) == 16
    assert math.isfinite(report["max_risk"])
    assert ab.game(1.0, 1.0, 3, reps=2000, seed=7, workers=1) == ab.game(
        1.0, 1.0, 3, reps=2000, seed=7, workers=2
    )

    cm = json.loads(ab.example("common-mean"))
    assert cm["objective"]["agrees"]
    tor = json.loads(ab.example("torricelli"))
    assert tor["product_mode"]["agrees"]

    print("smoke test passed")


if __name__ == "__main__":
    main()
