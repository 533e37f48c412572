"""Smoke test for the pybtpe extension module.

Build the module first, then run from the repository root:

    cargo build --release -p btpe-python --features extension-module
    cp target/release/libpybtpe.so python/pybtpe.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pybtpe  # noqa: E402


def check(cond, msg):
    if not cond:
        raise AssertionError(msg)
    print("ok  ", msg)


def main():
    g = pybtpe.Generator(0)
    check(g.next_u64() == 0xE220A8397B1DCDAF, "splitmix64 seed 0 first output")

    g = pybtpe.Generator(7)
    for _ in range(3):
        u = g.next_uniform()
        assert 0.0 <= u < 1.0
    check(g.draws == 3, "counting generator tallies draws")
    g.reset_draws()
    check(g.draws == 0, "reset clears the counter")

    g.sample(19, 0.5)
    check(g.draws == 1, "inverse transform below the BTPE threshold uses one uniform")
    g.reset_draws()
    g.sample(20, 0.5)
    check(g.draws >= 2 and g.draws % 2 == 0, "BTPE draws an even number of uniforms")
    g.reset_draws()
    check(g.sample(12, 0.0) == 0 and g.sample(12, 1.0) == 12 and g.draws == 0,
          "degenerate p consumes nothing")

    xs = pybtpe.Generator(123).sample_many(100, 0.5, 20000)
    mean = sum(xs) / len(xs)
    check(abs(mean - 50.0) < 0.15, f"B(100, 0.5) sample mean {mean:.3f}")

    k = pybtpe.compute_btpe_constants(2048, 10 / 2048)
    check(k.m == 10 and abs(k.c - 0.944) < 1e-3, "constants at (2048, 10/2048)")
    check(k.p1 < k.p2 < k.p3 < k.p4, "region areas ordered")
    check(pybtpe.btpe_applicable(20, 0.5) and not pybtpe.btpe_applicable(19, 0.5),
          "applicability boundary")

    check(round(pybtpe.predict_uniforms(20, 0.5).e_uniforms, 3) == 3.996, "E[V](20, 0.5)")
    rows = pybtpe.cmd_predict()
    check(len(rows) == 17 and rows[3][0] == 128
          and round(rows[3][1], 3) == 3.790 and round(rows[3][2], 3) == 2.985,
          "predicted table row n = 128")

    check(abs(pybtpe.limit_min_p().result - 3.801) < 0.01, "min-p limit")
    check(abs(pybtpe.limit_half().result - 2.319) < 0.01, "half limit")
    b = pybtpe.stirling_bounds(10)
    check(b.lower < math.factorial(10) < b.upper, "Stirling sandwich at n = 10")

    s = pybtpe.summarize([1.0, 2.0, 3.0])
    check(abs(s.ci_half_width - 4.302653 / math.sqrt(3)) < 1e-5, "t confidence interval")
    check(abs(pybtpe.student_t_two_sided_p(4.302653, 2) - 0.05) < 1e-6, "t p-value")
    stat, df, p = pybtpe.chi_square_gof([60, 40], [0.5, 0.5], 100)
    check(abs(stat - 4.0) < 1e-12 and df == 1 and abs(p - 0.0455) < 1e-4, "chi-square")
    check(abs(math.exp(pybtpe.log_pmf(5, 0.1, 0)) - 0.59049) < 1e-12, "log pmf")

    try:
        pybtpe.Generator(1).sample(-1, 0.5)
    except ValueError:
        check(True, "negative n raises ValueError")
    else:
        raise AssertionError("negative n accepted")

    cells = pybtpe.cmd_validate(trials=2000, n_list=[32, 1024])
    check(len(cells) == 4 and all(c.odd_counts == 0 for c in cells),
          "validation cells have even per-variate counts")
    csv = pybtpe.validate_csv(trials=500)
    check(csv.splitlines()[0] == "n,p,predicted_ev,mean,ci_half_width,t_p_value,trials,seed",
          "validation CSV header")

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
