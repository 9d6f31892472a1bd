"""Smoke test for the Python bindings.

Build and install first:

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/coarse_embed-*.whl

then run `python python/smoke.py`. Exits non-zero on the first failure.
"""

import math

import coarse_embed as ce


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAIL: {what}")
    print(f"ok   {what}")


def main():
    p5 = ce.MetricSpace.path(5)
    check(len(p5) == 5 and p5.diameter() == 4.0, "path metric")
    check(p5.distance(0, 3) == 3.0, "distance")
    check(p5.ball(2, 1) == [1, 2, 3], "ball")
    check(p5.growth(2) == [1, 3, 5], "growth profile")

    tent = dict(p5.tent(0, 3))
    check(tent[0] == 1.0 and abs(tent[1] - 2 / 3) < 1e-15 and 3 not in tent, "tent values and support")
    check(p5.verify_partition(4)["lipschitz_ok"], "partition check")

    check(p5.exponents(4) == [3.0, 6.0, 9.0, 11.0], "exponent schedule")
    sched = p5.schedule_json(4)
    check(sched["exponents"] == [3, 6, 9, 11] and len(sched["provenance"]) == 4, "schedule json")
    check(ce.select_exponent(1.0, 10.0, 1.0) == 4, "select_exponent")
    check(ce.lemma1_bound(1.0, 16.0, 4.0) == 2.0, "lemma1_bound")

    v = [3.0, -4.0]
    check(abs(ce.block_norm(v, 2.0) - 5.0) < 1e-15, "l2 norm")
    check(ce.block_norm(v, math.inf) == 4.0, "sup norm")

    d = p5.pair_distance(0, 4, depth=4)
    blocks = p5.embed(4, depth=4, basepoint=0)
    norm = math.sqrt(sum(ce.block_norm([x for _, x in b], p) ** 2 for b, p in zip(blocks, p5.exponents(4))))
    check(abs(d - norm) < 1e-12, "pair distance equals the norm of the embedded point")

    report = p5.analyze(4)
    check(all(report["certificate"][k] for k in ("schedule", "upper", "upper_full", "injective")), "certificate")
    check(abs(report["profile"]["upper_constant"] - ce.upper_constant(4)) < 1e-15, "upper constant")

    g = ce.MetricSpace.random_regular(100, 3, seed=42)
    spec = g.spectrum()
    check(abs(spec["lambda1"] - 3.0) < 1e-6 and spec["lambda2"] < 2.9, "expander spectrum")

    f2 = ce.Group("free:2")
    a, b = f2.generators()[:2]
    ab = f2.multiply(a, b)
    check(f2.multiply(ab, f2.inverse(ab)) == f2.identity(), "group inverse")
    check(len(f2.ball(2)) == 17, "free group ball")
    check(f2.cocycle_residual(ab, a, depth=2) <= 1e-12, "cocycle identity")
    check(f2.properness(depth=2)["certificates"][-1]["ok"], "properness")

    try:
        ce.MetricSpace.from_edges(4, [(0, 1), (2, 3)])
    except ValueError as e:
        check("disconnected" in str(e), "disconnected input rejected")
    else:
        check(False, "disconnected input rejected")

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
