import math

import tbflab as t


def main():
    s = t.spectrum(0.5)
    assert abs(s["lambda_pf"] - 0.80901699437494745) < 1e-12
    assert abs(s["lambda_r"] + 0.30901699437494745) < 1e-12
    assert abs(s["a"] + 0.38196601125010515) < 1e-12
    assert abs(s["c_ratio"] - 3.6180339887498949) < 1e-12
    assert abs(s["d_const"] - 1.7082039324993694) < 1e-12

    assert t.g(0.5, 0) == 0.0
    assert t.g(0.5, 1) == 0.5
    assert abs(t.g(0.5, 2) - 0.75) < 1e-12
    assert abs(t.g(0.5, 3) - 5.0 / 6.0) < 1e-12
    assert abs(t.g(0.5, math.inf) - s["lambda_pf"]) < 1e-15
    assert abs(t.variation(0.5, 2) - 1.0 / 12.0) < 1e-14
    assert t.parity_limit(3) == 0.5
    assert t.parity_limit(4) == 0.0

    st = t.stationary(0.5)
    assert abs(st["probabilities"][0] - 0.125) < 1e-8
    assert abs(st["probabilities"][1] - 0.25) < 1e-8
    assert st["probability_infinity"] == 0.0
    assert st["tail_mass_bound"] < 1e-10

    path = t.sample_path(0.5, 10000, 42)
    assert len(path) == 10000
    assert path == t.sample_path(0.5, 10000, 42)
    spins = [t.tau(x) for x in path]
    assert set(spins) <= {0, 1}
    assert "010" not in "".join(str(b) for b in spins)

    text = "tailL=ones annulus=1 window=[0,0] annulusR=1 tailR=ones"
    bc = t.parse_boundary(text)
    assert t.format_boundary(bc) == text
    assert bc.l == 0 and bc.r == 0
    assert bc.left_tail == "ones"

    k = t.kernel(0.5, bc)
    probs = dict(k["probabilities"])
    assert abs(probs[1] - 0.5) < 1e-12
    assert abs(probs[0] - 0.5) < 1e-12
    assert abs(k["partition_value"] - 0.25) < 1e-12
    assert abs(sum(probs.values()) - 1.0) < 1e-12
    assert t.kernel(0.5, text) == k

    built = t.boundary(0, 0, [1], [1])
    assert t.format_boundary(built) == text

    assert t.thin([0, 1, 0], 0, 0) == [0, 0, 0]
    assert t.thin([1, 1, 0, 1], 0, 1) == [1, 1, 0, 1]

    seq = t.distance_sequence([1, 1, 0, 0, 1, 1], "ones")
    assert seq == [1, 1, 2, 3, 0, 1]
    assert t.distance_sequence([0, 0], "empty") == [math.inf, math.inf]

    assert abs(t.pushforward_marginal(0.5, [1]) - 0.375) < 1e-12
    assert t.pushforward_marginal(0.5, [0, 1, 0]) == 0.0
    assert abs(t.pattern_probability(0.5, [1, 1]) - 0.25) < 1e-12
    assert abs(t.pattern_probability(0.5, [1]) -
               t.pushforward_marginal(0.5, [1])) < 1e-9

    n, lower, upper = t.sensitivity_bounds(0.5, 0, 0, -3, 3)
    assert n == 3
    assert lower < upper
    assert abs(t.lower_bound_exact(0.5, 2, 1) - 1.0 / 15.0) < 1e-13
    assert t.witness_word(3) == 6

    try:
        t.g(1.5, 2)
        raise AssertionError("expected a rejection")
    except ValueError:
        pass

    try:
        t.parse_boundary("tailL=bogus")
        raise AssertionError("expected a rejection")
    except RuntimeError:
        pass

    print("smoke test passed")


if __name__ == "__main__":
    main()
