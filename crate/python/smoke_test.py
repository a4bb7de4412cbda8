"""Smoke test for the tailspan Python extension.

Build and install first:  maturin develop -m crates/python/Cargo.toml
"""

import math
import os
import tempfile

import tailspan


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    n = 64
    char = tailspan.synth({"kind": "character", "frequency": 5, "n": n, "seed": 0})
    assert len(char) == n
    assert close(char.fourier_ratio(), 1.0)

    delta = tailspan.synth({"kind": "delta", "position": 3, "n": n, "seed": 0})
    assert close(delta.fourier_ratio(), math.sqrt(n))

    noise = tailspan.synth({"kind": "gaussian_noise", "real_only": False, "n": 200, "seed": 1})
    back = noise.dft().inverse_dft().values()
    assert max(abs(a - b) for a, b in zip(back, noise.values())) < 1e-10

    span = tailspan.greedy_span(noise, 1.5)
    assert span["all_spanned"] and span["verified"]
    lam = span["lambda"]
    for gamma, coeffs in span["certificates"]:
        assert sum(c * l for c, l in zip(coeffs, lam)) % 200 == gamma

    small = tailspan.Signal.from_real([5, 0.1, 4, 0.2, 0.1, 6, 0.3, 0.1, 0.2, 4.5])
    minimal = tailspan.minimal_lambda(small, 1.0)
    assert len(minimal) <= len(tailspan.greedy_span(small, 1.0)["lambda"])

    report = tailspan.bound_report(tailspan.Signal.from_real([1.0] * 526), 1.04)
    assert report["strong_regime"]
    assert tailspan.regime_check(1.4136, 526) and not tailspan.regime_check(10.7853, 526)

    sweep = tailspan.sweep(noise, [1.2, 1.0, 1.4], dataset="noise")
    assert [r["eta"] for r in sweep["rows"]] == [1.0, 1.2, 1.4]
    sizes = [r["gamma_size"] for r in sweep["rows"]]
    assert sizes == sorted(sizes, reverse=True)

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "s.csv")
        with open(path, "w") as fh:
            fh.write("t,value\n0,1\n1,NA\n2,3\n")
        s = tailspan.load_series(path, "value", interpolate_missing=True)
        assert [z.real for z in s.values()] == [1.0, 2.0, 3.0]
        try:
            tailspan.load_series(path, "value")
        except OSError:
            pass
        else:
            raise AssertionError("missing cell accepted")

    try:
        tailspan.Signal.from_real([0.0, 0.0]).fourier_ratio()
    except ValueError:
        pass
    else:
        raise AssertionError("zero signal accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
