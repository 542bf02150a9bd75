"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line; the lines are repeated in
the pytest terminal summary.  Run standalone with
``python3 tests/test_acceptance.py`` to get just those lines.
"""

import itertools
import math
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from perfasym import embedded_reference
from perfasym.aggregates import harmonic_mean, iqm, optimality_gap, std_dev, superhuman_count, sym_hns
from perfasym.analysis import asymmetry_ratio, visual_bottleneck
from perfasym.normalization import hns, hns_by_game
from perfasym.partition import averaged_reference, derive_partition, feature_summary, reference_partition
from perfasym.reference import AGENT_METHODS, AGENT_OPTIMAL_GAMES, AVERAGED_METHOD, BASELINE_METHODS, HUMAN_OPTIMAL_GAMES
from perfasym.wm import (
    DiffusionConfig,
    Trajectory,
    apply_denoiser,
    clamp,
    dyn_loss,
    gaussian_denoiser,
    lambda_returns,
    precondition_coeffs,
    reverse_sample,
)

RESULTS = {}


@contextmanager
def criterion(num, title):
    try:
        yield
    except BaseException as exc:
        line = f"FAIL  C{num:<2} {title}: {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}"
        RESULTS[num] = line
        print(line, flush=True)
        raise
    line = f"PASS  C{num:<2} {title}"
    RESULTS[num] = line
    print(line, flush=True)


def check(cond, msg):
    if not cond:
        raise AssertionError(msg)


def close(got, want, tol, what):
    check(abs(got - want) <= tol, f"{what}: got {got:.6g}, want {want} +/- {tol}")


def runs_of(ref, method):
    return [v for vals in ref.seeds.runs(method).values() for v in vals]


def test_c01_hns_means():
    with criterion(1, "HNS means from embedded raw scores (+/-0.005, <1 s)"):
        start = time.perf_counter()
        ref = embedded_reference()
        want = {"JEDI": 1.361, "DIAMOND": 1.459, "STORM": 1.222, "DreamerV3": 1.134, "IRIS": 1.046, "TWM": 0.956}
        for m, v in want.items():
            per_game = hns_by_game(ref.full, m)
            close(sum(per_game.values()) / len(per_game), v, 0.005, f"{m} mean")
        elapsed = time.perf_counter() - start
        check(elapsed < 1.0, f"took {elapsed:.2f} s")


def test_c02_medians():
    with criterion(2, "medians (+/-0.005)"):
        ref = embedded_reference()
        for m, v in {"JEDI": 0.361, "TWM": 0.505, "DreamerV3": 0.503}.items():
            close(float(np.median(list(hns_by_game(ref.full, m).values()))), v, 0.005, f"{m} median")


def test_c03_iqm():
    with criterion(3, "IQM over 130 seed runs (+/-0.01)"):
        ref = embedded_reference()
        for m, v in {"JEDI": 0.609, "DIAMOND": 0.641, "STORM": 0.561}.items():
            runs = runs_of(ref, m)
            check(len(runs) == 130, f"{m}: {len(runs)} runs")
            close(iqm(runs), v, 0.01, f"{m} IQM")


def test_c04_optimality_gap():
    with criterion(4, "per-run optimality gap (+/-0.02)"):
        ref = embedded_reference()
        for m, v in {"JEDI": 0.480, "DIAMOND": 0.480, "STORM": 0.472}.items():
            close(optimality_gap(runs_of(ref, m)), v, 0.02, f"{m} optimality gap")


def test_c05_superhuman():
    with criterion(5, "superhuman counts (exact)"):
        ref = embedded_reference()
        want = {"JEDI": 11, "DIAMOND": 11, "IRIS": 10, "STORM": 9, "DreamerV3": 9, "TWM": 8}
        got = {m: superhuman_count(hns_by_game(ref.full, m)) for m in want}
        check(got == want, f"got {got}")


def test_c06_partition():
    with criterion(6, "13/13 split from averaged agent and from the four baselines"):
        ref = embedded_reference()
        avg = derive_partition(averaged_reference(ref.averaged, [AVERAGED_METHOD]), 0.75)
        check(sorted(avg.agent_optimal) == sorted(AGENT_OPTIMAL_GAMES), f"averaged route AO = {avg.agent_optimal}")
        check(sorted(avg.human_optimal) == sorted(HUMAN_OPTIMAL_GAMES), "averaged route HO mismatch")
        check(avg["Freeway"].value == "AO", "Freeway not Agent-Optimal")
        baseline_ref = averaged_reference(ref.full, BASELINE_METHODS)
        base = derive_partition(baseline_ref, 0.75)
        moved = sorted(g for g in base.labels if base[g] != avg[g])
        detail = ", ".join(f"{g} -> {base[g].value} (mean baseline HNS {baseline_ref[g]:.4f})" for g in moved)
        check(not moved, f"baseline route differs on {detail}")


def test_c07_sym_hns():
    with criterion(7, "harmonic-mean worked examples and JEDI ranked first by Sym-HNS"):
        for (a, b), want in {(1, 10): 1.82, (5.5, 5.5): 5.5, (0.1, 11): 0.20, (0.2, 10): 0.39}.items():
            got = round(harmonic_mean(a, b), 2)
            check(got == want, f"harm({a},{b}) = {got}, want {want}")
        ref = embedded_reference()
        part = reference_partition()
        scores = {m: sym_hns(hns_by_game(ref.full, m), part) for m in AGENT_METHODS}
        best = max(scores, key=scores.get)
        check(best == "JEDI", f"top method is {best}: {scores}")


def test_c08_asymmetry_ratio():
    with criterion(8, "DIAMOND AO/HO ratio in [19, 23], JEDI below DIAMOND and IRIS"):
        ref = embedded_reference()
        part = reference_partition()
        ratio = {m: asymmetry_ratio(hns_by_game(ref.full, m), part) for m in ("DIAMOND", "IRIS", "JEDI")}
        check(19 <= ratio["DIAMOND"] <= 23, f"DIAMOND ratio {ratio['DIAMOND']:.3f}")
        check(ratio["JEDI"] < ratio["DIAMOND"] and ratio["JEDI"] < ratio["IRIS"], f"ratios {ratio}")


def test_c09_visual_bottleneck():
    with criterion(9, "bottleneck rule flags {Breakout, Assault}; JEDI Breakout 5.35 +/- 0.01"):
        ref = embedded_reference()
        flagged = visual_bottleneck(ref.bottleneck_hns)
        check(sorted(flagged) == ["Assault", "Breakout"], f"flagged {flagged}")
        meta = ref.full.meta["Breakout"]
        close(hns(155.6, meta.random_score, meta.human_score), 5.35, 0.01, "JEDI Breakout HNS")


def test_c10_feature_summary():
    with criterion(10, "HO/AO shooter counts 7/2 and HO mean actions > AO"):
        ref = embedded_reference()
        fs = feature_summary(reference_partition(), ref.full.meta)
        check(fs["HO"]["shooter_count"] == 7 and fs["AO"]["shooter_count"] == 2, f"shooter counts {fs}")
        check(fs["HO"]["mean_num_actions"] > fs["AO"]["mean_num_actions"], f"action means {fs}")


def test_c11_std():
    with criterion(11, "std dev JEDI 2.04, DIAMOND 2.08 (+/-0.05)"):
        ref = embedded_reference()
        for m, v in {"JEDI": 2.04, "DIAMOND": 2.08}.items():
            close(std_dev(runs_of(ref, m)), v, 0.05, f"{m} std")


def _target_moments(mu, sd, clamped):
    if not clamped:
        return mu, sd * sd
    x, w = np.polynomial.hermite_e.hermegauss(80)
    w = w / w.sum()
    y = clamp(mu + sd * x)
    m = float(np.sum(w * y))
    return m, float(np.sum(w * (y - m) ** 2))


def _lambda_oracle(rewards, values, dones, gamma, lam):
    T = len(rewards)
    out = []
    for t in range(T):
        def n_step(n):
            total, disc = 0.0, 1.0
            for k in range(t, t + n):
                total += disc * rewards[k]
                disc *= gamma * (1 - dones[k])
            return total + disc * values[t + n]
        h = T - t
        out.append(sum((1 - lam) * lam ** (n - 1) * n_step(n) for n in range(1, h)) + lam ** (h - 1) * n_step(h))
    return out


def test_c12_world_model_numerics():
    with criterion(12, "world-model numerics (a)-(f), < 30 s"):
        start = time.perf_counter()
        # (a) preconditioning identities
        for sd in (0.5, 1.0, 2.0):
            for s in np.logspace(-3, 3, 121):
                c_skip, c_out, c_in, c_noise = precondition_coeffs(s, sd)
                tot = s * s + sd * sd
                for got, want, what in ((c_in * c_in * tot, 1.0, "c_in"), (c_skip * tot, sd * sd, "c_skip"),
                                        (c_out / (s * sd * c_in), 1.0, "c_out"), (4 * c_noise, math.log(s), "c_noise")):
                    check(abs(got - want) <= 1e-12 * max(1.0, abs(want)), f"(a) {what} at sigma={s}, sd={sd}")
        # (b) unclamped denoiser error equals c_out^2 * loss
        rng = np.random.default_rng(0)
        for _ in range(200):
            sigma, sd = float(np.exp(rng.uniform(-6, 6))), float(rng.uniform(0.2, 3))
            z0 = rng.normal(size=(16, 8, 8))
            zs = z0 + sigma * rng.normal(size=z0.shape)
            w = rng.normal(size=z0.shape)
            raw = lambda x, ctx, w=w: np.tanh(w * x) + 0.1 * ctx.c_noise  # noqa: E731
            lhs = float(np.sum((apply_denoiser(raw, zs, sigma, sigma_data=sd, clamp_scale=None) - z0) ** 2))
            rhs = precondition_coeffs(sigma, sd)[1] ** 2 * dyn_loss(raw, z0, zs, sigma, sigma_data=sd)
            check(abs(lhs - rhs) <= 1e-9 * abs(rhs), f"(b) sigma={sigma}: {lhs} vs {rhs}")
        # (c) Gaussian sampler moments, 32 steps, 1e4 draws.  The clamped sampler
        # targets clamp(X) with X ~ Normal(mu, sd^2); its moments come from quadrature.
        n = 10_000
        for mu, sd, clamp_out in ((0.5, 1.0, True), (0.5, 1.0, False), (-0.2, 0.5, True)):
            t_mean, t_var = _target_moments(mu, sd, clamp_out)
            cfg = DiffusionConfig(steps=32, sigma_data=sd)
            z = reverse_sample(gaussian_denoiser(mu, sd), None, cfg, np.random.default_rng(1), shape=(1,), n=n,
                               clamp_output=clamp_out)
            check(abs(z.mean() - t_mean) < 5 * sd / math.sqrt(n), f"(c) mean {z.mean():.4f} vs {t_mean:.4f}")
            check(abs(z.var() / t_var - 1) < 0.2, f"(c) variance {z.var():.4f} vs {t_var:.4f}")
        # (d) lambda-returns against the forward-sum oracle, plus the hand example
        for T in range(1, 5):
            for rewards in itertools.product((-1.0, 0.0, 0.5), repeat=T):
                for dones in itertools.product((0, 1), repeat=T):
                    for values in itertools.product((0.0, 1.0), repeat=T + 1):
                        traj = Trajectory(rewards, values, dones, gamma=0.985, lam=0.95)
                        got = lambda_returns(traj)
                        want = _lambda_oracle(rewards, values, dones, 0.985, 0.95)
                        check(np.max(np.abs(got - want)) <= 1e-12, f"(d) {rewards} {dones} {values}")
        hand = lambda_returns(Trajectory((1, 0, 1), (0.5,) * 4, gamma=0.9, lam=0.8))
        check(np.allclose(hand, [1.9064, 1.134, 1.45], rtol=0, atol=1e-4), f"(d) hand example {hand}")
        # (e) one Euler step with a constant denoiser lands on mu bit-exactly
        mu = np.random.default_rng(2).normal(size=(16, 8, 8))
        out = reverse_sample(lambda z, s, c: mu, None, DiffusionConfig(steps=1), np.random.default_rng(3),
                             clamp_output=False)
        check(np.array_equal(out, mu), "(e) steps=1 output differs from mu")
        # (f) clamp bounds, oddness and near-identity
        xs = np.concatenate([np.linspace(-1e4, 1e4, 20001), np.linspace(-0.3, 0.3, 6001)])
        y = clamp(xs)
        check(np.all(np.abs(y) <= 3.0) and np.array_equal(clamp(-xs), -y), "(f) bounds/oddness")
        small = np.abs(xs) <= 0.3
        err = np.abs(y[small] - xs[small])
        check(np.all(err <= np.abs(xs[small]) ** 3 / 27 * 1.01 + 2 * np.spacing(np.abs(xs[small]))), "(f) near-identity")
        elapsed = time.perf_counter() - start
        check(elapsed < 30, f"took {elapsed:.1f} s")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "perfasym", *argv], capture_output=True, check=True).stdout


def test_c13_determinism():
    with criterion(13, "bootstrap and wm sample byte-identical across runs and --jobs"):
        boot = ("bootstrap", "--builtin", "--method", "JEDI,DIAMOND", "--metric", "iqm", "--resamples", "1000",
                "--seed", "42")
        outs = [_cli(*boot), _cli(*boot), _cli(*boot, "--jobs", "4")]
        check(outs[0] == outs[1] == outs[2], "bootstrap output differs")
        sample = ("wm", "sample", "--n", "8", "--steps", "3", "--s-churn", "1", "--seed", "42")
        outs = [_cli(*sample), _cli(*sample), _cli(*sample, "--jobs", "4")]
        check(outs[0] == outs[1] == outs[2], "wm sample output differs")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "--no-header", "-p", "no:cacheprovider"]))
