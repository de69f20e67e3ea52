"""Acceptance suite: one test and one printed pass/fail line per criterion."""

import math
import random
import time

from polyrep import construct
from polyrep.cli import main
from polyrep.combinatorics import (PrefixMatrix, SetFamily, check_I, check_I_prime, check_J,
                                   check_J_prime, check_K, check_K_prime, from_prefix, to_prefix)
from polyrep.formats import polygon_to_json, write_json
from polyrep.geometry import (CANONICAL_UNBOUNDED, CLOSED, OPEN, AffineForm, ProductRep, make_polygon,
                              sample_witnesses, verify_sampled)
from polyrep.graycode import catalog, iter_codes, prefix_matrix
from polyrep.minimize import brute_oracle, exact_n, lower_bound

from polygens import random_bounded, random_canonical


def test_1_construction_validity(criterion):
    construct._construct.cache_clear()
    t0 = time.perf_counter()
    bad = []
    for m in range(1, 33):
        for k in range(1, m + 1):
            fam = construct.construct_family(m, k)
            if check_J(fam) is not None or check_K(fam, k) is not None:
                bad.append((m, k))
    secs = time.perf_counter() - t0
    criterion(1, "construction validity, m<=32, k<=m", not bad and secs < 60,
              f"{528 - len(bad)}/528 cells valid, {secs:.1f}s")


def test_2_lower_bound_sandwich(criterion):
    below, not_tight = [], []
    for m in range(1, 33):
        for k in range(1, m + 1):
            n = construct.construct_family(m, k).n
            lb = max(-(-m // k), math.ceil(math.log2(m + 1)))
            assert lb == lower_bound(m, k)
            if n < lb:
                below.append((m, k))
            if k >= m and n != lb:
                not_tight.append((m, k))
    criterion(2, "achieved >= max(ceil(m/k), ceil(log2(m+1))), equality for k >= m",
              not below and not not_tight, f"below={below}, not tight={not_tight}")


def test_3_exact_vs_oracle(criterion):
    t0 = time.perf_counter()
    mismatches, cells = [], 0
    table = {}
    for m in range(1, 8):
        for k in range(1, m + 1):
            for mode in (OPEN, CLOSED):
                got = exact_n(m, k, mode).n_min
                want = brute_oracle(m, k, mode)
                table[m, k, mode] = got
                cells += 1
                if got != want:
                    mismatches.append((m, k, mode, got, want))
    secs = time.perf_counter() - t0
    extras = all(table[m, 1, mode] == m for m in range(1, 8) for mode in (OPEN, CLOSED))
    extras &= table[7, 7, OPEN] == table[7, 7, CLOSED] == 3
    criterion(3, "exact_n equals brute-force oracle, m<=7", not mismatches and extras and secs < 300,
              f"{cells} cells, {len(mismatches)} mismatches, {secs:.1f}s")


def test_4_quadrant_regression(criterion):
    P = make_polygon([AffineForm(1, 0, 0), AffineForm(0, 1, 0)], CANONICAL_UNBOUNDED)
    open_ok = verify_sampled(P, ProductRep(((1,), (1, 2)), OPEN)).ok
    closed = verify_sampled(P, ProductRep(((1,), (1, 2)), CLOSED))
    on_axis = not closed.ok and closed.counterexample[0] == 0
    h_rep = verify_sampled(P, ProductRep(((1,), (2,)), CLOSED)).ok
    criterion(4, "quadrant: {1},{1,2} open passes, closed fails on x1=0; {1},{2} closed passes",
              open_ok and on_axis and h_rep, f"counterexample {tuple(map(str, closed.counterexample or ()))}")


def _searched_codes(count):
    """Distinct codes from seeded searches for widths 3..7 and varied targets."""
    best = {n: e.best_min_run for n, e in catalog().items()}
    codes, seed = {}, 0
    while len(codes) < count:
        n = 3 + seed % 5
        target = 1 + seed // 5 % best[n]
        code = next(iter_codes(n, target, budget=20_000, seed=seed), None)
        if code is not None:
            codes[code.columns] = code
        seed += 1
    return list(codes.values())


def test_5_gray_prefixes(criterion):
    codes = [c for n in range(1, 5) for c in iter_codes(n, budget=None, canonical=False)]
    exhaustive = len(codes)
    codes += _searched_codes(200)
    failures = 0
    for code in codes:
        for m in range(1 << code.n):
            if not check_J_prime(prefix_matrix(code, m)):
                failures += 1
    criterion(5, "every Gray code prefix satisfies (J')", failures == 0,
              f"{exhaustive} exhaustive codes n<=4, 200 searched codes n<=7, {failures} failures")


def test_6_transform_equivalences(criterion):
    rng = random.Random(6)
    failures = 0
    for i in range(10_000):
        m, n = rng.randint(1, 16), rng.randint(0, 6)
        if i % 2:
            fam = SetFamily(m, tuple(rng.getrandbits(m) for _ in range(n)))
        elif m + 1 <= 1 << n:
            # distinct columns starting at zero: (I') holds, (J') may or may not
            cols = [0] + rng.sample(range(1, 1 << n), m)
            fam = from_prefix(PrefixMatrix.from_columns(n, cols))
        else:
            fam = SetFamily(m, tuple(rng.getrandbits(m) for _ in range(n)))
        k = rng.randint(1, m)
        M = to_prefix(fam)
        ok = from_prefix(M) == fam
        ok &= check_I_prime(M) == (check_I(fam) is None)
        ok &= check_J_prime(M) == (check_J(fam) is None)
        ok &= check_K_prime(M, k) == (check_K(fam, k) is None)
        failures += not ok
    criterion(6, "prefix round trip and (I)/(J)/(K) equivalences", failures == 0,
              f"10000 families, {failures} failures")


def test_7_geometric_round_trip(tmp_path, capsys, criterion):
    rng = random.Random(7)
    t0 = time.perf_counter()
    failures, runs, fewest = [], 0, None
    for i in range(100):
        m = rng.randint(3, 10)
        P = random_bounded(m + 1, rng) if i % 2 else random_canonical(m, rng)
        poly = tmp_path / f"p{i}.json"
        write_json(polygon_to_json(P), poly)
        structured = len(sample_witnesses(P))
        fewest = structured if fewest is None else min(fewest, structured)
        for k in sorted({1, 2, 3, m}):
            mode = OPEN if (i + k) % 2 else CLOSED
            rep = tmp_path / f"p{i}_k{k}.json"
            code = main(["represent", str(poly), "--k", str(k), "--mode", mode, "-o", str(rep)])
            code = code or main(["verify", str(poly), str(rep), "--seed", str(i)])
            out = capsys.readouterr().out
            runs += 1
            if code != 0 or "sampled: Pass" not in out or structured < 1000:
                failures.append((i, k, mode))
    secs = time.perf_counter() - t0
    criterion(7, "represent then verify on 100 random rational polygons",
              not failures and secs < 120,
              f"{runs} runs, {len(failures)} failures, >= {fewest} structured sample points per polygon, {secs:.1f}s")


def test_8_ratio_at_desk_scale(criterion):
    ratios = {}
    for m in (16, 32, 64):
        k = -(-m // math.ceil(math.log2(m)))
        fam = construct.construct_family(m, k)
        assert check_J(fam) is None and check_K(fam, k) is None
        ratios[m, k] = fam.n / (m / k)
    worst = max(ratios.values())
    criterion(8, "achieved_n / (m/k) <= 2 for m in {16, 32, 64}", worst <= 2.0,
              ", ".join(f"m={m},k={k}: {r:.3f}" for (m, k), r in ratios.items()))
