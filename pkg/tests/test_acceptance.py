"""Acceptance suite: one test per criterion, each printing a PASS line.

Expected values are frozen here independently of the package's own embedded
constants: the 54-row table (integer columns and the printed one-decimal
bound), the 30 record-gap triples, and prime-count anchors.
"""

import io
import math
import time

import numpy as np
import pytest

from primegaps import bounds
from primegaps.cli import main
from primegaps.gaps import gap_stream
from primegaps.sieve import primes_up_to
from primegaps.verify import RunConfig, read_checkpoint, resume, run_verification

# The full reference table as exact CSV lines (n,p,gap,starred,margin,bound).
EXPECTED_TABLE1_CSV = [
    "1,2,1,true,1,4.3",
    "2,3,2,true,1,3.6",
    "3,5,2,false,1,3.7",
    "4,7,4,true,1,4.1",
    "5,11,2,false,1,5.0",
    "6,13,4,false,2,5.5",
    "7,17,2,false,2,6.4",
    "8,19,4,false,1,6.8",
    "9,23,6,true,2,7.7",
    "10,29,2,false,2,8.9",
    "11,31,6,false,2,9.3",
    "12,37,4,false,3,10.5",
    "13,41,2,false,3,11.3",
    "14,43,4,false,2,11.7",
    "15,47,6,false,3,12.5",
    "16,53,6,false,3,13.6",
    "17,59,2,false,4,14.7",
    "18,61,6,false,4,15.1",
    "19,67,4,false,4,16.2",
    "20,71,2,false,4,16.9",
    "21,73,6,false,3,17.2",
    "22,79,4,false,4,18.3",
    "23,83,6,false,4,19.0",
    "24,89,8,true,6,20.1",
    "25,97,4,false,5,21.4",
    "26,101,2,false,5,22.1",
    "27,103,4,false,4,22.4",
    "28,107,2,false,4,23.1",
    "29,109,4,false,4,23.4",
    "30,113,14,true,4,24.1",
    "99,523,18,true,15,83.7",
    "154,887,20,true,21,130.8",
    "189,1129,22,true,25,160.8",
    "217,1327,34,true,26,184.7",
    "1183,9551,36,true,126,1042.3",
    "1831,15683,44,true,184,1623.5",
    "2225,19609,52,true,223,1984.1",
    "3385,31397,72,true,330,3032.3",
    "14357,155921,86,true,1165,13040.1",
    "30802,360653,96,true,2386,28185.6",
    "31545,370261,112,true,2439,28877.2",
    "40933,492113,114,true,3123,37547.4",
    "103520,1349533,118,true,7325,95608.1",
    "104071,1357201,132,true,7349,96112.8",
    "149689,2010733,148,true,10304,138537.5",
    "325852,4652353,154,true,21244,303028.0",
    "1094421,17051707,180,true,65621,1024018.3",
    "1319945,20831323,210,true,78221,1236136.0",
    "2850174,47326693,220,true,160910,2677972.3",
    "6957876,122164747,222,true,373308,6560632.0",
    "10539432,189695659,234,true,551956,9952066.6",
    "10655462,191912783,248,true,557801,10062250.1",
    "20684332,387096133,250,true,1044533,19575833.9",
    "23163298,436273009,282,true,1163064,21930122.7",
]

# The 30 record gaps up to 436273009 as (n, p, gap).
EXPECTED_MAXIMAL = [
    (1, 2, 1),
    (2, 3, 2),
    (4, 7, 4),
    (9, 23, 6),
    (24, 89, 8),
    (30, 113, 14),
    (99, 523, 18),
    (154, 887, 20),
    (189, 1129, 22),
    (217, 1327, 34),
    (1183, 9551, 36),
    (1831, 15683, 44),
    (2225, 19609, 52),
    (3385, 31397, 72),
    (14357, 155921, 86),
    (30802, 360653, 96),
    (31545, 370261, 112),
    (40933, 492113, 114),
    (103520, 1349533, 118),
    (104071, 1357201, 132),
    (149689, 2010733, 148),
    (325852, 4652353, 154),
    (1094421, 17051707, 180),
    (1319945, 20831323, 210),
    (2850174, 47326693, 220),
    (6957876, 122164747, 222),
    (10539432, 189695659, 234),
    (10655462, 191912783, 248),
    (20684332, 387096133, 250),
    (23163298, 436273009, 282),
]


@pytest.fixture(scope="module")
def primes_1e7() -> np.ndarray:
    return primes_up_to(10_000_000)


@pytest.fixture(scope="module")
def primes_chain_cover() -> np.ndarray:
    # covers p + pi(p) for every prime p <= 1e8 (1e8 + 5761455 + slack)
    return primes_up_to(105_800_000)


def _cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_criterion_1_table1_reproduction(capsys):
    t0 = time.perf_counter()
    code, out, err = _cli(capsys, "table1", "--format", "csv")
    full_elapsed = time.perf_counter() - t0
    assert code == 0, f"table1 exited {code}: {err}"
    lines = out.splitlines()
    assert lines[0] == "n,p,gap,starred,margin,bound"
    assert lines[1:] == EXPECTED_TABLE1_CSV
    assert "mismatch" not in err
    # printed bound within 0.05 of the recomputed value on every row
    for line in lines[1:]:
        _, p, _, _, _, printed = line.split(",")
        recomputed = (int(p) + 1) / math.log(int(p))
        assert abs(recomputed - float(printed)) <= 0.05
    assert full_elapsed < 600, f"full table run took {full_elapsed:.1f}s"

    t0 = time.perf_counter()
    code, out, err = _cli(capsys, "table1", "--max-prime", "1000000", "--format", "csv")
    subset_elapsed = time.perf_counter() - t0
    assert code == 0
    assert out.splitlines()[1:] == [
        line for line in EXPECTED_TABLE1_CSV if int(line.split(",")[1]) <= 1_000_000
    ]
    assert subset_elapsed < 5, f"1e6 subset took {subset_elapsed:.2f}s"
    print(
        f"ACCEPTANCE 1 PASS: table1 matches all 54 reference rows "
        f"(full {full_elapsed:.1f}s, 1e6 subset {subset_elapsed:.2f}s)"
    )


def test_criterion_2_maximal_gap_records(capsys):
    code, out, err = _cli(
        capsys, "gaps", "--limit", "436273009", "--maximal-only", "--format", "csv"
    )
    assert code == 0, err
    lines = out.splitlines()
    assert lines[0] == "n,p,gap,is_maximal,theorem1_margin"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 30
    assert [(int(r[0]), int(r[1]), int(r[2])) for r in rows] == EXPECTED_MAXIMAL
    assert all(r[3] == "true" for r in rows)
    print("ACCEPTANCE 2 PASS: exactly the 30 known record gaps up to 436273009")


def test_criterion_3_theorem1_holds_to_1e8(capsys):
    code, out, err = _cli(
        capsys, "verify", "--limit", "100000000", "--checks", "theorem1", "--format", "csv"
    )
    assert code == 0, err
    lines = out.splitlines()
    assert "# primes_processed = 5761455" in lines
    assert "# check theorem1: applied=5761455 violations=0 first=-" in lines
    print("ACCEPTANCE 3 PASS: gap(p_n) <= n for all 5761455 primes up to 1e8, exit 0")


def test_criterion_4_gap_bounds_hold_to_1e7(capsys):
    code, out, err = _cli(
        capsys,
        "verify",
        "--limit",
        "10000000",
        "--checks",
        "corollary1,empirical",
        "--format",
        "csv",
    )
    assert code == 0, err
    lines = out.splitlines()
    assert "# primes_processed = 664579" in lines
    assert "# check corollary1: applied=664577 violations=0 first=-" in lines
    assert "# check empirical: applied=664579 violations=0 first=-" in lines
    print("ACCEPTANCE 4 PASS: corollary1 and empirical bounds clean up to 1e7, exit 0")


def test_criterion_5_dusart_sandwich(primes_1e7):
    ps = primes_1e7
    counts = np.arange(1, len(ps) + 1, dtype=np.int64)
    mask = ps >= 60184
    x = ps[mask].astype(np.float64)
    pi_x = counts[mask].astype(np.float64)
    assert np.all(pi_x >= x / (np.log(x) - 1.0))
    assert np.all(pi_x <= x / (np.log(x) - 1.1))
    # every multiple of 1e4 in range, plus a dense geometric grid of composites
    multiples = np.arange(70_000, 10_000_001, 10_000, dtype=np.int64)
    dense = np.unique(np.geomspace(60184, 10_000_000, 5000).astype(np.int64))
    for grid in (multiples, dense):
        pi_grid = np.searchsorted(ps, grid, side="right").astype(np.float64)
        g = grid.astype(np.float64)
        assert np.all(pi_grid >= g / (np.log(g) - 1.0))
        assert np.all(pi_grid <= g / (np.log(g) - 1.1))
    # scalar API spot checks agree
    assert bounds.dusart_lower(10**6) <= 78498 <= bounds.dusart_upper(10**6)
    print(
        "ACCEPTANCE 5 PASS: dusart bounds sandwich pi(x) on [60184, 1e7] "
        "(every prime, every multiple of 1e4, dense grid)"
    )


def test_criterion_6_proof_chain_on_sampled_primes(primes_chain_cover):
    ps = primes_chain_cover
    rng = np.random.default_rng(20260814)
    targets = np.exp(rng.uniform(math.log(60185), math.log(1e8), size=1000))
    idx = np.searchsorted(ps, targets, side="left")
    sampled_p = ps[idx]
    sampled_pi = idx + 1
    window_ends = sampled_p + sampled_pi
    n_p = np.searchsorted(ps, window_ends, side="right") - sampled_pi
    for p, pi_p, count in zip(sampled_p.tolist(), sampled_pi.tolist(), n_p.tolist()):
        stages = bounds.proof_chain_check(int(p), int(pi_p), int(count))
        s0, s1, s2, s3, s4 = (s.value for s in stages)
        assert s0 > s1 > s2, f"chain head out of order at p={p}"
        assert abs(s2 - s3) <= 1e-9 * abs(s3), f"S2/S3 identity broken at p={p}"
        assert s3 > s4 > 1.0, f"chain tail out of order at p={p}"
        assert bounds.chain_tail_excess(int(p)) < 0
    print("ACCEPTANCE 6 PASS: S0>S1>S2=S3>S4>1 and negative tail excess at 1000 sampled primes")


def test_criterion_7_oracle_cross_validation(oracle_flags, primes_1e5):
    # primality: segmented sieve vs independent trial division on [2, 1e5]
    sieve_flags = np.zeros(100_001, dtype=bool)
    sieve_flags[primes_1e5] = True
    assert np.array_equal(sieve_flags[2:], oracle_flags[2:100_001])
    # gap and margin of every record vs oracle-derived prefix counts
    cnt = np.cumsum(oracle_flags)  # cnt[k] = number of primes <= k
    checked = 0
    for rec in gap_stream(100_000):
        assert cnt[rec.p + rec.gap] == cnt[rec.p] + 1  # successor is next prime
        assert cnt[rec.p + rec.gap - 1] == cnt[rec.p]  # nothing in between
        assert rec.theorem1_margin == cnt[rec.p + rec.n] - cnt[rec.p]
        checked += 1
    assert checked == 9592
    print("ACCEPTANCE 7 PASS: sieve, gaps and margins agree with trial division up to 1e5")


def test_criterion_8_resume_equivalence_at_1e7(tmp_path):
    checks = ("theorem1", "bertrand")
    limit = 10_000_000
    interval = 25_000

    def fmt(r):
        return f"{r.n},{r.p},{r.gap},{str(r.is_maximal).lower()},{r.theorem1_margin}"

    def assemble(record_lines, summary):
        body = ["n,p,gap,is_maximal,theorem1_margin"]
        body.extend(record_lines)
        body.extend("# " + line for line in summary.canonical_lines())
        return "\n".join(body) + "\n"

    full_lines: list[str] = []
    full_summary = run_verification(
        RunConfig(limit=limit, checks=checks, emit="all"),
        sink=lambda r: full_lines.append(fmt(r)),
    )
    full_text = assemble(full_lines, full_summary)
    assert full_summary.clean

    class Interrupt(Exception):
        pass

    rng = np.random.default_rng(8)
    points = sorted(int(x) for x in rng.integers(30_000, 600_000, size=10))
    for i, point in enumerate(points):
        path = tmp_path / f"ck{i}"
        config = RunConfig(
            limit=limit,
            checks=checks,
            emit="all",
            checkpoint_path=str(path),
            checkpoint_interval=interval,
        )
        partial: list[str] = []

        def sink(rec):
            if len(partial) >= point:
                raise Interrupt
            partial.append(fmt(rec))

        with pytest.raises(Interrupt):
            run_verification(config, sink=sink)
        ck = read_checkpoint(path)
        assert 0 < ck.last_n <= point
        resumed_lines: list[str] = []
        resumed_summary = resume(
            ck, config, sink=lambda r: resumed_lines.append(fmt(r))
        )
        composed = assemble(partial[: ck.last_n] + resumed_lines, resumed_summary)
        assert composed == full_text, f"resume at point {point} diverged"
    print("ACCEPTANCE 8 PASS: 10 interrupted runs at 1e7 compose byte-identically")


def test_criterion_9_witness_construction(capsys):
    code, out, err = _cli(capsys, "witness", "4", "--format", "csv")
    assert code == 0, err
    assert out.splitlines() == ["m,p,gap,gap_lower_bound", "4,23,6,4"]
    code, out, err = _cli(capsys, "witness", "5", "--format", "csv")
    assert code == 0, err
    assert out.splitlines() == ["m,p,gap,gap_lower_bound", "5,113,14,5"]
    print("ACCEPTANCE 9 PASS: witness m=4 -> (23, 6) and m=5 -> (113, 14)")
