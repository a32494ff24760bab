"""Acceptance run: one PASS/FAIL line per criterion, collected in the
terminal summary (see conftest.py) and printed directly when run as a script."""

import random
import subprocess
import sys

import pytest

from graphcomp import range_encodings as rng_enc
from graphcomp import weihrauch as wr
from graphcomp.codec import Horizon
from graphcomp.graph import components
from graphcomp.verify import run_suites

SEED = 20240611
RESULTS: list[str] = []


def _report(n: int, what: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {what}"
    RESULTS.append(line + (f" ({detail})" if detail else ""))
    assert ok, RESULTS[-1]


def _suite(name):
    (res,) = run_suites(name, SEED)
    return res


def _detail(res) -> str:
    return f"{res.trials} checks, {res.failures} failures, {res.inconclusive} inconclusive"


def test_criterion_1_encoder_round_trip():
    res = _suite("encoder")
    _report(1, "range decoding from components, 100 prefixes x 16 values",
            res.failures == 0 and res.inconclusive == 0 and res.trials == 1600, _detail(res))


def test_criterion_2_structural_variants():
    res = _suite("variants")
    _report(2, "standard slices acyclic, bounded slices respect the bound",
            res.failures == 0 and res.trials == 300, _detail(res))


def test_criterion_3_priority_construction():
    res = _suite("fc")
    # inconclusive answers are the n at or past each run's guard index
    _report(3, "interval blocks and guarded range decoding, 100 runs x 200 stages",
            res.failures == 0 and res.trials == 20000 and res.inconclusive < res.trials,
            _detail(res))


def test_criterion_4_least_m():
    H = 64
    got = {}
    for text in ("eq", "geq:2"):
        theta = rng_enc.parse_theta(text, 3)
        g = rng_enc.Sigma2Graph(theta, Horizon(1, 1, H))
        got[text] = (rng_enc.decode_least_m(components(g.slice()), theta, Horizon(1, 1, H)),
                     rng_enc.brute_least_m(theta, H))
    res = _suite("sigma2")
    ok = got == {"eq": (0, 0), "geq:2": (2, 2)} and res.failures == 0 and res.inconclusive == 0
    _report(4, "least m = 0 and 2 with k=3, 49-vertex samples always share a block", ok,
            f"{got}; {_detail(res)}")


def test_criterion_5_cover_decomposition():
    res = _suite("cover")
    _report(5, "decomposition from a cover matches the oracle on 100 slices",
            res.failures == 0 and res.trials == 100, _detail(res))


def test_criterion_6_weak_partitions():
    res = _suite("partitions")
    _report(6, "weak partition blocks recovered and graph partitions round-trip",
            res.failures == 0 and res.inconclusive == 0, _detail(res))


def test_criterion_7_reductions():
    red = _suite("reductions")
    cn = _suite("cn")
    ok = red.failures == cn.failures == 0 and red.inconclusive == cn.inconclusive == 0
    _report(7, "every reduction yields oracle-valid solutions, closed choice decodes the least gap",
            ok, f"reductions {_detail(red)}; closed choice {_detail(cn)}")


def test_criterion_8_tolerance():
    ok = wr.differing_edge_indices(1024) == [0] and all(
        wr.block_families_disjoint(h) for h in (8, 16, 32))
    _report(8, "graphs differing in one edge have disjoint block families at 8, 16, 32", ok)


RUNS = [
    ["encode", "--f", "2,0,3,7,1", "--depth", "3", "--format", "dot"],
    ["fc", "--f", "5,2,6,0,9,3", "--format", "trace"],
    ["sigma2", "--theta", "geq:2", "--horizon", "1,1,24"],
    ["reduce", "--name", "lpohat_to_fc3", "--seed", "11"],
    ["reduce", "--name", "dk_to_cn", "--k", "2", "--seed", "5"],
    ["verify", "--suite", "cn", "--seed", "3"],
]


def test_criterion_9_determinism(tmp_path):
    mismatched = []
    for k, argv in enumerate(RUNS):
        blobs = []
        for rep in range(2):
            target = tmp_path / f"{k}_{rep}.out"
            proc = subprocess.run([sys.executable, "-m", "graphcomp", *argv, "--out", str(target)],
                                  capture_output=True)
            assert proc.returncode == 0, proc.stderr.decode()
            blobs.append(target.read_bytes())
        if blobs[0] != blobs[1] or not blobs[0]:
            mismatched.append(argv[0])
    _report(9, "repeated CLI runs with equal seeds are byte-identical", not mismatched,
            f"{len(RUNS)} commands" + (f", differing: {mismatched}" if mismatched else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
