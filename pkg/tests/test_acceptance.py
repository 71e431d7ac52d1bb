"""
Acceptance gate: every numbered criterion below runs at its stated size and
prints one verdict line.  Run with `pytest tests/test_acceptance.py -v -s`.

The only intentionally red check is the substitution-identity test at the
end of criterion 1, which is recorded as a strict expected failure: the
claimed difference between the second and third generating families is
arithmetically inconsistent with their (verified) sizes, and the faithful
assertion therefore cannot pass.  See the decisions ledger.
"""

import random
import time

import pytest

from bfcalc import bfgroup as bf
from bfcalc import selftest
from bfcalc.cli import format_element, main, parse_element
from bfcalc.generators import (
    enumerate_irreducible,
    gen1_set,
    gen2_set,
    gen3_set,
)
from bfcalc.trees import Tree

PER_CONFIG_BUDGET_SECONDS = 600


def _verdict(tag: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" — {detail}" if detail else ""
    print(f"ACCEPTANCE {tag}: {status}{suffix}")


def _assert_suite(tag: str, result) -> None:
    detail = "; ".join(
        f"{c.label}: {c.violations}/{c.total}" for c in result.checks)
    _verdict(tag, result.passed, f"{detail} ({result.elapsed_seconds:.1f}s)")
    assert result.passed, f"{tag}: {detail}"
    assert result.elapsed_seconds <= PER_CONFIG_BUDGET_SECONDS


# --- criterion 1: generator counts -----------------------------------------

def test_criterion_1_generator_counts():
    start = time.perf_counter()
    checks = []

    t0 = time.perf_counter()
    checks.append(("|gen1(2)| = 10", len(gen1_set(2)) == 10, time.perf_counter() - t0))
    for n in (3, 4, 5, 6):
        t0 = time.perf_counter()
        checks.append((f"|gen1({n})| = n^2+2n+1",
                       len(gen1_set(n)) == n * n + 2 * n + 1,
                       time.perf_counter() - t0))

    t0 = time.perf_counter()
    specs = enumerate_irreducible(2)
    profile = sorted((s.strands for s in specs))
    ok = len(specs) == 8 and [profile.count(m) for m in (2, 3, 4, 5)] == [1, 3, 3, 1]
    checks.append(("|irreducible(2)| = 8 with profile 1/3/3/1", ok,
                   time.perf_counter() - t0))
    for n, expected in ((3, 13), (4, 21), (5, 31), (6, 43)):
        t0 = time.perf_counter()
        checks.append((f"|irreducible({n})| = {expected}",
                       len(enumerate_irreducible(n)) == expected,
                       time.perf_counter() - t0))

    t0 = time.perf_counter()
    checks.append(("|gen2(3, k=3)| = 25",
                   len(gen2_set(3, bf.pn_context(3))) == 25,
                   time.perf_counter() - t0))

    # The paper's closed form n^3/2 + 3n/2 + 1 for the third family; it
    # gives 39 at n = 4 (the criterion text's "37" contradicts the formula
    # it cites; see the decisions ledger).
    for n, expected in ((2, 9), (3, 19), (4, 39)):
        t0 = time.perf_counter()
        checks.append((f"|gen3({n})| = {expected}",
                       len(gen3_set(n)) == expected,
                       time.perf_counter() - t0))

    slow = [label for label, _, elapsed in checks if elapsed >= 1.0]
    failed = [label for label, ok, _ in checks if not ok]
    _verdict("1 (generator counts)", not failed and not slow,
             f"{len(checks)} exact counts, total {time.perf_counter() - start:.2f}s")
    assert not failed, failed
    assert not slow, f"count computations exceeding 1s: {slow}"


@pytest.mark.xfail(strict=True,
                   reason="the claimed reduction (n-1)n/2 contradicts the "
                          "verified family sizes; the actual difference is "
                          "n(n+1)/2 for every n checked")
def test_criterion_1_remark_substitution_identity():
    differences = {
        n: len(gen2_set(n, bf.pn_context(n))) - len(gen3_set(n))
        for n in (3, 4, 5)
    }
    ok = all(differences[n] == n * (n - 1) // 2 for n in (3, 4, 5))
    _verdict("1 (remark substitution identity)", ok,
             f"observed differences {differences}, claimed "
             f"{ {n: n * (n - 1) // 2 for n in (3, 4, 5)} }")
    assert ok


# --- criterion 2: generating-set round trips --------------------------------

@pytest.mark.parametrize("arity,set_name,seed", [
    (2, "gen1", 201), (2, "gen2", 202), (2, "gen3", 203),
    (3, "gen1", 204), (3, "gen2", 205), (3, "gen3", 206),
])
def test_criterion_2_generating_round_trips(arity, set_name, seed):
    result = selftest.generating_suite(arity, set_name, samples=100, seed=seed)
    _assert_suite(f"2 ({set_name} n={arity}, 100 samples)", result)


# --- criterion 3: bi-order suite --------------------------------------------

@pytest.mark.parametrize("arity,hmode,seed", [
    (2, "trivial", 301), (2, "pn", 302), (3, "trivial", 303), (3, "pn", 304),
])
def test_criterion_3_biorder(arity, hmode, seed):
    result = selftest.orders_suite(arity, hmode, samples=300, seed=seed)
    _assert_suite(f"3 (orders n={arity}, H={hmode}, 300 samples)", result)


# --- criterion 4: sign stability under the defining relation ----------------

@pytest.mark.parametrize("arity,seed", [(2, 401), (3, 402)])
def test_criterion_4_sign_stability(arity, seed):
    result = selftest.sign_stability_suite(arity, samples=300, seed=seed)
    _assert_suite(f"4 (sign stability n={arity}, 300 samples)", result)


# --- criterion 5: braid-layer oracles ---------------------------------------

def test_criterion_5_braid_layer():
    result = selftest.braid_layer_suite(
        seed=501, reconstruction_samples=200, positivity_samples=300)
    _assert_suite("5 (braid-layer oracles)", result)


# --- criterion 6: group axioms ----------------------------------------------

@pytest.mark.parametrize("arity,hmode,seed", [
    (2, "trivial", 601), (2, "pn", 602), (3, "trivial", 603), (3, "pn", 604),
])
def test_criterion_6_group_axioms(arity, hmode, seed):
    result = selftest.group_axioms_suite(arity, hmode, samples=200, seed=seed)
    _assert_suite(f"6 (group axioms n={arity}, H={hmode}, 200 samples)", result)


# --- criterion 7: CLI conformance -------------------------------------------

def test_criterion_7_cli_counts(capsys):
    expectations = [
        (["count", "--gen1", "-n", "2"], "10"),
        (["count", "--gen1", "-n", "3"], "16"),
        (["count", "--gen1", "-n", "4"], "25"),
        (["count", "--gen1", "-n", "5"], "36"),
        (["count", "--gen1", "-n", "6"], "49"),
        (["count", "--irreducible", "-n", "2"], "8"),
        (["count", "--irreducible", "-n", "3"], "13"),
        (["count", "--irreducible", "-n", "4"], "21"),
        (["count", "--irreducible", "-n", "5"], "31"),
        (["count", "--irreducible", "-n", "6"], "43"),
        (["count", "--gen2", "-n", "3", "-k", "3"], "25"),
        (["count", "--gen3", "-n", "2"], "9"),
        (["count", "--gen3", "-n", "3"], "19"),
        (["count", "--gen3", "-n", "4"], "39"),
    ]
    bad = []
    for argv, expected in expectations:
        assert main(argv) == 0
        got = capsys.readouterr().out.strip()
        if got != expected:
            bad.append((argv, expected, got))
    _verdict("7 (count outputs verbatim)", not bad, f"{len(expectations)} commands")
    assert not bad, bad


def test_criterion_7_round_trip_corpus():
    rng = random.Random(7)
    context = bf.pn_context(2)
    corpus = [bf.random_element(context, rng, max_leaves=7, max_braid_letters=5,
                                max_label_letters=2) for _ in range(48)]
    corpus.append(bf.identity_element(context))
    corpus.append(bf.identity_element(context, Tree.caret(2)))
    assert len(corpus) >= 50
    bad = 0
    for x in corpus:
        rendered = format_element(x)
        again = parse_element(rendered, context)
        if again != x or format_element(again) != rendered:
            bad += 1
        text = bf.to_json(x)
        if bf.to_json(bf.from_json(text)) != text:
            bad += 1
    _verdict("7 (parse and JSON round trips)", bad == 0,
             f"{len(corpus)} expressions")
    assert bad == 0


def test_criterion_7_selftest_aggregates(capsys):
    code = main(["selftest", "--suite", "all", "-n", "2",
                 "--samples", "6", "--seed", "71"])
    out = capsys.readouterr().out
    ok = code == 0 and "[FAIL]" not in out
    suites_seen = {name for name in
                   ("generating", "orders", "signstability", "braidlayer",
                    "groupaxioms")
                   if name in out}
    _verdict("7 (selftest aggregates suites 2-6, exit 0)",
             ok and len(suites_seen) == 5, f"suites {sorted(suites_seen)}")
    assert code == 0
    assert len(suites_seen) == 5
