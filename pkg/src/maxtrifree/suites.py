"""Named verification suites gluing the modules into reproducible runs.

Every randomized check derives instance i from the Philox stream
(seed, STREAM_BASE + i), so reruns and re-shardings regenerate identical
instances.  A guard violation inside one check becomes that check's failure
report instead of aborting the run.  Reports come back sorted by check name.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from . import constructions, enumeration, mis, reduction
from .graph import GuardError, has_clique
from .graph6 import encode_graph6
from .report import (
    FAIL,
    PASS,
    RunConfig,
    STREAM_CHAIN,
    STREAM_CLAIM1,
    STREAM_CLAIM2,
    STREAM_KR_SAMPLES,
    Stopwatch,
    VerificationReport,
    rng_for,
)

SUITES = ("claims", "hujter-tuza", "constructions", "enumeration", "all")

CLAIM1_INSTANCES = 1000
CLAIM1_MAX_N = 10
CLAIM2_INSTANCES = 1000
CLAIM2_MAX_N = 8
CHAIN_INSTANCES = 100
CHAIN_MAX_N = 6
KR_SAMPLE_SHAPES = ((12, 3), (16, 4))
KR_SAMPLES_PER_SHAPE = 1000

Check = tuple[str, Callable[[], VerificationReport]]


def _instance_witness(inst: reduction.ReductionInstance) -> list[str]:
    data = inst.to_dict()
    return [data["container"],
            "removal=" + ",".join(data["removal"]),
            "selected=" + ",".join(data["selected"])]


def _claim_random_check(seed: int, stream_base: int, instances: int,
                        n_max: int, run_one) -> VerificationReport:
    with Stopwatch() as sw:
        failures: list = []
        for i in range(instances):
            rng = rng_for(seed, stream_base + i)
            inst = reduction.random_instance(rng, n_min=4, n_max=n_max)
            result = run_one(inst)
            if not result.passed:
                failures.append(_instance_witness(inst) + result.witnesses[:1])
                if len(failures) >= 5:
                    break
    return VerificationReport(
        check_name="random",
        status=FAIL if failures else PASS,
        parameters={"instances": instances, "n_max": n_max, "seed": seed},
        counts={"instances": instances, "failures": len(failures)},
        witnesses=failures,
        elapsed_ms=sw.elapsed_ms,
    )


def _worked_claim2() -> VerificationReport:
    rep = reduction.verify_claim2(reduction.worked_k4_instance())
    if rep.passed and (rep.counts["h_star"] != 2 or rep.counts["mis_count_t"] != 4):
        rep.status = FAIL
        rep.witnesses = [["expected h_star=2, mis_count_t=4", str(rep.counts)]]
    return rep


def _worked_chain() -> VerificationReport:
    inst = reduction.worked_k4_instance()
    rep = reduction.bound_chain(inst.container, inst.removal)
    if rep.passed and rep.counts["sum_h_star"] != 7:
        rep.status = FAIL
        rep.witnesses = [["expected partition sum 7", str(rep.counts)]]
    return rep


def _claims_checks(config: RunConfig) -> list[Check]:
    return [
        ("claim1_worked_k4", lambda: reduction.verify_claim1(
            reduction.build_auxiliary(reduction.worked_k4_instance()))),
        ("claim2_worked_k4", _worked_claim2),
        ("chain_worked_k4", _worked_chain),
        ("claim1_random", lambda: _claim_random_check(
            config.seed, STREAM_CLAIM1, CLAIM1_INSTANCES, CLAIM1_MAX_N,
            lambda inst: reduction.verify_claim1(reduction.build_auxiliary(inst)))),
        ("claim2_random", lambda: _claim_random_check(
            config.seed, STREAM_CLAIM2, CLAIM2_INSTANCES, CLAIM2_MAX_N,
            reduction.verify_claim2)),
        ("chain_random", lambda: _claim_random_check(
            config.seed, STREAM_CHAIN, CHAIN_INSTANCES, CHAIN_MAX_N,
            lambda inst: reduction.bound_chain(inst.container, inst.removal))),
    ]


def _hujter_checks(config: RunConfig) -> list[Check]:
    return [
        ("hujter_tuza_exhaustive", lambda: mis.verify_hujter_tuza(
            config.guard("hujter_tuza_m"), shards=config.shards)),
        ("hujter_tuza_matching_equality", mis.verify_matching_equality),
    ]


def _kr_sample_check(config: RunConfig) -> VerificationReport:
    with Stopwatch() as sw:
        counts: dict[str, int] = {}
        bad: list[str] = []
        for shape_idx, (n, r) in enumerate(KR_SAMPLE_SHAPES):
            ok = 0
            for i in range(KR_SAMPLES_PER_SHAPE):
                rng = rng_for(config.seed, STREAM_KR_SAMPLES + (shape_idx << 16) + i)
                g = constructions.kr_free_graph(constructions.KrChoice.random(n, r, rng))
                if has_clique(g, r + 1):
                    bad.append(encode_graph6(g))
                else:
                    ok += 1
            counts[f"clique_free_n{n}_r{r}"] = ok
            counts[f"samples_n{n}_r{r}"] = KR_SAMPLES_PER_SHAPE
    return VerificationReport(
        check_name="kr_clique_free_samples",
        status=FAIL if bad else PASS,
        parameters={"shapes": [f"{n},{r}" for n, r in KR_SAMPLE_SHAPES],
                    "seed": config.seed},
        counts=counts,
        witnesses=bad[:5],
        elapsed_ms=sw.elapsed_ms,
    )


def _kr_entropy_check_all(max_n: int = 64, max_r: int = 8) -> VerificationReport:
    with Stopwatch() as sw:
        checked = 0
        bad: list = []
        for r in range(2, max_r + 1):
            for n in range(2 * r, max_n + 1, 2 * r):
                bits = constructions.kr_entropy_check(n, r)
                if bits != Fraction(r - 1, r) * Fraction(n * n, 4):
                    bad.append([f"n={n}", f"r={r}"])
                checked += 1
    return VerificationReport(
        check_name="kr_entropy_identity",
        status=FAIL if bad else PASS,
        parameters={"max_n": max_n, "max_r": max_r},
        counts={"checked": checked},
        witnesses=bad,
        elapsed_ms=sw.elapsed_ms,
    )


def _constructions_checks(config: RunConfig) -> list[Check]:
    guard = config.guard("folklore_n")
    checks: list[Check] = [
        (f"folklore_stats_n{n}",
         lambda n=n: constructions.folklore_family_stats(
             n, shards=config.shards, guard=guard))
        for n in range(4, guard + 1, 4)
    ]
    checks.append(("kr_entropy_identity", _kr_entropy_check_all))
    checks.append(("kr_clique_free_samples", lambda: _kr_sample_check(config)))
    return checks


def _oracle_equivalence(config: RunConfig) -> VerificationReport:
    with Stopwatch() as sw:
        counts: dict[str, int] = {}
        bad: list = []
        for n in range(1, config.guard("oracle_n") + 1):
            oracle = len(enumeration.brute_force_maximal_tf(n))
            fast = enumeration.enumerate_maximal_tf(n, shards=config.shards).labeled_count
            plain = enumeration.enumerate_maximal_tf(n, forward_prune=False).labeled_count
            counts[f"count_n{n}"] = oracle
            if fast != oracle or plain != oracle:
                bad.append([f"n={n}", f"oracle={oracle}", f"pruned={fast}", f"plain={plain}"])
    return VerificationReport(
        check_name="enumeration_oracle_equiv",
        status=FAIL if bad else PASS,
        parameters={"max_n": config.guard("oracle_n")},
        counts=counts,
        witnesses=bad,
        elapsed_ms=sw.elapsed_ms,
    )


def _growth_table_check(config: RunConfig) -> VerificationReport:
    with Stopwatch() as sw:
        guard = config.guard("enumeration_n")
        table = enumeration.growth_table(guard, shards=config.shards, guard=guard)
        counts = {f"count_n{row.n}": row.labeled_count for row in table.rows}
        params: dict[str, object] = {
            f"log2_over_n2_n{row.n}": f"{row.log2_count_over_n2:.6f}"
            for row in table.rows
        }
        params["n_max"] = guard
    return VerificationReport(
        check_name="growth_table",
        status=PASS,
        parameters=params,
        counts=counts,
        witnesses=[],
        elapsed_ms=sw.elapsed_ms,
    )


def _remark3_check(config: RunConfig) -> VerificationReport:
    with Stopwatch() as sw:
        max_n = min(enumeration.REMARK3_MAX_N, config.guard("enumeration_n"))
        counts: dict[str, int] = {}
        params: dict[str, object] = {}
        for n in range(2, max_n + 1):
            admitting, total = enumeration.remark3_census(n)
            frac = Fraction(admitting, total)
            counts[f"admitting_n{n}"] = admitting
            counts[f"family_n{n}"] = total
            params[f"fraction_n{n}"] = f"{frac.numerator}/{frac.denominator}"
    return VerificationReport(
        check_name="remark3_census",
        status=PASS,
        parameters=params,
        counts=counts,
        witnesses=[],
        elapsed_ms=sw.elapsed_ms,
    )


def _enumeration_checks(config: RunConfig) -> list[Check]:
    return [
        ("enumeration_oracle_equiv", lambda: _oracle_equivalence(config)),
        ("growth_table", lambda: _growth_table_check(config)),
        ("remark3_census", lambda: _remark3_check(config)),
    ]


_SUITE_BUILDERS = {
    "claims": _claims_checks,
    "hujter-tuza": _hujter_checks,
    "constructions": _constructions_checks,
    "enumeration": _enumeration_checks,
}


def run_suite(config: RunConfig, suite: str) -> list[VerificationReport]:
    """Execute one named suite (or all of them); reports sorted by check name.

    A GuardError raised by a check is converted into a failing report for
    that check; the rest of the run proceeds.
    """
    if suite == "all":
        names = ["claims", "hujter-tuza", "constructions", "enumeration"]
    elif suite in _SUITE_BUILDERS:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    reports: list[VerificationReport] = []
    for name in names:
        for check_name, thunk in _SUITE_BUILDERS[name](config):
            try:
                rep = thunk()
                rep.check_name = check_name
            except GuardError as exc:
                rep = VerificationReport(
                    check_name=check_name,
                    status=FAIL,
                    parameters={"error": str(exc)},
                    counts={},
                    witnesses=[str(exc)],
                    elapsed_ms=0,
                )
            reports.append(rep)
    reports.sort(key=lambda r: r.check_name)
    return reports
