import pytest

from argsim.audit import (
    PRINCIPLES,
    AuditReport,
    GeneratorParams,
    InfeasibleConstructionError,
    check_principle,
    gen_argument,
    rename,
    replay_case,
    run_audit,
    vocabulary,
)
from argsim.backends import ExactMatchProvider, LookupTableProvider
from argsim.cnf import Clause, ClauseSet
from argsim.core import SimConfig

EQ_CONFIG = SimConfig(provider=ExactMatchProvider(), lam=0.8, tversky_preset="dic")

AUDIT_TABLE = LookupTableProvider.from_pairs([("P0", "P3", 0.7), ("c0", "c1", 0.5)])
LOOKUP_CONFIG = SimConfig(provider=AUDIT_TABLE, lam=0.8, tversky_preset="dic")


def test_gen_argument_deterministic():
    params = GeneratorParams(seed=11)
    assert gen_argument(params) == gen_argument(params)
    assert gen_argument(params) != gen_argument(GeneratorParams(seed=12))


def test_gen_argument_respects_bounds():
    params = GeneratorParams(seed=5, predicates=3, max_clauses=4)
    arg = gen_argument(params)
    assert 1 <= len(arg.support) <= 4
    assert len(arg.claim) >= 1
    assert not arg.is_trivial


def test_gen_argument_invariant_sweep():
    for seed in range(1000):
        arg = gen_argument(GeneratorParams(seed=seed))
        for cs in (arg.support, arg.claim):
            assert ClauseSet(cs.clauses) == cs
            for clause in cs:
                assert Clause(clause.literals) == clause
                assert len(set(map(str, clause))) == len(clause.literals)


def test_generator_params_validation():
    with pytest.raises(InfeasibleConstructionError):
        GeneratorParams(seed=0, predicates=0)


def test_rename_identity():
    arg = gen_argument(GeneratorParams(seed=3))
    identity = {name: name for name in vocabulary(arg)}
    assert rename(identity, arg) == arg


def test_rename_swap():
    arg = gen_argument(GeneratorParams(seed=3))
    vocab = sorted(vocabulary(arg))
    pi = {name: f"swapped_{i}" for i, name in enumerate(vocab)}
    renamed = rename(pi, arg)
    assert renamed != arg
    assert vocabulary(renamed) == set(pi.values())


def test_rename_round_trip():
    arg = gen_argument(GeneratorParams(seed=9))
    vocab = sorted(vocabulary(arg))
    pi = {name: f"tmp{i}" for i, name in enumerate(vocab)}
    inverse = {v: k for k, v in pi.items()}
    assert rename(inverse, rename(pi, arg)) == arg


def test_rename_rejects_partial_or_noninjective():
    arg = gen_argument(GeneratorParams(seed=3))
    with pytest.raises(ValueError):
        rename({}, arg)
    collapsing = {name: "same" for name in vocabulary(arg)}
    if len(vocabulary(arg)) > 1:
        with pytest.raises(ValueError):
            rename(collapsing, arg)


@pytest.mark.parametrize("principle", PRINCIPLES)
def test_each_principle_runs_clean_on_eq(principle):
    report = check_principle(principle, EQ_CONFIG, GeneratorParams(seed=8), 25)
    assert report.cases == 25
    if principle == "nonzero":
        assert report.expected_fail and len(report.violations) >= 1
    else:
        assert not report.expected_fail
        assert report.violations == []


def test_syntax_independence_flags_lookup_backend():
    report = check_principle("syntax_independence", LOOKUP_CONFIG, GeneratorParams(seed=8), 25)
    assert report.expected_fail
    assert len(report.violations) >= 1


def test_violations_replay_to_same_verdict():
    report = check_principle("nonzero", EQ_CONFIG, GeneratorParams(seed=8), 5)
    assert report.violations
    for violation in report.violations:
        result = replay_case(
            "nonzero", violation.case_seed, EQ_CONFIG, GeneratorParams(seed=8),
            violation.case_index,
        )
        assert result is not None
        assert result[0] == violation.message


def test_violations_carry_serialized_inputs():
    report = check_principle("nonzero", EQ_CONFIG, GeneratorParams(seed=8), 1)
    inputs = report.violations[0].inputs
    assert set(inputs) >= {"A", "B"}
    assert inputs["A"]["support"]


def test_unknown_principle_rejected():
    with pytest.raises(ValueError):
        check_principle("transitivity", EQ_CONFIG, GeneratorParams(seed=0), 1)


def test_run_audit_report_shape():
    report = run_audit(EQ_CONFIG, GeneratorParams(seed=4), 10, ["maximality", "nonzero"])
    assert isinstance(report, AuditReport)
    assert [r.principle for r in report.reports] == ["maximality", "nonzero"]
    assert report.ok
    table = report.summary_table()
    assert "maximality" in table and "expected-fail" in table
    payload = report.to_dict()
    assert payload["ok"] is True
    assert payload["principles"][1]["violations"]
