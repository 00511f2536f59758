import random
from pathlib import Path

import pytest

from algebra.fpmodules import ModulePresentation, quotient_by_sequence
from algebra.grades import ext_grade, koszul_grade, regular_sequence_grade
from algebra.groebner import RingPresentation, ideal, is_unit_ideal
from algebra.exact import CoefficientField
from algebra.reports import Verdict
from utils.bundle import RunConfig, bundle_to_json
from utils.executor import execute
from utils.script import parse_script
from utils.script_utils import read_script

SCRIPTS = Path(__file__).parent.parent / "scripts"


def run_script(name: str, **config):
    script = parse_script(read_script(SCRIPTS / name))
    return execute(script, RunConfig(**config), name)


def verdicts(bundle):
    return [r.verification.verdict for r in bundle.results]


def test_koszul_and_ext_grades_agree_on_curated_instances():
    bundle = run_script("grades.fpd")
    assert bundle.exit_code == 0
    pairs = [r for r in bundle.results if r.grade.kind != "regseq"]
    koszul = [r.grade.value for r in pairs[0::2]]
    ext = [r.grade.value for r in pairs[1::2]]
    assert koszul == ext
    assert koszul == [0, 1, 2, 1, 1, 3, 1, 2, 0, 1, 2, 1]


def test_regular_sequences_reach_the_koszul_grade():
    bundle = run_script("grades.fpd")
    regseq = [r.grade for r in bundle.results if r.grade.kind == "regseq"]
    assert [g.value for g in regseq] == [2, 1]
    assert all(g.seed == 0 for g in regseq)


def test_trivial_extension_script():
    bundle = run_script("trivext_demo.fpd")
    assert bundle.exit_code == 0
    assert bundle.results[0].grade.value == 2
    reports = [r.verification for r in bundle.results[1:]]
    assert [r.verdict for r in reports] == [Verdict.verified] * 5
    assert [r.comparisons[0].lhs_value for r in reports] == [0, 2, 2, 0, 1]


def test_polynomial_extension_script():
    bundle = run_script("polynomial_extension.fpd")
    assert bundle.exit_code == 0
    assert set(verdicts(bundle)) == {Verdict.verified}


def test_amalgamation_script():
    bundle = run_script("amalgamation.fpd")
    assert bundle.exit_code == 0
    assert verdicts(bundle) == [Verdict.verified] * 3
    assert [r.verification.comparisons[0].lhs_value for r in bundle.results] == [1, 1, 1]


@pytest.mark.slow
def test_dimension_script():
    bundle = run_script("dimension.fpd", power_cap=3)
    assert bundle.exit_code == 0
    dim_a, dim_b, gb, fpd_a, fpd_b = bundle.results[:5]
    assert (dim_a.dimension, dim_b.dimension) == (1, 1)
    assert (fpd_a.fpd.value, fpd_b.fpd.value) == (0, 1)
    assert {r.verification.verdict for r in bundle.results[5:]} == {Verdict.verified}


@pytest.mark.parametrize(
    "name", ["grades.fpd", "trivext_demo.fpd", "polynomial_extension.fpd", "amalgamation.fpd"]
)
def test_runs_are_deterministic(name):
    assert bundle_to_json(run_script(name)) == bundle_to_json(run_script(name))


def test_regular_sequence_splits_the_grade(make_ring, make_ideal, free):
    instances = [
        (make_ring("x,y"), ("x", "y")),
        (make_ring("x,y,z"), ("x", "y", "z")),
        (make_ring("x,y", "x*y"), ("x", "y")),
        (make_ring("x,y,z"), ("x*y", "x*z")),
        (make_ring("x,y", "x^2"), ("x", "y")),
    ]
    for R, generators in instances:
        I = make_ideal(R, *generators)
        M = free(R)
        total = koszul_grade(I, M, 12).value
        found = regular_sequence_grade(I, M, 200, 0)
        ys = [R.poly(t) for t in found.witness.sequence]
        rest = koszul_grade(I, quotient_by_sequence(M, ys), 12).value
        assert found.value == total
        assert rest == 0
        assert total == found.value + rest


def _random_polynomial(rng: random.Random, variables, degrees) -> str:
    terms = []
    for _ in range(rng.randint(1, 3)):
        exponents = [0] * len(variables)
        for _ in range(rng.choice(degrees)):
            exponents[rng.randrange(len(variables))] += 1
        monomial = "*".join(f"{v}^{e}" for v, e in zip(variables, exponents) if e)
        terms.append(f"{rng.choice([-2, -1, 1, 2])}*{monomial}")
    return " + ".join(terms)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_koszul_and_ext_grades_agree_on_random_instances(seed):
    rng = random.Random(seed)
    variables = ["x", "y", "z"][: rng.randint(1, 3)]
    relations = [_random_polynomial(rng, variables, [2]) for _ in range(rng.randint(0, 2))]
    R = RingPresentation(CoefficientField.rationals(), variables, relations)
    I = ideal(R, [_random_polynomial(rng, variables, [1, 2]) for _ in range(rng.randint(1, 3))])
    if not I.generators or is_unit_ideal(I):
        pytest.skip("ideal trivial")
    M = ModulePresentation.free(R, 1)
    assert koszul_grade(I, M, 12).value == ext_grade(I, M, 12).value
