"""The verification suite behind the ``verify`` command.

Each check recomputes one identity from independent pipelines and compares
exactly. Checks are registered under a dotted name and the scopes that
select them; ``run_verification`` runs a scope concurrently and returns a
report sorted by check name.
"""

import asyncio
import itertools
import json
import logging
import random
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from functools import partial

from . import pipelines
from .holonomic import (
    E_EQUATION_RHS,
    UNIFORM_PARAMETERS,
    DiffOperator,
    apply_operator,
    c2_recurrence,
    c_operator,
    d_dt,
    diff_to_rec,
    e_operator,
    l3_operator,
    l6_operator,
    mul_t,
    q_operator,
    q_recurrence_check,
    q_two_term_recurrence,
    rec_generate,
    rec_verify,
    t3_recurrence,
    uniform_recurrence,
)
from .pipelines import METHODS, MODELS, QUADRANT_TAGS
from .seqcore import (
    REFERENCE_ERRATA,
    Sequence,
    binomial_transform,
    compare_prefix,
    reference,
)
from .series import PowerSeries, bt_series, t3_closed_form_hypergeom
from .walks import (
    apply_unimodular,
    count_excursions,
    hesitating_model,
    nonzero_steps,
    octant_g2_model,
    swap_coordinates,
    with_extra_zero_steps,
)

logger = logging.getLogger(__name__)

SCOPES = ("all", "thm1", "thm2", "factorization", "closed", "quadrant")

ROW_N = 9
LONG_TERMS = 200
PROPERTY_TERMS = 40
CLOSED_TERMS = 50
SERIES_ORDER = 60
SERIES_KEEP = 50
C2_TERMS = 100
RANDOM_SEQUENCES = 20
RANDOM_SEED = 20190101
BT_SHIFTS = range(-3, 4)

# (x, y) -> (x + y, y) takes the octant model onto the hesitating one.
IDENTIFICATION: tuple[tuple[int, int], tuple[int, int]] = ((1, 1), (0, 1))


@dataclass(frozen=True)
class Outcome:
    passed: bool
    detail: str
    terms_compared: int = 0


@dataclass(frozen=True)
class Check:
    """One line of the report."""

    name: str
    status: str
    detail: str
    terms_compared: int

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict[str, str | int]:
        return {
            "name": self.name,
            "status": self.status,
            "detail": self.detail,
            "terms_compared": self.terms_compared,
        }


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]
    sigma: Mapping[int, str | None]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> str:
        document = {
            "checks": [c.to_dict() for c in self.checks],
            "sigma": {str(k): self.sigma[k] for k in sorted(self.sigma)},
        }
        return json.dumps(document, indent=2) + "\n"


CheckFunction = Callable[[], Outcome]


@dataclass(frozen=True)
class _Registered:
    scopes: frozenset[str]
    function: CheckFunction


_REGISTRY: dict[str, _Registered] = {}


def register(name: str, scopes: tuple[str, ...], function: CheckFunction) -> None:
    """Add a check to the suite.

    Raises:
        ValueError: If the name is taken or a scope is unknown.
    """
    if name in _REGISTRY:
        raise ValueError(f"duplicate check {name!r}")
    unknown = set(scopes) - set(SCOPES)
    if unknown:
        raise ValueError(f"check {name!r} has unknown scopes {sorted(unknown)}")
    _REGISTRY[name] = _Registered(frozenset(scopes), function)


def check(name: str, *scopes: str) -> Callable[[CheckFunction], CheckFunction]:
    def decorator(function: CheckFunction) -> CheckFunction:
        register(name, scopes, function)
        return function

    return decorator


def check_names(scope: str = "all") -> list[str]:
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; known scopes: {', '.join(SCOPES)}")
    return sorted(
        name
        for name, registered in _REGISTRY.items()
        if scope == "all" or scope in registered.scopes
    )


def _compare(actual: Sequence, expected: Sequence, label: str) -> Outcome:
    length = len(expected)
    if len(actual) != length:
        return Outcome(False, f"{label}: {len(actual)} terms, expected {length}")
    common = compare_prefix(actual, expected)
    if common == length:
        return Outcome(True, f"{label}: {length} terms agree", length)
    return Outcome(
        False,
        f"{label}: first difference at n={common}: "
        f"{actual[common]} != {expected[common]}",
        length,
    )


def _all_of(outcomes: list[Outcome]) -> Outcome:
    failed = [o for o in outcomes if not o.passed]
    terms = sum(o.terms_compared for o in outcomes)
    if failed:
        return Outcome(False, "; ".join(o.detail for o in failed), terms)
    return Outcome(True, f"{len(outcomes)} comparisons, {terms} terms agree", terms)


def _vanishes(series: PowerSeries, label: str) -> Outcome:
    nonzero = [i for i, c in enumerate(series.coefficients) if c]
    if nonzero:
        first = nonzero[0]
        return Outcome(
            False, f"{label}: coefficient {first} is {series[first]}", series.order
        )
    return Outcome(True, f"{label} vanishes to order {series.order}", series.order)


def _recurrence_holds(recurrence_label: str, holds: bool, s: Sequence) -> Outcome:
    verdict = "holds" if holds else "fails"
    return Outcome(holds, f"{recurrence_label} {verdict} on {len(s)} terms", len(s))


def _apply(operator: DiffOperator, f: PowerSeries) -> PowerSeries:
    return apply_operator(operator, f, SERIES_KEEP)


def _t3_series() -> PowerSeries:
    return pipelines.generating_function("t3", SERIES_ORDER, "ct")


# Reference octant rows from every pipeline.


def _reference_row(model: str, method: str) -> Outcome:
    expected = reference(MODELS[model])
    actual = pipelines.generate(model, ROW_N, method)
    return _compare(actual, expected, f"{model} by {method} vs {expected.tag}")


for _model, _methods in (
    ("t3", METHODS["t3"]),
    ("e3", ("walk", "rec")),
    ("a108304", METHODS["a108304"]),
):
    for _method in _methods:
        register(
            f"rows.{_model}.{_method}",
            ("thm1", "thm2"),
            partial(_reference_row, _model, _method),
        )


# Binomial transforms between the octant sequences.


@check("octant.ct_vs_hesitating", "thm1")
def _octant_ct_vs_hesitating() -> Outcome:
    t3 = pipelines.generate("t3", LONG_TERMS - 1, "ct")
    e3 = pipelines.generate("e3", LONG_TERMS - 1, "walk")
    return _compare(binomial_transform(t3), e3, "bt(T3 by ct) vs hesitating walks")


@check("octant.ct_vs_recurrence", "thm1")
def _octant_ct_vs_recurrence() -> Outcome:
    t3 = pipelines.generate("t3", LONG_TERMS - 1, "ct")
    e3 = pipelines.generate("e3", LONG_TERMS - 1, "rec")
    return _compare(binomial_transform(t3), e3, "bt(T3 by ct) vs E3 recurrence")


@check("octant.walk_level", "thm1")
def _octant_walk_level() -> Outcome:
    t3 = pipelines.generate("t3", PROPERTY_TERMS - 1, "walk")
    e3 = pipelines.generate("e3", PROPERTY_TERMS - 1, "walk")
    return _compare(binomial_transform(t3), e3, "bt(octant walks) vs hesitating walks")


@check("octant.identification", "thm1")
def _octant_identification() -> Outcome:
    octant, hesitating = octant_g2_model(), hesitating_model()
    mapped = apply_unimodular(octant, IDENTIFICATION)
    if nonzero_steps(mapped) != nonzero_steps(hesitating):
        return Outcome(False, f"mapped steps {sorted(nonzero_steps(mapped))} differ")

    relabeled = swap_coordinates(apply_unimodular(hesitating, ((1, 0), (-1, 1))))
    if nonzero_steps(relabeled) != nonzero_steps(octant):
        steps = sorted(nonzero_steps(relabeled))
        return Outcome(False, f"relabeled steps {steps} differ")

    counts = count_excursions(with_extra_zero_steps(mapped, 1), PROPERTY_TERMS - 1)
    expected = pipelines.generate("e3", PROPERTY_TERMS - 1, "walk")
    outcome = _compare(counts, expected, "mapped octant + zero step vs hesitating")
    detail = f"step sets match; {outcome.detail}"
    return Outcome(outcome.passed, detail, outcome.terms_compared)


_WALK_MODELS = {"octant_g2": octant_g2_model, "hesitating": hesitating_model}


def _transform(model_name: str, j: int) -> Outcome:
    model = _WALK_MODELS[model_name]()
    base = count_excursions(model, PROPERTY_TERMS - 1)
    extended = count_excursions(with_extra_zero_steps(model, j), PROPERTY_TERMS - 1)
    label = f"{model_name} + {j} zero steps"
    return _compare(extended, binomial_transform(base, j), label)


for _model_name in _WALK_MODELS:
    for _j in (1, 2):
        register(
            f"transform.{_model_name}.j{_j}", ("thm1",), partial(_transform, _model_name, _j)
        )


@check("transform.bt2_a108304", "thm1")
def _transform_bt2() -> Outcome:
    return _compare(
        binomial_transform(reference("A059710"), 2),
        reference("A108304"),
        "bt^2(A059710) vs A108304",
    )


def _bt_agrees(s: Sequence) -> list[Outcome]:
    series = PowerSeries.from_sequence(s)
    outcomes = []
    for k in BT_SHIFTS:
        by_series = bt_series(series, k, len(s)).to_sequence(s.tag)
        by_terms = binomial_transform(s, k)
        outcomes.append(_compare(by_series, by_terms, f"{s.tag}, k={k}"))
    return outcomes


@check("bt_series.t3", "thm1")
def _bt_series_t3() -> Outcome:
    return _all_of(_bt_agrees(pipelines.generate("t3", PROPERTY_TERMS - 1, "ct")))


@check("bt_series.random", "thm1")
def _bt_series_random() -> Outcome:
    rng = random.Random(RANDOM_SEED)
    outcomes = []
    for i in range(RANDOM_SEQUENCES):
        terms = [rng.randint(-1000, 1000) for _ in range(PROPERTY_TERMS)]
        outcomes.extend(_bt_agrees(Sequence.of(f"random{i}", terms)))
    return _all_of(outcomes)


# The recurrence for T3 and the series form of its proof.


@check("recurrence.rec_verify_ct", "thm2")
def _recurrence_rec_verify() -> Outcome:
    t3 = pipelines.generate("t3", LONG_TERMS - 1, "ct")
    return _recurrence_holds("t3 recurrence", rec_verify(t3_recurrence(), t3), t3)


@check("recurrence.rec_generate_vs_walk", "thm2")
def _recurrence_rec_generate() -> Outcome:
    generated = rec_generate(t3_recurrence(), [1, 0, 1], LONG_TERMS - 1)
    walks = pipelines.generate("t3", LONG_TERMS - 1, "walk")
    return _compare(generated, walks, "t3 recurrence vs octant walks")


@check("recurrence.l3_recurrence", "thm2")
def _recurrence_l3_recurrence() -> Outcome:
    t3 = pipelines.generate("t3", LONG_TERMS - 1, "ct")
    recurrence = diff_to_rec(l3_operator())
    return _recurrence_holds(recurrence.render(), rec_verify(recurrence, t3), t3)


@check("recurrence.inverse_transform_series", "thm2")
def _inverse_transform_series() -> Outcome:
    e_series = pipelines.generating_function("e3", SERIES_ORDER, "rec")
    t_series = bt_series(e_series, -1, SERIES_ORDER)
    compared = _compare(
        t_series.to_sequence("bt^-1(E)"),
        pipelines.generate("t3", SERIES_ORDER - 1, "ct"),
        "bt_series(E, -1) vs T3 by ct",
    )
    if not compared.passed:
        return compared
    annihilated = _vanishes(
        _apply(l3_operator(), t_series), "L3(bt_series(E, -1))"
    )
    return Outcome(
        annihilated.passed,
        f"{compared.detail}; {annihilated.detail}",
        compared.terms_compared,
    )


# Operator identities.


@check("factorization.q_l3_equals_l6", "factorization")
def _factorization() -> Outcome:
    product = q_operator() * l3_operator()
    if product == l6_operator():
        return Outcome(True, f"Q*L3 = L6, order {product.order}")
    differing = [
        i
        for i, (a, b) in enumerate(
            itertools.zip_longest(product.coefficients, l6_operator().coefficients)
        )
        if a != b
    ]
    return Outcome(False, f"Q*L3 differs from L6 in the coefficients of D^{differing}")


@check("factorization.l6_annihilates_t3", "factorization")
def _l6_annihilates() -> Outcome:
    return _vanishes(_apply(l6_operator(), _t3_series()), "L6(T)")


@check("factorization.l3_annihilates_t3", "factorization")
def _l3_annihilates() -> Outcome:
    return _vanishes(_apply(l3_operator(), _t3_series()), "L3(T)")


@check("factorization.e_equation", "factorization")
def _e_equation() -> Outcome:
    e_series = pipelines.generating_function("e3", SERIES_ORDER, "walk")
    value = _apply(e_operator(), e_series)
    return _vanishes(value - E_EQUATION_RHS, f"L_E(E) - {E_EQUATION_RHS}")


@check("factorization.e_recurrence", "factorization")
def _e_recurrence() -> Outcome:
    recurrence = diff_to_rec(d_dt() * e_operator())
    e3 = pipelines.generate("e3", SERIES_ORDER - 1, "ct")
    return _recurrence_holds(recurrence.render(), rec_verify(recurrence, e3), e3)


@check("factorization.q_recurrence", "factorization")
def _q_recurrence() -> Outcome:
    holds = q_recurrence_check()
    rendered = diff_to_rec(q_operator()).render()
    verdict = "is" if holds else "is not"
    target = q_two_term_recurrence().render()
    return Outcome(holds, f"{rendered} {verdict} proportional to {target}")


@check("factorization.c_operator", "factorization")
def _c_operator() -> Outcome:
    c2 = pipelines.generate("quad3", SERIES_ORDER - 1, "ct")
    annihilated = _vanishes(
        _apply(c_operator(), PowerSeries.from_sequence(c2)), "L_C(C)"
    )
    recurrence = diff_to_rec(c_operator())
    converted = _recurrence_holds(recurrence.render(), rec_verify(recurrence, c2), c2)
    return _all_of([annihilated, converted])


@check("factorization.weyl_associativity", "factorization")
def _weyl_associativity() -> Outcome:
    operators = [q_operator(), l3_operator(), d_dt(), mul_t()]
    failures = [
        f"({a.name}*{b.name})*{c.name}"
        for a, b, c in itertools.product(operators, repeat=3)
        if (a * b) * c != a * (b * c)
    ]
    if failures:
        return Outcome(False, f"not associative: {', '.join(failures)}")
    return Outcome(True, f"{len(operators) ** 3} triples associate")


# Closed forms.


def _closed(method: str) -> Outcome:
    figure = _compare(
        pipelines.generate("t3", ROW_N, method), reference("A059710"), "vs A059710"
    )
    long = _compare(
        pipelines.generate("t3", CLOSED_TERMS - 1, method),
        pipelines.generate("t3", CLOSED_TERMS - 1, "ct"),
        "vs T3 by ct",
    )
    outcome = _all_of([figure, long])
    if not outcome.passed:
        return outcome
    # Reaching here means the bracket divided by t^5 and came out integral.
    detail = f"bracket divisible by t^5, integral; {outcome.detail}"
    return Outcome(True, detail, outcome.terms_compared)


register("closed.hypergeom", ("closed",), partial(_closed, "closed"))
register("closed.weierstrass", ("closed",), partial(_closed, "weierstrass"))


@check("closed.agree", "closed")
def _closed_agree() -> Outcome:
    return _compare(
        pipelines.generate("t3", CLOSED_TERMS - 1, "closed"),
        pipelines.generate("t3", CLOSED_TERMS - 1, "weierstrass"),
        "hypergeometric vs Weierstrass form",
    )


@check("closed.l3_annihilates_hypergeom", "closed")
def _closed_l3() -> Outcome:
    series = t3_closed_form_hypergeom(SERIES_ORDER)
    return _vanishes(_apply(l3_operator(), series), "L3(closed form)")


# Quadrant sequences.


def _quadrant_row(k: int) -> Outcome:
    tag = QUADRANT_TAGS[k]
    expected = reference(tag, corrected=True)
    actual = pipelines.generate(f"quad{k}", len(expected) - 1, "ct")
    outcome = _compare(actual, expected, f"ct of sl3 kernel k={k} vs {tag}")
    errata = REFERENCE_ERRATA.get(tag)
    if errata:
        corrected = ", ".join(f"n={i}" for i in sorted(errata))
        detail = f"{outcome.detail} (printed row corrected at {corrected})"
        return Outcome(outcome.passed, detail, outcome.terms_compared)
    return outcome


def _bt_chain(k: int) -> Outcome:
    lower = pipelines.generate(f"quad{k}", PROPERTY_TERMS - 1, "ct")
    upper = pipelines.generate(f"quad{k + 1}", PROPERTY_TERMS - 1, "ct")
    return _compare(binomial_transform(lower), upper, f"bt(quad{k}) vs quad{k + 1}")


def _uniform(k: int) -> Outcome:
    recurrence = uniform_recurrence(k)
    matches = []
    for model_k, tag in enumerate(QUADRANT_TAGS):
        row = pipelines.generate(f"quad{model_k}", PROPERTY_TERMS - 1, "ct")
        try:
            seed = row.terms[: recurrence.order]
            generated = rec_generate(recurrence, seed, PROPERTY_TERMS - 1)
        except ArithmeticError:
            continue
        if generated.terms == row.terms:
            matches.append(tag)
    resolved = pipelines.quadrant_sigma()[k]
    passed = len(matches) == 1 and matches[0] == resolved
    detail = f"k={k} generates {matches or 'no row'} for {PROPERTY_TERMS} terms"
    return Outcome(passed, detail, PROPERTY_TERMS * len(matches))


for _k in range(4):
    register(f"quadrant.rows.quad{_k}", ("quadrant",), partial(_quadrant_row, _k))
    register(f"quadrant.uniform.k{_k}", ("quadrant",), partial(_uniform, _k))
for _k in range(3):
    register(f"quadrant.bt_chain.quad{_k}", ("quadrant",), partial(_bt_chain, _k))


@check("quadrant.c2_rec_verify", "quadrant")
def _c2_rec_verify() -> Outcome:
    c2 = pipelines.generate("quad3", C2_TERMS - 1, "ct")
    return _recurrence_holds("c2 recurrence", rec_verify(c2_recurrence(), c2), c2)


@check("quadrant.c2_rec_generate", "quadrant")
def _c2_rec_generate() -> Outcome:
    return _compare(
        rec_generate(c2_recurrence(), [1, 3], C2_TERMS - 1),
        pipelines.generate("quad3", C2_TERMS - 1, "ct"),
        "c2 recurrence vs ct",
    )


@check("quadrant.sigma_bijection", "quadrant")
def _sigma_bijection() -> Outcome:
    sigma = pipelines.quadrant_sigma()
    rendered = ", ".join(f"{k}->{sigma[k]}" for k in sorted(sigma))
    passed = sorted(v for v in sigma.values() if v) == sorted(QUADRANT_TAGS)
    return Outcome(passed, f"sigma: {rendered}")


def run_check(name: str) -> Check:
    """Run one registered check; an exception fails the check."""
    try:
        outcome = _REGISTRY[name].function()
    except Exception as e:
        logger.error(f"Check {name} raised {type(e).__name__}: {e}")
        return Check(name, "fail", f"{type(e).__name__}: {e}", 0)

    status = "pass" if outcome.passed else "fail"
    log = logger.info if outcome.passed else logger.warning
    log(f"{name}: {status} ({outcome.detail})")
    return Check(name, status, outcome.detail, outcome.terms_compared)


def _resolved_sigma() -> dict[int, str | None]:
    try:
        return dict(pipelines.quadrant_sigma())
    except Exception as e:
        logger.error(f"Could not resolve the uniform recurrence parameters: {e}")
        return {k: None for k in UNIFORM_PARAMETERS}


async def run_verification(scope: str = "all", workers: int = 4) -> VerificationReport:
    """Run every check in ``scope`` with at most ``workers`` running at once.

    Raises:
        ValueError: If the scope is unknown or ``workers`` is not positive.
    """
    names = check_names(scope)
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")

    semaphore = asyncio.Semaphore(workers)

    async def run_one(name: str) -> Check:
        async with semaphore:
            return await asyncio.to_thread(run_check, name)

    logger.info(f"Running {len(names)} checks in scope {scope!r}")
    checks = await asyncio.gather(*(run_one(name) for name in names))
    sigma = await asyncio.to_thread(_resolved_sigma)

    report = VerificationReport(tuple(sorted(checks, key=lambda c: c.name)), sigma)
    passed = len(report.checks) - len(report.failures)
    logger.info(f"{passed}/{len(report.checks)} checks passed")
    return report
