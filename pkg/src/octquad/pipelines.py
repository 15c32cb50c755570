"""Model x method dispatch shared by the ``gen`` and ``verify`` commands.

Every model is one OEIS sequence; every method is an independent way of
computing it. Results are cached per ``(model, n, method)`` since the
verification suite asks for the same prefixes many times.
"""

import logging
from collections.abc import Callable
from functools import cache

from .holonomic import (
    c2_recurrence,
    e3_recurrence,
    rec_generate,
    resolve_sigma,
    t3_recurrence,
    uniform_recurrence,
)
from .laurent import ct_sequence, octant_kernel, sl3_kernel
from .seqcore import Sequence
from .series import (
    PowerSeries,
    bt_series,
    t3_closed_form_hypergeom,
    t3_closed_form_weierstrass,
)
from .walks import (
    count_excursions,
    hesitating_model,
    octant_g2_model,
    with_extra_zero_steps,
)

logger = logging.getLogger(__name__)

MODELS: dict[str, str] = {
    "t3": "A059710",
    "e3": "A108307",
    "a108304": "A108304",
    "quad0": "A151366",
    "quad1": "A236408",
    "quad2": "A001181",
    "quad3": "A216947",
}

# The first method of each model is its default.
METHODS: dict[str, tuple[str, ...]] = {
    "t3": ("rec", "walk", "ct", "closed", "weierstrass"),
    "e3": ("rec", "walk", "ct", "closed"),
    "a108304": ("ct", "walk", "closed"),
    "quad0": ("rec", "ct"),
    "quad1": ("rec", "ct"),
    "quad2": ("rec", "ct"),
    "quad3": ("rec", "ct"),
}

QUADRANT_TAGS = tuple(MODELS[f"quad{k}"] for k in range(4))
SIGMA_TERMS = 20
UNIFORM_SEED_TERMS = 4


def _check_model(model: str) -> None:
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; known models: {', '.join(MODELS)}")


def validate(model: str, method: str | None) -> str:
    """Return the method to use for ``model``.

    Raises:
        ValueError: If the model is unknown or the method is not defined for it.
    """
    _check_model(model)
    if method is None:
        return METHODS[model][0]
    if method not in METHODS[model]:
        raise ValueError(
            f"method {method!r} is not defined for {model}; "
            f"available: {', '.join(METHODS[model])}"
        )
    return method


def _closed_octant(j: int, n: int) -> Sequence:
    series = t3_closed_form_hypergeom(n + 1)
    return bt_series(series, j, n + 1).to_sequence(f"closed+{j}z")


def _quadrant_ct(k: int, n: int) -> Sequence:
    kernel, w = sl3_kernel(k)
    return ct_sequence(kernel, w, n, tag=f"quad{k}")


@cache
def quadrant_sigma() -> dict[int, str | None]:
    """Map from the uniform-recurrence parameter to the quadrant row it generates."""
    rows = {
        tag: _quadrant_ct(k, SIGMA_TERMS - 1) for k, tag in enumerate(QUADRANT_TAGS)
    }
    return resolve_sigma(rows)


def _quadrant_rec(k: int, n: int) -> Sequence:
    tag = QUADRANT_TAGS[k]
    if k == 3:
        return rec_generate(c2_recurrence(), [1, 3], n)

    parameters = [p for p, row in quadrant_sigma().items() if row == tag]
    if len(parameters) != 1:
        raise ArithmeticError(f"no uniform recurrence parameter generates {tag}")
    seed = _quadrant_ct(k, UNIFORM_SEED_TERMS - 1)
    return rec_generate(uniform_recurrence(parameters[0]), seed.terms, n)


_BUILDERS: dict[tuple[str, str], Callable[[int], Sequence]] = {
    ("t3", "walk"): lambda n: count_excursions(octant_g2_model(), n),
    ("t3", "ct"): lambda n: ct_sequence(*octant_kernel(0), n),
    ("t3", "rec"): lambda n: rec_generate(t3_recurrence(), [1, 0, 1], n),
    ("t3", "closed"): lambda n: t3_closed_form_hypergeom(n + 1).to_sequence("closed"),
    ("t3", "weierstrass"): lambda n: t3_closed_form_weierstrass(n + 1).to_sequence(
        "weierstrass"
    ),
    ("e3", "walk"): lambda n: count_excursions(hesitating_model(), n),
    ("e3", "ct"): lambda n: ct_sequence(*octant_kernel(1), n),
    ("e3", "rec"): lambda n: rec_generate(e3_recurrence(), [1, 1], n),
    ("e3", "closed"): lambda n: _closed_octant(1, n),
    ("a108304", "walk"): lambda n: count_excursions(
        with_extra_zero_steps(octant_g2_model(), 2), n
    ),
    ("a108304", "ct"): lambda n: ct_sequence(*octant_kernel(2), n),
    ("a108304", "closed"): lambda n: _closed_octant(2, n),
    **{(f"quad{k}", "ct"): (lambda n, k=k: _quadrant_ct(k, n)) for k in range(4)},
    **{(f"quad{k}", "rec"): (lambda n, k=k: _quadrant_rec(k, n)) for k in range(4)},
}


@cache
def generate(model: str, n: int, method: str | None = None) -> Sequence:
    """Terms 0..n of ``model`` computed with ``method``, tagged with the OEIS id.

    Raises:
        ValueError: If ``n`` is negative, the model is unknown or the method
            is not defined for the model.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    method = validate(model, method)
    logger.info(f"Generating {model} to n={n} with method {method}")
    return _BUILDERS[(model, method)](n).with_tag(MODELS[model])


def generating_function(model: str, order: int, method: str | None = None) -> PowerSeries:
    """The first ``order`` coefficients of ``model`` as a power series."""
    return PowerSeries.from_sequence(generate(model, order - 1, method))
