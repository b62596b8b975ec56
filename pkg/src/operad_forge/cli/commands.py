"""Command implementations: build rows or elements, then render them."""

from math import factorial

from operad_forge.cli import output
from operad_forge.core.config import get_settings
from operad_forge.core.errors import ResourceLimitError
from operad_forge.core.logging import get_logger
from operad_forge.models.enums import DiffContext, DimsSelector, Suite
from operad_forge.models.report_schemas import DimensionRow, RunConfig, SchroederRow
from operad_forge.services import deform, shleib, trees, verify
from operad_forge.services.lie import LIE, lie_dim
from operad_forge.services.operad import Element
from operad_forge.utils.textform import parse_corollas, parse_tree, parse_words, render, to_payload

logger = get_logger(__name__)


# ---------------------------------------------------------------------------
# schroeder
# ---------------------------------------------------------------------------


def schroeder_rows(max_n: int) -> list[SchroederRow]:
    """s(n) for n = 1..max_n with the dimension cross-check; enumeration up to n = 8."""
    rows = []
    for n in range(1, max_n + 1):
        enumerated = (
            len(trees.enumerate_trees(n)) if n <= verify.ENUMERATION_LIMIT else None
        )
        rows.append(
            SchroederRow(
                n=n,
                s=trees.schroeder(n),
                enumerated=enumerated,
                from_dims=deform.deformation_schroeder(n),
            )
        )
    return rows


def cmd_schroeder(config: RunConfig) -> str:
    rows = schroeder_rows(config.max_n)
    return output.render_table(config.format, "schroeder", output.SCHROEDER_COLUMNS, rows)


# ---------------------------------------------------------------------------
# dims
# ---------------------------------------------------------------------------


def _degrees(n: int, degree: int | None) -> list[int]:
    available = list(range(1, n)) if n >= 2 else [0]
    return [a for a in available if degree is None or a == degree]


def _graded_rows(
    name: str, n: int, degree: int | None, enumerate_dim, closed_dim
) -> list[DimensionRow]:
    rows = [
        DimensionRow(operad=name, n=n, degree=a, dim=enumerate_dim(a), closed_form=closed_dim(a))
        for a in _degrees(n, degree)
    ]
    if degree is None and n >= 3:
        rows.append(
            DimensionRow(
                operad=name,
                n=n,
                dim=sum(r.dim for r in rows),
                closed_form=sum(r.closed_form or 0 for r in rows),
            )
        )
    return rows


def _closed_D(n: int, a: int) -> int:
    return deform.dim_formula(n, a) if n >= 2 else 1


def _d_rows(n: int, degree: int | None) -> list[DimensionRow]:
    rows = _graded_rows(
        "D",
        n,
        degree,
        lambda a: len(deform.basis_D(n, a)),
        lambda a: _closed_D(n, a),
    )
    if n < 2:
        return rows
    counts = deform.profile_dims(n)
    for a in _degrees(n, degree):
        for profile in deform.profiles(n, a):
            rows.append(
                DimensionRow(
                    operad="D",
                    n=n,
                    degree=a,
                    profile=profile.text(n),
                    dim=counts.get(profile, 0),
                    closed_form=deform.dim_delta(profile, n),
                )
            )
    return rows


def dimension_rows(
    which: DimsSelector, max_n: int, degree: int | None = None
) -> list[DimensionRow]:
    """
    Dimension table rows ordered by arity.

    Graded operads get one row per degree, a total row (degree empty) and,
    for D, one row per letter profile.
    """
    rows: list[DimensionRow] = []
    for n in range(1, max_n + 1):
        if which == DimsSelector.LIE:
            if degree in (None, 0):
                rows.append(
                    DimensionRow(
                        operad="Lie", n=n, degree=0, dim=len(LIE.basis(n)), closed_form=lie_dim(n)
                    )
                )
        elif which == DimsSelector.SPERM:
            if degree in (None, n - 1):
                rows.append(
                    DimensionRow(
                        operad="sΛPerm",
                        n=n,
                        degree=n - 1,
                        dim=len(deform.basis_sperm(n)),
                        closed_form=n,
                    )
                )
        elif which == DimsSelector.D:
            rows.extend(_d_rows(n, degree))
        elif which == DimsSelector.SLEIB_INF:
            rows.extend(
                _graded_rows(
                    "sΛLeib∞",
                    n,
                    degree,
                    lambda a, n=n: shleib.sleib_dim(n, a),
                    lambda a, n=n: factorial(n - 1) * _closed_D(n, a),
                )
            )
        elif which == DimsSelector.LIE_D:
            rows.extend(
                _graded_rows(
                    "Lie⊗D∞",
                    n,
                    degree,
                    lambda a, n=n: shleib.lie_d_dim(n, a),
                    lambda a, n=n: factorial(n - 1) * _closed_D(n, a),
                )
            )
    return rows


def cmd_dims(config: RunConfig, which: DimsSelector) -> str:
    rows = dimension_rows(which, config.max_n, config.degree)
    return output.render_table(config.format, "dims", output.DIMENSION_COLUMNS, rows)


# ---------------------------------------------------------------------------
# diff / theta
# ---------------------------------------------------------------------------


def _within_bound(config: RunConfig, x: Element, command: str) -> Element:
    """The element itself, if its arity is within --max-n (long runs) or OPERAD_FORGE_MAX_ARITY."""
    bound = config.max_n if config.long_run else get_settings().max_arity
    if x.arity > bound:
        raise ResourceLimitError(
            f"{command} of an arity-{x.arity} element exceeds the arity bound {bound}",
            details={"arity": x.arity, "bound": bound},
        )
    return x


def cmd_diff(config: RunConfig, element: str, which: DiffContext) -> str:
    """
    ∂ (which=D) or d_t (which=tree) of a parsed element.

    Raises:
        ParseError: If the text does not parse
        ContextError: If the element belongs to another operad
        ResourceLimitError: If the element's arity is over the bound
    """
    if which == DiffContext.D:
        result = deform.differential_D(_within_bound(config, parse_words(element), "diff"))
    else:
        result = shleib.tree_diff(_within_bound(config, parse_tree(element), "diff"))
    logger.debug("cli.diff", which=which.value, terms=len(result.terms))
    return output.render_element(
        config.format, to_payload(result), render(result), input=element, which=which.value
    )


def cmd_theta(config: RunConfig, element: str) -> str:
    """θ of a tree-monomial combination, in Hadamard text form."""
    result = shleib.theta(_within_bound(config, parse_tree(element), "theta"))
    return output.render_element(config.format, to_payload(result), render(result), input=element)


# ---------------------------------------------------------------------------
# count-trees / verify
# ---------------------------------------------------------------------------


def cmd_count_trees(config: RunConfig, spec: str) -> str:
    multiset = parse_corollas(spec)
    count = trees.count_trees_from_corollas(multiset)
    return output.render_value(config.format, "count", count, corollas=str(multiset))


def cmd_verify(config: RunConfig, suite: Suite) -> tuple[str, int]:
    """
    Run a suite and render its report.

    Returns:
        (rendered report, exit status 0 iff every check passed or was skipped)

    Raises:
        ResourceLimitError: Under long_run, when a matrix exceeds the cell cap
    """
    report = verify.run_suite(suite, config.max_n, seed=config.seed, long_run=config.long_run)
    return output.render_report(config.format, report), 0 if report.ok else 1
