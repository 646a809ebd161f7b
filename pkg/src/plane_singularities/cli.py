"""The single `singularity` CLI entry point."""

import argparse
import logging
import sys

from pydantic import ValidationError

from plane_singularities.branch import (
    Branch,
    CharPairs,
    branch_multiplicity,
    branch_pairs,
    conjugate_valuations,
    delta_from_pairs,
    intersection_number,
    pairs_from_root_valuations,
    parametrization_exponents,
    parametrization_pairs,
    semigroup_generators,
    standard_branch,
    valuation_semigroup,
)
from plane_singularities.discriminant import (
    build_miniversal,
    discriminant_polynomial,
    discriminant_vanishes_on_phi,
    verify_rank_and_nash,
)
from plane_singularities.equisingularity import (
    EquisingularityDatum,
    aggregate_invariants,
    equal_equisingularity_witness,
    equisingularity_datum,
)
from plane_singularities.errors import InvariantViolation, PreconditionError, SingularityError
from plane_singularities.gkm import SpectralData, verify_gkm_lemma
from plane_singularities.local_algebra import (
    X,
    delta_from_poly,
    germ_branches,
    milnor_number,
    shear_to_generic,
    tjurina_number,
    with_adaptive_precision,
)
from plane_singularities.newton_puiseux import DEFAULT_PRECISION
from plane_singularities.parsing import (
    format_polynomial,
    parse_branch,
    parse_branches,
    parse_matrix,
    parse_polynomial,
    parse_samples,
)
from plane_singularities.polynomial import sparse_poly
from plane_singularities.report import (
    CertificateRecord,
    ErrorReport,
    Report,
    Request,
    matrix_text,
    rational_text,
    render_json,
    render_text,
)
from plane_singularities.root_valuation import RootValuationDatum, root_valuation_datum
from plane_singularities.spectral import eigen_expansions

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = "1, 2, -1"


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors become PreconditionError so they are reported like any other failure."""

    def error(self, message: str):
        raise PreconditionError(message, location="arguments")


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json", help="Report format")
    common.add_argument("--precision", type=int, help="Working precision (at least 4)")
    common.add_argument("--workers", type=int, default=1, help="Threads for intersection matrices")
    common.add_argument("--verbose", action="store_true", help="Debug logging on standard error")
    common.add_argument("--input", help="Read the operand text from this UTF-8 file")

    parser = ArgumentParser(
        prog="singularity",
        description="Exact invariants of plane-curve singularities and spectral curves",
    )
    subcommands = parser.add_subparsers(dest="command", required=True)

    invariants_cmd = subcommands.add_parser(
        "invariants", parents=[common], help="mu, tau and delta of a germ f(x, y) at the origin"
    )
    invariants_cmd.add_argument("--poly", help='Germ such as "y^2 - x^3"')

    branch_cmd = subcommands.add_parser(
        "branch", parents=[common], help="Characteristic data and delta of one branch"
    )
    branch_cmd.add_argument("--branch", help='Branch such as "x = t^4; y = t^6 + t^7"')

    rootval_cmd = subcommands.add_parser(
        "rootval", parents=[common], help="Root valuation datum of a matrix or of branches"
    )
    rootval_cmd.add_argument("--matrix", help='Matrix such as "d=2; trunc=6; 0; 1; e^3; 0"')
    rootval_cmd.add_argument("--branch", action="append", default=[], help="A branch (repeatable)")

    equising_cmd = subcommands.add_parser(
        "equising", parents=[common],
        help="Compare equisingularity types (matrix, '|'-separated branches or germ)",
    )
    equising_cmd.add_argument("--a", help="First operand")
    equising_cmd.add_argument("--b", help="Second operand")

    intersect_cmd = subcommands.add_parser(
        "intersect", parents=[common], help="Intersection number of two branches"
    )
    intersect_cmd.add_argument("--branch", action="append", default=[], help="A branch (give two)")

    gkm_cmd = subcommands.add_parser(
        "gkm-check", parents=[common],
        help="Check that equal root valuation data give equisingular spectral curves",
    )
    gkm_cmd.add_argument("--a", help="First matrix")
    gkm_cmd.add_argument("--b", help="Second matrix")

    demo_cmd = subcommands.add_parser(
        "disc-demo", parents=[common], help="Discriminant of the miniversal deformation of y^2 - x^n"
    )
    demo_cmd.add_argument("--n", type=int, required=True, help="Exponent n, 2 <= n <= 9")
    demo_cmd.add_argument("--samples", default=DEFAULT_SAMPLES, help='Nonzero distinct x-values, e.g. "1, 2, -1"')
    return parser


def _read_input(args: argparse.Namespace) -> str | None:
    if not args.input:
        return None
    with open(args.input, encoding="utf-8") as f:
        return f.read().strip()


def _operand_pair(args: argparse.Namespace, text: str | None) -> tuple[str, str]:
    """--a/--b, or the first two non-empty lines of --input."""
    if text is not None:
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if len(lines) != 2:
            raise PreconditionError(f"--input must hold two operands on separate lines, found {len(lines)}")
        return lines[0], lines[1]
    if not args.a or not args.b:
        raise PreconditionError("both --a and --b are required")
    return args.a, args.b


def _required(value: str | None, flag: str) -> str:
    if not value:
        raise PreconditionError(f"{flag} (or --input) is required")
    return value


def _pairs_text(pairs: CharPairs) -> str:
    return str(pairs)


def _rootval_result(datum: RootValuationDatum) -> dict:
    return {"w_cycles": datum.cycles(), "r": matrix_text(datum.r)}


def _equising_result(datum: EquisingularityDatum) -> dict:
    return {"pairs": [_pairs_text(p) for p in datum.branches], "inter": matrix_text(datum.inter)}


def _germ_branches(poly, precision: int | None) -> list[Branch]:
    _, generic = shear_to_generic(poly)
    return with_adaptive_precision(
        lambda p: germ_branches(generic, p), precision or DEFAULT_PRECISION
    )


def _operand_branches(text: str, precision: int | None) -> list[Branch]:
    """A matrix (text begins with d=), '|'-separated branches (contains x =), or a germ."""
    stripped = text.lstrip()
    if stripped.startswith("d="):
        return eigen_expansions(parse_matrix(text), precision)
    if "x =" in text or "x=" in text:
        return parse_branches(text)
    return _germ_branches(parse_polynomial(text), precision)


def _is_node(datum: EquisingularityDatum) -> bool:
    return len(datum.branches) == 2 and not any(p.pairs for p in datum.branches) and datum.inter[0][1] == 1


def run_invariants(args: argparse.Namespace, request: Request, text: str | None) -> Report:
    source = text if text is not None else _required(args.poly, "--poly")
    f = parse_polynomial(source)
    warnings = []
    mu = milnor_number(f)
    tau = tjurina_number(f)
    if mu.value == 0:
        warnings.append("mu = 0: the germ is smooth at the origin")
    shear, generic = shear_to_generic(f)

    def analyse(precision: int):
        found = germ_branches(generic, precision)
        delta = delta_from_poly(generic, found)
        datum = equisingularity_datum(found, request.workers)
        return delta, datum

    delta, datum = with_adaptive_precision(analyse, request.precision or DEFAULT_PRECISION)
    aggregate = aggregate_invariants(datum)
    if aggregate.delta != delta.value:
        raise InvariantViolation(
            f"delta from the normalization is {delta.value}, from the branches {aggregate.delta}"
        )
    if mu.value != 2 * delta.value - aggregate.branches + 1:
        raise InvariantViolation(
            f"mu = {mu.value} but 2*delta - r + 1 = {2 * delta.value - aggregate.branches + 1}"
        )
    if mu.value == 0:
        tau_delta = "PASS"
    else:
        tau_delta = "PASS" if tau.value >= delta.value and (tau.value == delta.value) == _is_node(datum) else "FAIL"
    if tau_delta == "FAIL":
        warnings.append(f"tau = {tau.value}, delta = {delta.value} do not match the node criterion")

    return Report(
        command="invariants",
        inputs_echo={"poly": source},
        result={
            "mu": mu.value,
            "tau": tau.value,
            "delta": delta.value,
            "branch_count": aggregate.branches,
            "milnor_relation_check": "PASS",
            "shear": shear,
            "tau_delta_check": tau_delta,
            "delta_from_branches": aggregate.delta,
        },
        certificates={
            "mu": CertificateRecord.from_certificate(mu),
            "tau": CertificateRecord.from_certificate(tau),
            "delta": CertificateRecord.from_certificate(delta),
        },
        warnings=warnings,
    )


def run_branch(args: argparse.Namespace, request: Request, text: str | None) -> Report:
    source = text if text is not None else _required(args.branch, "--branch")
    branch = parse_branch(source)
    exponents = parametrization_exponents(branch)
    pairs = parametrization_pairs(branch)
    puiseux = branch_pairs(branch)
    valuations = conjugate_valuations(branch)
    recovered = pairs_from_root_valuations(sorted(set(valuations))) if valuations else CharPairs(())
    if recovered != pairs:
        raise InvariantViolation(f"pairs {pairs} recovered as {recovered} from the root valuations")
    delta = delta_from_pairs(puiseux)
    elements = valuation_semigroup(standard_branch(puiseux), delta.stabilized_at)
    return Report(
        command="branch",
        inputs_echo={"branch": source},
        result={
            "exponents": str(exponents),
            "pairs": _pairs_text(pairs),
            "puiseux_pairs": _pairs_text(puiseux),
            "multiplicity": branch_multiplicity(branch),
            "conjugate_valuations": [rational_text(v) for v in valuations],
            "recovered_pairs": _pairs_text(recovered),
            "delta": delta.value,
            "conductor": 2 * delta.value,
            "semigroup_generators": semigroup_generators(elements, delta.stabilized_at),
        },
        certificates={"delta": CertificateRecord.from_certificate(delta)},
    )


def run_rootval(args: argparse.Namespace, request: Request, text: str | None) -> Report:
    if text is not None:
        source = {"input": text}
        branches = _operand_branches(text, request.precision)
    elif args.matrix:
        source = {"matrix": args.matrix}
        branches = eigen_expansions(parse_matrix(args.matrix), request.precision)
    elif args.branch:
        source = {"branch": list(args.branch)}
        branches = [parse_branch(b) for b in args.branch]
    else:
        raise PreconditionError("give --matrix, --branch or --input")
    return Report(
        command="rootval",
        inputs_echo=source,
        result=_rootval_result(root_valuation_datum(branches)),
    )


def run_equising(args: argparse.Namespace, request: Request, text: str | None) -> Report:
    a, b = _operand_pair(args, text)
    first = equisingularity_datum(_operand_branches(a, request.precision), request.workers)
    second = equisingularity_datum(_operand_branches(b, request.precision), request.workers)
    witness = equal_equisingularity_witness(first, second)
    result = {"equal": witness is not None}
    if witness is not None:
        result["witness_bijection"] = [j + 1 for j in witness]
    result["a"] = _equising_result(first)
    result["b"] = _equising_result(second)
    return Report(command="equising", inputs_echo={"a": a, "b": b}, result=result)


def run_intersect(args: argparse.Namespace, request: Request, text: str | None) -> Report:
    sources = [text] if text is not None else list(args.branch)
    branches = parse_branches(text) if text is not None else [parse_branch(b) for b in args.branch]
    if len(branches) != 2:
        raise PreconditionError(f"intersect needs exactly two branches, got {len(branches)}")
    return Report(
        command="intersect",
        inputs_echo={"branch": sources},
        result={"number": intersection_number(*branches)},
    )


def _spectral_result(data: SpectralData) -> dict:
    return {**_rootval_result(data.rootval), **_equising_result(data.equising)}


def run_gkm_check(args: argparse.Namespace, request: Request, text: str | None) -> Report:
    a, b = _operand_pair(args, text)
    report = verify_gkm_lemma(parse_matrix(a), parse_matrix(b), request.precision, request.workers)
    return Report(
        command="gkm-check",
        inputs_echo={"a": a, "b": b},
        result={
            "rootval_equal": report.rootval_equal,
            "equising_equal": report.equising_equal,
            "implication": report.implication,
            "converse_holds": report.converse_holds,
            "a": _spectral_result(report.first),
            "b": _spectral_result(report.second),
        },
    )


def run_disc_demo(args: argparse.Namespace, request: Request, text: str | None) -> Report:
    samples_text = text if text is not None else args.samples
    samples = parse_samples(samples_text)
    m = build_miniversal(args.n)
    discriminant = discriminant_polynomial(m)
    if not discriminant_vanishes_on_phi(m, discriminant):
        raise InvariantViolation(f"the discriminant does not vanish on phi for n = {args.n}")
    phi_gens = (X, *m.a[: max(m.n - 3, 0)])
    result = {
        "n": m.n,
        "discriminant": format_polynomial(discriminant),
        "phi": [format_polynomial(sparse_poly(p, *phi_gens)) for p in m.phi],
    }
    warnings = []
    if m.n < 3:
        warnings.append("the tangent hyperplane checks need n >= 3; only the discriminant was computed")
        result["checks"] = {}
    else:
        nash = verify_rank_and_nash(m, samples)
        result.update(
            checks=nash.checks,
            tjurina=nash.tjurina,
            samples=[
                {
                    "x": rational_text(check.x),
                    "rank_on_critical": check.rank_on_critical,
                    "rank_off_critical": check.rank_off_critical,
                    "normal": [rational_text(v) for v in check.normal],
                }
                for check in nash.samples
            ],
            thom_boardman=[
                {
                    "x": rational_text(check.x),
                    "rank_on_stratum": check.rank_on_stratum,
                    "rank_off_stratum": check.rank_off_stratum,
                }
                for check in nash.thom_boardman
            ],
        )
    return Report(
        command="disc-demo",
        inputs_echo={"n": str(args.n), "samples": samples_text},
        result=result,
        warnings=warnings,
    )


COMMANDS = {
    "invariants": run_invariants,
    "branch": run_branch,
    "rootval": run_rootval,
    "equising": run_equising,
    "intersect": run_intersect,
    "gkm-check": run_gkm_check,
    "disc-demo": run_disc_demo,
}


def _emit(report: Report | ErrorReport, fmt: str) -> None:
    print(render_json(report) if fmt == "json" else render_text(report))


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except PreconditionError as exc:
        _emit(ErrorReport(error=type(exc).__name__, detail=exc.detail, location=exc.location), "json")
        return exc.exit_code
    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
        )
    try:
        request = Request(
            command=args.command, format=args.format, precision=args.precision, workers=args.workers
        )
    except ValidationError as exc:
        error = ErrorReport(error="PreconditionError", detail=str(exc.errors()[0]["msg"]),
                            location=".".join(map(str, exc.errors()[0]["loc"])))
        _emit(error, args.format)
        return PreconditionError.exit_code

    try:
        report = COMMANDS[args.command](args, request, _read_input(args))
    except SingularityError as exc:
        logger.debug("%s failed: %s", args.command, exc)
        _emit(
            ErrorReport(error=type(exc).__name__, detail=exc.detail, location=exc.location),
            request.format,
        )
        return exc.exit_code
    except OSError as exc:
        _emit(ErrorReport(error="InputError", detail=str(exc), location=args.input), request.format)
        return PreconditionError.exit_code

    _emit(report, request.format)
    return 0


def entrypoint() -> None:
    raise SystemExit(main())
