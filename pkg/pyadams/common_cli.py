"""
The `pyadams` command line.

Exit codes: 0 success or certified, 1 refuted or invalid input, 2
inconclusive (truncated), 3 internal error.
"""
import argparse
import sys

from pyadams.common_adams import AdamsModule
from pyadams.common_benchmark import Timed
from pyadams.common_cofibration import check_cofibration, is_cofibrant
from pyadams.common_complex import (
    BoundedComplex,
    chain_map_report,
    complex_homology,
    concentrated,
    summary,
    tensor_complexes,
)
from pyadams.common_config import SessionConfig, window_parse
from pyadams.common_debugging import traceback_print
from pyadams.common_dict import simple_obj
from pyadams.common_errors import InputError, PyAdamsError, ValidationError
from pyadams.common_family import family_from_config
from pyadams.common_files import text_save
from pyadams.common_homotopy import (
    is_relative_equivalence,
    quasi_iso_report,
    window_stability,
)
from pyadams.common_icecream import ic
from pyadams.common_io import dumps_object, load_object, matrix_json
from pyadams.common_monoid import tensor_over_unit
from pyadams.common_periodic import (
    PeriodicComplex,
    PeriodicMap,
    adjunction_transpose,
    periodic_homology,
    periodic_summary,
    periodify,
    validate_periodic_map,
)
from pyadams.common_picard import (
    CERTIFIED,
    INCONCLUSIVE,
    certify_inverse_pair,
    group_law_table,
    identify_shift,
)
from pyadams.common_pushout import pushout_product, pushout_product_report
from pyadams.common_report import report_emit
from pyadams.common_resolution import derived_tensor, ext_relative, resolve
from pyadams.common_witness import witness_suite

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_TRUNCATED = 2
EXIT_INTERNAL = 3


##
def _homology_table(X):
    if isinstance(X, PeriodicComplex):
        return {n: str(H) for n, H in enumerate(periodic_homology(X))}
    return {n: str(H) for n, H in complex_homology(X).items()}


def _complex_summary(X):
    if isinstance(X, PeriodicComplex):
        return periodic_summary(X)
    return summary(X)


def _as_complex(X):
    if isinstance(X, AdamsModule):
        return concentrated(X, 0)
    return X


def _write_output(args, obj):
    if args.output:
        text_save(dumps_object(obj), file=args.output)


def _verdict_code(verdict):
    return EXIT_OK if verdict else EXIT_REFUTED


def _truncation_code(truncated_p):
    return EXIT_TRUNCATED if truncated_p else EXIT_OK


##
def cmd_homology(args, cfg):
    X = _as_complex(load_object(args.input, cfg))
    return simple_obj(homology=_homology_table(X)), EXIT_OK


def cmd_tensor(args, cfg):
    X = _as_complex(load_object(args.input, cfg))
    Y = _as_complex(load_object(args.other, cfg))
    if isinstance(X, BoundedComplex) and isinstance(Y, BoundedComplex):
        T = tensor_complexes(X, Y)
    elif isinstance(X, PeriodicComplex) and isinstance(Y, PeriodicComplex):
        T = tensor_over_unit(X, Y)
    else:
        raise ValidationError("tensor needs two bounded or two periodic complexes")
    _write_output(args, T)
    return simple_obj(complex=_complex_summary(T), homology=_homology_table(T)), EXIT_OK


def cmd_derived_tensor(args, cfg):
    family = family_from_config(cfg)
    X = load_object(args.input, cfg)
    Y = load_object(args.other, cfg)
    res = derived_tensor(X, Y, family, cfg.depth, cfg, mode=args.mode)
    report = simple_obj(
        family=res.family,
        mode=res.mode,
        depth=res.depth,
        flags=res.flags,
        homology={n: str(H) for n, H in res.homology},
    )
    return report, _truncation_code(res.truncated_p)


def cmd_periodify(args, cfg):
    M = _as_complex(load_object(args.input, cfg))
    if not isinstance(M, BoundedComplex):
        raise ValidationError("periodify needs a bounded complex or a module")
    X = periodify(M, cfg.period, cfg.twist_weight)
    _write_output(args, X)
    return simple_obj(complex=periodic_summary(X), homology=_homology_table(X)), EXIT_OK


def cmd_transpose(args, cfg):
    f = load_object(args.input, cfg)
    g = adjunction_transpose(args.direction, f)
    _write_output(args, g)
    components = g.components if isinstance(g, PeriodicMap) else [h for _, h in g.components]
    return (
        simple_obj(direction=args.direction, components=[matrix_json(h.entries) for h in components]),
        EXIT_OK,
    )


def cmd_check_map(args, cfg):
    f = load_object(args.input, cfg)
    if isinstance(f, PeriodicMap):
        report = validate_periodic_map(f)
    else:
        report = chain_map_report(f)
    return report, _verdict_code(report.valid_p)


def cmd_check_quasi_iso(args, cfg):
    report = quasi_iso_report(load_object(args.input, cfg))
    return report, _verdict_code(report.verdict)


def cmd_check_p_equiv(args, cfg):
    family = family_from_config(cfg)
    f = load_object(args.input, cfg)
    report = is_relative_equivalence(f, family)
    stability = window_stability(f, family)
    report = simple_obj(**dict(report.items()), stability=stability)
    return report, _verdict_code(report.verdict)


def cmd_check_cofibration(args, cfg):
    family = family_from_config(cfg)
    obj = load_object(args.input, cfg)
    if isinstance(obj, (PeriodicComplex, BoundedComplex)):
        report = is_cofibrant(obj, family)
    else:
        report = check_cofibration(obj, family)
    return report, _verdict_code(report.verdict)


def cmd_resolve(args, cfg):
    family = family_from_config(cfg)
    X = load_object(args.input, cfg)
    R = resolve(X, args.mode, family, cfg.depth)
    _write_output(args, R.complex)
    report = simple_obj(
        mode=R.mode,
        depth=R.depth,
        family=R.family,
        flags=R.flags,
        complex=_complex_summary(R.complex),
    )
    return report, _truncation_code(R.truncated_p)


def cmd_ext(args, cfg):
    family = family_from_config(cfg)
    M = load_object(args.input, cfg)
    N = load_object(args.other, cfg)
    for obj, path in ((M, args.input), (N, args.other)):
        if not isinstance(obj, AdamsModule):
            raise InputError("ext needs modules (kind 'module')", file=path)
    res = ext_relative(M, N, family, args.s_max, mode=args.mode, depth=max(cfg.depth, args.s_max + 2))
    report = simple_obj(
        mode=res.mode,
        family=res.family,
        truncated_p=res.truncated_p,
        covered_p=res.covered_p,
        ext={s: str(E) for s, E in enumerate(res.ext)},
    )
    return report, _truncation_code(res.truncated_p)


def cmd_pushout_product(args, cfg):
    f = load_object(args.input, cfg)
    g = load_object(args.other, cfg)
    problem = pushout_product(f, g)
    _write_output(args, problem.corner_map)
    return pushout_product_report(problem, family_from_config(cfg)), EXIT_OK


def cmd_witness_suite(args, cfg):
    return witness_suite(cfg), EXIT_OK


def cmd_picard_certify(args, cfg):
    C = load_object(args.C, cfg)
    D = load_object(args.D, cfg)
    cert = certify_inverse_pair(C, D, cfg)
    report = simple_obj(
        verdict=cert.verdict,
        shift=cert.shift,
        family=cert.family,
        flags=list(cert.flags),
        homology=list(cert.homology),
        unit_homology=list(cert.unit_homology),
    )
    if cert.verdict == CERTIFIED:
        return report, EXIT_OK
    if cert.verdict == INCONCLUSIVE:
        return report, EXIT_TRUNCATED
    return report, EXIT_REFUTED


def cmd_picard_identify(args, cfg):
    X = load_object(args.input, cfg)
    shift = identify_shift(X, cfg)
    return simple_obj(shift=shift, homology=_homology_table(X)), _verdict_code(shift is not None)


def cmd_picard_table(args, cfg):
    table = group_law_table(cfg, args.bound, progress=args.progress)
    return table, _verdict_code(table.holds_p)


##
def _session_parser():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--p", type=int, default=3, help="odd prime")
    parent.add_argument("--period", type=int, default=None, help="period N (default 2p-2)")
    parent.add_argument("--twist-weight", type=int, default=None, help="twist weight w (default 2p-2)")
    parent.add_argument("--window", type=window_parse, default=(-1, 1), help="family weight window LO:HI")
    parent.add_argument("--max-rank", type=int, default=2, help="largest member rank of the detection family")
    parent.add_argument("--depth", type=int, default=4, help="resolution depth")
    parent.add_argument("--family", choices=["default", "lines"], default="default", help="detection family kind")
    parent.add_argument(
        "--parallel",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="fan independent jobs out to a thread pool",
    )
    parent.add_argument("--json-report", default=None, help="also write the report as JSON to this path")
    parent.add_argument(
        "--timing",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="print the runtime to stderr",
    )
    parent.add_argument(
        "--progress",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="show progress bars on stderr",
    )
    return parent


COMMANDS = {
    "homology": (cmd_homology, ["input"], "homology of a complex"),
    "tensor": (cmd_tensor, ["input", "other", "output"], "tensor product (over PI for periodic complexes)"),
    "derived-tensor": (cmd_derived_tensor, ["input", "other", "mode"], "derived tensor product over PI"),
    "periodify": (cmd_periodify, ["input", "output"], "periodification of a bounded complex"),
    "transpose": (cmd_transpose, ["input", "direction", "output"], "the periodification adjunction"),
    "check-map": (cmd_check_map, ["input"], "validate a map"),
    "check-quasi-iso": (cmd_check_quasi_iso, ["input"], "quasi-isomorphism check"),
    "check-p-equiv": (cmd_check_p_equiv, ["input"], "relative equivalence check against the detection family"),
    "check-cofibration": (cmd_check_cofibration, ["input"], "relative cofibration (or cofibrancy) check"),
    "resolve": (cmd_resolve, ["input", "mode", "output"], "cofibrant replacement"),
    "ext": (cmd_ext, ["input", "other", "mode", "s_max"], "Ext groups of two modules"),
    "pushout-product": (cmd_pushout_product, ["input", "other", "output"], "pushout-product of two maps"),
    "witness-suite": (cmd_witness_suite, [], "reproduce the three witnesses"),
    "picard-certify": (cmd_picard_certify, ["pair"], "certify an inverse pair"),
    "picard-identify": (cmd_picard_identify, ["input"], "recognize a shift of PI"),
    "picard-table": (cmd_picard_table, ["bound"], "the group law on shifts of PI"),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pyadams",
        description="Exact homological algebra of Adams-module complexes over Z_(p).",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parent = _session_parser()

    for name, (_, needs, help_text) in COMMANDS.items():
        sub = subparsers.add_parser(name, parents=[parent], help=help_text)
        if "input" in needs:
            sub.add_argument("input", help="input JSON file")
        if "other" in needs:
            sub.add_argument("other", help="second input JSON file")
        if "output" in needs:
            sub.add_argument("-o", "--output", default=None, help="write the resulting object as JSON")
        if "mode" in needs:
            sub.add_argument("--mode", choices=["quasi", "relative"], default="quasi", help="resolution mode")
        if "direction" in needs:
            sub.add_argument("--direction", choices=["flatten", "extend"], required=True)
        if "s_max" in needs:
            sub.add_argument("--s-max", type=int, default=2, help="highest Ext degree")
        if "pair" in needs:
            sub.add_argument("-C", required=True, help="first complex")
            sub.add_argument("-D", required=True, help="second complex")
        if "bound" in needs:
            sub.add_argument("--bound", type=int, default=3, help="largest |i|, |j|")
    return parser


def session_config(args):
    return SessionConfig(
        p=args.p,
        period=args.period,
        twist_weight=args.twist_weight,
        window=args.window,
        max_rank=args.max_rank,
        depth=args.depth,
        family_kind=args.family,
        parallel=args.parallel,
    )


def run_cli(argv):
    """Runs one command and returns its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_REFUTED if e.code else EXIT_OK

    fn = COMMANDS[args.command][0]
    ic(args.command, argv)
    try:
        cfg = session_config(args)
        with Timed(name=args.command, enabled_p=args.timing):
            report, code = fn(args, cfg)
        report = simple_obj(**{"command": args.command, "config": cfg.describe(), **dict(report.items())})
        report_emit(report, json_report=args.json_report)
        return code
    except PyAdamsError as e:
        print(f"error: {e}", file=sys.stderr, flush=True)
        return EXIT_REFUTED
    except OSError as e:
        print(f"error: {e}", file=sys.stderr, flush=True)
        return EXIT_REFUTED
    except Exception:
        traceback_print()
        return EXIT_INTERNAL


def main():
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
