"""Entry-point script that dispatches om-forge subcommands and writes JSON reports."""

import sys
import argparse
import pathlib
sys.path.append(str(pathlib.Path(__file__).parent.parent))
import logging
from typing import Optional

from pydantic import BaseModel

from src.config_loader import CONFIG
from src.errors import BudgetExhausted, OMError, ParseError, ValidationError
from src.acceptance.suites import SUITES, run_suites
from src.classify.mutation_graph import flip_distance_to_euclidean, mutation_graph_bfs
from src.classify.report import classify
from src.classify.summary import summary_table
from src.extensions.lexicographic import lex_extend, new_cocircuits, parse_spec
from src.extensions.mandel import mandel_from_euclidean_mutant
from src.extensions.perturbation import perturb_extension
from src.faces.mutations import adjacency_table, flip_basis, l_statistic, mutations
from src.faces.topes import topes
from src.matroid.canonical import canonical_form
from src.matroid.io import load, read_chirotope, read_cocircuits, save
from src.matroid.validation import validate_chirotope, validate_cocircuit_axioms
from src.programs.cycles import analyze_cycle, reduce_cycle_chordless, very_strong_component_report
from src.programs.program import Program, euclidean_all, is_euclidean
from src.signs.sign_vector import Sign, SignVector
from src.utils.formatting import print_adjacency, print_frame, print_suite_results
from src.utils.json_utils import dumps, stringify_keys

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_INVALID = 0, 1, 2, 3


class RunConfig(BaseModel):
    """Merged CLI flags and environment defaults; recorded in every output."""

    command: str
    inputs: list[str] = []
    seed: int
    threads: int
    max_nodes: int
    max_depth: int
    max_candidates: int
    time_ms: int
    out: Optional[str] = None
    log_level: str = "INFO"
    quiet: bool = False


def _ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise ParseError(f"Expected comma-separated element indices, got {text!r}") from exc


def _sign_vector(text: str) -> SignVector:
    try:
        return SignVector.from_string(text)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"Bad sign vector {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="om-forge", description="Oriented-matroid kernel: programs, mutations and extensions")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Seed for every random choice (default OM_FORGE_SEED)")
    common.add_argument("--out", type=str, help="Write JSON here instead of stdout")
    common.add_argument("--threads", type=int, help="Thread cap (default OM_FORGE_THREADS)")
    common.add_argument("--max-nodes", type=int, help="Mutation-graph class budget")
    common.add_argument("--max-depth", type=int, help="Mutation-graph depth budget")
    common.add_argument("--max-candidates", type=int, help="Mandel search candidate budget")
    common.add_argument("--time-ms", type=int, help="Wall-clock budget for searches, 0 for none")
    common.add_argument("--log-level", type=str, help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--quiet", action="store_true", help="No tables on stderr")

    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, with_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, parents=[common])
        if with_input:
            p.add_argument("input", help=".chi, .pts or .ccj file")
        return p

    add("validate", "Check chirotope or cocircuit axioms")
    add("cocircuits", "List cocircuits")
    add("topes", "List topes and mark the simplicial ones")
    p = add("mutations", "Mutation certificates, adjacency table and L")
    p.add_argument("--cross-check", action="store_true", help="Compare against simplicial tope enumeration")
    p = add("euclidean", "Euclideaness of one program")
    p.add_argument("--g", type=int, required=True, help="Element at infinity")
    p.add_argument("--f", type=int, required=True, help="Target element")
    p.add_argument("--analyze", action="store_true", help="Reduce the witness to a chordless cycle and report its structure")
    add("euclidean-all", "Verdicts for every program")
    p = add("lexext", "Lexicographic extension")
    p.add_argument("--spec", type=str, required=True, help='e.g. "0:+,1:-,2:+"')
    p.add_argument("--method", choices=["auto", "chirotope", "localization"], default="auto")
    p.add_argument("--save", type=str, help="Write the extension to a .chi/.ccj file")
    p = add("flip", "Flip a mutation")
    p.add_argument("--basis", type=str, required=True, help='e.g. "0,1,2,3"')
    p.add_argument("--save", type=str)
    p = add("perturb", "Perturb an extension element at one cocircuit")
    p.add_argument("--element", type=int, required=True)
    p.add_argument("--cocircuit", type=str, required=True, help="Cocircuit of the input with 0 at the element")
    p.add_argument("--sign", choices=["+", "-"], default="-")
    p.add_argument("--save", type=str)
    p = add("classify", "Realizable, Euclidean, Mandel and Las Vergnas report")
    p.add_argument("--dual", action="store_true", help="Classify the dual side by side")
    p.add_argument("--no-mandel", action="store_true", help="Skip the Mandel witness search")
    p.add_argument("--canonical", action="store_true", help="Include the canonical form")
    p.add_argument("--flip-distance", action="store_true", help="Flip distance to a Euclidean oriented matroid")
    p = add("mutation-graph", "Flip-BFS up to isomorphism", with_input=False)
    p.add_argument("--from", dest="seed_file", type=str, required=True, help="Seed oriented matroid file")
    p.add_argument("--depth", type=int, help="Same as --max-depth")
    p.add_argument("--no-classify", action="store_true", help="Skip per-class Euclideaness")
    p = add("mandel-pipeline", "Mandel extension from a Euclidean mutant")
    p.add_argument("--mutation", type=str, required=True, help='Mutation basis, e.g. "0,1,2,3"')
    p.add_argument("--g", type=int, required=True, help="Element outside the mutation")
    p.add_argument("--f", type=int, help="Element of the mutation (default its smallest)")
    p.add_argument("--save", type=str)
    p = add("summary", "L statistics grouped by class", with_input=False)
    p.add_argument("inputs", nargs="+", help="Oriented matroid files")
    p.add_argument("--no-mandel", action="store_true")
    p = add("acceptance", "Run acceptance suites", with_input=False)
    p.add_argument("suites", nargs="+", help=f"Suite ids or 'all': {', '.join(SUITES)}")
    p.add_argument("--instances", type=int, help="Instances per suite (default per suite)")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    inputs = []
    if getattr(args, "input", None):
        inputs = [args.input]
    elif getattr(args, "seed_file", None):
        inputs = [args.seed_file]
    elif getattr(args, "inputs", None):
        inputs = list(args.inputs)
    depth = getattr(args, "depth", None)

    def pick(value, key):
        return CONFIG[key] if value is None else value

    return RunConfig(
        command=args.command,
        inputs=inputs,
        seed=pick(args.seed, "seed"),
        threads=pick(args.threads, "threads"),
        max_nodes=pick(args.max_nodes, "max_nodes"),
        max_depth=pick(depth if depth is not None else args.max_depth, "max_depth"),
        max_candidates=pick(args.max_candidates, "max_candidates"),
        time_ms=pick(args.time_ms, "time_ms"),
        out=args.out,
        log_level=(args.log_level or CONFIG["log_level"] or "INFO").upper(),
        quiet=args.quiet,
    )


# -- commands ------------------------------------------------------------------------------
# Each returns (payload, exit code).


def cmd_validate(args, cfg: RunConfig):
    path = pathlib.Path(args.input)
    if path.suffix.lower() == ".chi":
        chi = read_chirotope(path)
        report = validate_chirotope(chi)
        payload = {"kind": "chirotope", "rank": chi.rank, "n": chi.n, **report.summary()}
    elif path.suffix.lower() == ".pts":
        om = load(path).om
        payload = {"kind": "points", "rank": om.rank, "n": om.n, "ok": True, "violations": []}
        report = None
    else:
        om = read_cocircuits(path)
        report = validate_cocircuit_axioms(om.cocircuits, om.n)
        payload = {"kind": "cocircuits", "rank": om.rank, "n": om.n, **report.summary()}
    return payload, EXIT_OK if report is None or report.ok else EXIT_INVALID


def cmd_cocircuits(args, cfg):
    om = load(args.input).om
    return {"n": om.n, "rank": om.rank, "count": len(om.cocircuits), "cocircuits": [x.to_string() for x in om.ordered_cocircuits]}, EXIT_OK


def cmd_topes(args, cfg):
    om = load(args.input).om
    found = sorted(topes(om), key=lambda t: t.vector.sort_key())
    rows = [{"tope": t.vector.to_string(), "cocircuits": t.size, "simplicial": t.size == om.rank} for t in found]
    return {"count": len(rows), "simplicial": sum(r["simplicial"] for r in rows), "topes": rows}, EXIT_OK


def cmd_mutations(args, cfg):
    om = load(args.input).om
    certificates = mutations(om, cross_check=args.cross_check or None)
    table = adjacency_table(om, certificates)
    if not cfg.quiet:
        print_adjacency(table)
    return {
        "count": len(certificates),
        "L": l_statistic(om, certificates),
        "adjacency": stringify_keys(table),
        "mutations": [c.as_dict() for c in certificates],
    }, EXIT_OK


def cmd_euclidean(args, cfg):
    program = Program(load(args.input).om, args.g, args.f)
    verdict = is_euclidean(program)
    payload = verdict.model_dump(mode="json")
    if args.analyze and verdict.witness is not None:
        reduced = reduce_cycle_chordless(program, verdict.witness)
        payload["chordless"] = reduced.as_dict()
        payload["cycle_report"] = analyze_cycle(program, reduced).model_dump(mode="json")
        payload["components"] = [c.model_dump(mode="json") for c in very_strong_component_report(program)]
    return payload, EXIT_OK


def cmd_euclidean_all(args, cfg):
    om = load(args.input).om
    verdicts = euclidean_all(om, cfg.threads)
    matrix = [[None if (g, f) not in verdicts else verdicts[(g, f)].euclidean for f in range(om.n)] for g in range(om.n)]
    failing = [[g, f] for (g, f), v in verdicts.items() if not v.euclidean]
    return {
        "euclidean": not failing,
        "totally_non_euclidean": bool(verdicts) and len(failing) == len(verdicts),
        "matrix": matrix,
        "non_euclidean": failing,
    }, EXIT_OK


def cmd_lexext(args, cfg):
    om = load(args.input).om
    spec = parse_spec(args.spec)
    ext = lex_extend(om, spec, method=args.method)
    if args.save:
        save(ext, args.save)
    return {
        "spec": spec.to_string(),
        "element": om.n,
        "count": len(ext.cocircuits),
        "new": [x.to_string() for x in new_cocircuits(om, ext)],
        "chirotope": ext.chirotope.to_string() if ext.chirotope else None,
        "cocircuits": [x.to_string() for x in ext.ordered_cocircuits],
    }, EXIT_OK


def cmd_flip(args, cfg):
    om = load(args.input).om
    basis = _ints(args.basis)
    mutant = flip_basis(om, basis)
    if args.save:
        save(mutant, args.save)
    return {"basis": sorted(basis), "chirotope": mutant.chirotope.to_string(), "mutations": len(mutations(mutant))}, EXIT_OK


def cmd_perturb(args, cfg):
    om = load(args.input).om
    result = perturb_extension(om, _sign_vector(args.cocircuit), args.element, Sign.from_char(args.sign))
    if args.save:
        save(result, args.save)
    return {"element": args.element, "count": len(result.cocircuits), "cocircuits": [x.to_string() for x in result.ordered_cocircuits]}, EXIT_OK


def cmd_classify(args, cfg):
    om = load(args.input).om
    report = classify(om, mandel=not args.no_mandel, with_dual=args.dual, max_candidates=cfg.max_candidates, canonical=args.canonical)
    payload = report.model_dump(mode="json")
    payload["chain_violations"] = report.chain_violations()
    if args.flip_distance:
        payload["flip_distance_to_euclidean"] = flip_distance_to_euclidean(om, cfg.max_depth)
    if not cfg.quiet:
        print_adjacency(report.adjacency, title=f"L = {report.L}")
    if payload["chain_violations"]:
        return payload, EXIT_INVALID
    return payload, EXIT_BUDGET if report.mandel_status == "undetermined" else EXIT_OK


def cmd_mutation_graph(args, cfg):
    om = load(args.seed_file).om
    graph = mutation_graph_bfs(om, cfg.max_nodes, cfg.max_depth, classify_nodes=not args.no_classify, time_ms=cfg.time_ms, threads=cfg.threads)
    return graph.as_dict(), EXIT_OK if graph.complete else EXIT_BUDGET


def cmd_mandel_pipeline(args, cfg):
    om = load(args.input).om
    built = mandel_from_euclidean_mutant(om, _ints(args.mutation), args.g, args.f)
    if args.save:
        save(built.extension, args.save)
    return {**built.as_dict(), "verified": True, "canonical": canonical_form(built.extension)}, EXIT_OK


def cmd_summary(args, cfg):
    reports = [classify(load(path).om, mandel=not args.no_mandel, max_candidates=cfg.max_candidates) for path in args.inputs]
    table = summary_table(reports)
    if not cfg.quiet:
        print_frame(table, "Summary")
    return {"rows": table.to_dict(orient="records"), "instances": len(reports)}, EXIT_OK


def cmd_acceptance(args, cfg):
    names = list(SUITES) if "all" in args.suites else args.suites
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ParseError(f"Unknown suites {unknown}; choose from {list(SUITES)}")
    results = run_suites(
        names,
        seed=cfg.seed,
        instances=args.instances,
        max_nodes=args.max_nodes,
        max_depth=args.depth if getattr(args, "depth", None) is not None else args.max_depth,
        time_ms=cfg.time_ms,
        threads=cfg.threads,
    )
    if not cfg.quiet:
        print_suite_results(results)
    payload = {"passed": all(r.passed for r in results), "suites": [r.model_dump(mode="json") for r in results]}
    if not payload["passed"]:
        return payload, EXIT_INVALID
    return payload, EXIT_BUDGET if any(r.budget_exhausted for r in results) else EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "cocircuits": cmd_cocircuits,
    "topes": cmd_topes,
    "mutations": cmd_mutations,
    "euclidean": cmd_euclidean,
    "euclidean-all": cmd_euclidean_all,
    "lexext": cmd_lexext,
    "flip": cmd_flip,
    "perturb": cmd_perturb,
    "classify": cmd_classify,
    "mutation-graph": cmd_mutation_graph,
    "mandel-pipeline": cmd_mandel_pipeline,
    "summary": cmd_summary,
    "acceptance": cmd_acceptance,
}


def _emit(payload: dict, cfg: RunConfig) -> None:
    text = dumps({"command": cfg.command, "seed": cfg.seed, "config": cfg.model_dump(mode="json"), **payload})
    if cfg.out:
        pathlib.Path(cfg.out).write_text(text + "\n")
        logger.info("Wrote %s", cfg.out)
    else:
        sys.stdout.write(text + "\n")


def run(argv: Optional[list[str]] = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    cfg = _run_config(args)
    logging.basicConfig(level=getattr(logging, cfg.log_level, logging.INFO), format="%(asctime)s - %(levelname)s - %(message)s", stream=sys.stderr)
    saved = dict(CONFIG)
    CONFIG.update(threads=cfg.threads, seed=cfg.seed, max_nodes=cfg.max_nodes, max_depth=cfg.max_depth,
                  max_candidates=cfg.max_candidates, time_ms=cfg.time_ms)
    try:
        payload, code = COMMANDS[cfg.command](args, cfg)
    except ValidationError as exc:
        logging.error("%s", exc)
        report = exc.report.summary() if exc.report is not None else None
        _emit({"error": str(exc), "report": report}, cfg)
        return exc.exit_code
    except BudgetExhausted as exc:
        logging.error("Budget exhausted: %s", exc)
        _emit({"error": str(exc), "undetermined": True}, cfg)
        return exc.exit_code
    except OMError as exc:
        logging.error("%s", exc)
        _emit({"error": str(exc), "details": exc.details}, cfg)
        return exc.exit_code
    except OSError as exc:
        logging.error("I/O error: %s", exc)
        return EXIT_PARSE
    finally:
        CONFIG.clear()
        CONFIG.update(saved)
    _emit(payload, cfg)
    if code != EXIT_OK:
        logger.info("Exit code %d", code)
    return code


def main():
    """Console entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
