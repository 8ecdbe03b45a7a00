# hyperquadric.py
import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Type

from checkers.equivalence import Equiv1Checker
from checkers.planes import BoundaryChecker, FaranTypeChecker
from checkers.rigidity import (BallChecker, DoubleDimChecker, Less2Checker, LessChecker,
                               MainChecker, Same2Checker, SameChecker)
from core.base import BaseTheoremChecker, TheoremReport
from core.config import FuzzConfig, setup_logging
from core.corpus import CorpusEntry, build_corpora
from core.errors import DescriptorError, HyperquadricError, UnknownCheckerError
from core.grassmann import (generic_plane_image_dim, plane_from_chart, plane_kind, span_of_image,
                            symbolic_plane_image_dim)
from core.maps import RationalMap, classify, decompose_quasi, is_orthogonal, verify_quasi
from core.serialize import (chart_from_json, dumps, loads, map_from_descriptor, map_to_descriptor,
                            orthogonality_to_json, subspace_from_json, subspace_to_json,
                            verdict_to_json, with_schema)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2


class CheckerFactory:
    """
    Factory class for creating theorem checkers
    """

    _checkers: Dict[str, Type[BaseTheoremChecker]] = {
        'Same': SameChecker,
        'Less': LessChecker,
        'Less2': Less2Checker,
        'Same2': Same2Checker,
        'DoubleDim': DoubleDimChecker,
        'Main': MainChecker,
        'Ball': BallChecker,
        'Boundary': BoundaryChecker,
        'FaranType': FaranTypeChecker,
        'Equiv1': Equiv1Checker,
    }

    @classmethod
    def create_checker(cls, theorem_id: str, config: Optional[Dict[str, Any]] = None) -> BaseTheoremChecker:
        """Create a checker instance based on theorem id (case-insensitive)"""
        lookup = {name.lower(): checker for name, checker in cls._checkers.items()}
        checker_class = lookup.get(theorem_id.lower())
        if not checker_class:
            available = ', '.join(cls._checkers.keys())
            raise UnknownCheckerError(f"Unknown theorem: {theorem_id}. "
                                      f"Available theorems: {available}")
        return checker_class(config)

    @classmethod
    def get_available_checkers(cls) -> List[str]:
        return list(cls._checkers.keys())

    @classmethod
    def register_checker(cls, name: str, checker_class: Type[BaseTheoremChecker]):
        cls._checkers[name] = checker_class


def check_theorem(theorem_id: str, corpus: Optional[List[CorpusEntry]] = None,
                  config: Optional[Dict[str, Any]] = None) -> TheoremReport:
    """Run one checker over ``corpus`` (its own default corpus when omitted)"""
    checker = CheckerFactory.create_checker(theorem_id, config)
    return checker.check_corpus(checker.build_corpus() if corpus is None else corpus)


def _fuzz_task(theorem_id: str, corpus: List[CorpusEntry], config: Dict[str, Any]) -> Dict[str, Any]:
    # may run in a worker process; the corpus arrives built
    return check_theorem(theorem_id, corpus, config).to_dict()


# ---------------------------------------------------------------------------
# input / output

class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1 like every other input error"""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"Error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def read_json_input(value: str) -> Any:
    """Inline JSON, '-' for stdin, or a file path"""
    if value.lstrip().startswith(("{", "[")):
        return loads(value, "inline input")
    if value == "-":
        return loads(sys.stdin.read(), "stdin")
    try:
        with open(value, 'r', encoding='utf-8') as f:
            return loads(f.read(), value)
    except OSError as e:
        raise DescriptorError(f"cannot read {value}: {e.strerror}")


def read_map(value: str) -> RationalMap:
    data = read_json_input(value)
    if isinstance(data, dict) and "map" in data:
        data = data["map"]
    return map_from_descriptor(data)


def emit(args, payload: Dict[str, Any], lines: List[str]) -> None:
    document = dumps(with_schema(payload))
    if args.format == "json":
        print(document)
    else:
        for line in lines:
            print(line)
    if getattr(args, "out", None):
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(document + "\n")
        logger.info(f"report written to {args.out}")


def build_config(args) -> Dict[str, Any]:
    keys = ("seed", "trials", "height", "retries", "max_dim", "max_degree", "seeds", "workers",
            "plane_trials", "sign_trials", "pair_trials")
    given = {key: getattr(args, key) for key in keys if getattr(args, key, None) is not None}
    return FuzzConfig.create_custom_config(**given)


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args) -> int:
    F = read_map(args.input)
    config = build_config(args)
    result = classify(F, config['retries'], config['seed'])
    payload = {"command": "classify", "map": map_to_descriptor(F), **verdict_to_json(result)}
    lines = [f"Map: {F}", f"Verdict: {result.verdict.value}"]
    if result.decomposition is not None:
        lines.append(f"A ≅ {result.A.describe()}")
        lines.append(f"B ≅ {result.B.describe()}")
    if result.common_factor is not None:
        lines.append(f"Common factor: {payload['common_factor']}")
    if result.gram_scalar is not None:
        lines.append(f"Gram scalar: {payload['gram_scalar']}")
    emit(args, payload, lines)
    return EXIT_OK


def cmd_ortho_test(args) -> int:
    F = read_map(args.input)
    result = is_orthogonal(F)
    payload = {"command": "ortho-test", "map": map_to_descriptor(F), **orthogonality_to_json(result)}
    lines = [f"Map: {F}", f"Orthogonal: {str(result.orthogonal).lower()}"]
    if result.orthogonal:
        lines.append(f"k = {result.k}, rho = {payload['rho']}")
    else:
        lines.append(f"Remainder: {payload['remainder']}")
    emit(args, payload, lines)
    return EXIT_OK


def cmd_decompose(args) -> int:
    F = read_map(args.input)
    config = build_config(args)
    decomposition = decompose_quasi(F, args.mode, config['retries'], config['seed'], config['height'])
    payload: Dict[str, Any] = {"command": "decompose", "map": map_to_descriptor(F), "mode": args.mode,
                               "found": decomposition is not None}
    lines = [f"Map: {F}", f"Mode: {args.mode}"]
    if decomposition is None:
        lines.append("No decomposition found.")
    else:
        payload["A"] = subspace_to_json(decomposition.A)
        payload["B"] = subspace_to_json(decomposition.B)
        lines.append(f"A ≅ {decomposition.A.describe()}")
        lines.append(f"B ≅ {decomposition.B.describe()}")
    emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    F = read_map(args.input)
    witness = read_json_input(args.witness)
    if not isinstance(witness, dict) or "A" not in witness or "B" not in witness:
        raise DescriptorError("a witness needs both A and B", "witness")
    A, B = subspace_from_json(witness["A"]), subspace_from_json(witness["B"])
    verified = verify_quasi(F, A, B, args.mode)
    payload = {"command": "verify", "map": map_to_descriptor(F), "mode": args.mode,
               "A": subspace_to_json(A), "B": subspace_to_json(B), "verified": verified}
    lines = [f"Map: {F}", f"A ≅ {A.describe()}", f"B ≅ {B.describe()}",
             f"Quasi-{args.mode} witness verified: {str(verified).lower()}"]
    emit(args, payload, lines)
    return EXIT_OK if verified else EXIT_COUNTEREXAMPLE


def cmd_planes(args) -> int:
    if args.chart is None and args.map is None:
        raise DescriptorError("planes needs --chart, --map or both")
    payload: Dict[str, Any] = {"command": "planes"}
    lines = []
    F = read_map(args.map) if args.map else None
    if args.chart is not None:
        chart = chart_from_json(read_json_input(args.chart))
        plane = plane_from_chart(chart)
        kind = plane_kind(chart)
        payload.update({"kind": kind.value, "plane": subspace_to_json(plane)})
        lines += [f"Kind: {kind.value}", f"Plane ≅ {plane.describe()}"]
        if F is not None:
            image = span_of_image(F, plane)
            payload["image"] = subspace_to_json(image)
            lines.append(f"Image span ≅ {image.describe()} (projective dim {image.projective_dim})")
    elif F is not None:
        config = build_config(args)
        k = args.k if args.k is not None else min(F.source.r, F.source.s) - 1
        trials = config['trials'] if args.trials is not None else config['plane_trials']
        sampled = generic_plane_image_dim(F, k, trials, config['seed'], config['height'])
        payload.update({"map": map_to_descriptor(F), "k": k, "trials": trials, "sampled_dim": sampled})
        lines += [f"Map: {F}", f"{k}-planes: sampled image dimension {sampled}"]
        if args.symbolic:
            generic = symbolic_plane_image_dim(F, k)
            payload["generic_dim"] = generic
            lines.append(f"{k}-planes: generic image dimension {generic}")
    emit(args, payload, lines)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    config = build_config(args)
    names = (CheckerFactory.get_available_checkers() if args.theorem.lower() == "all" else [args.theorem])
    checkers = [CheckerFactory.create_checker(name, config) for name in names]
    theorems = [checker.theorem_id for checker in checkers]
    print(f"Fuzzing {', '.join(theorems)} with seed {config['seed']}...", file=sys.stderr)

    kinds = list(dict.fromkeys(kind for checker in checkers for kind in checker.corpora))
    corpora = build_corpora(kinds, config)
    corpus_lists = [checker.select_corpus(corpora) for checker in checkers]

    if config['workers'] > 1 and len(theorems) > 1:
        with ProcessPoolExecutor(max_workers=config['workers']) as pool:
            results = list(pool.map(_fuzz_task, theorems, corpus_lists, [config] * len(theorems)))
    else:
        results = [_fuzz_task(theorem_id, corpus, config)
                   for theorem_id, corpus in zip(theorems, corpus_lists)]
    reports = [TheoremReport.from_dict(data) for data in results]

    payload = {
        "command": "fuzz",
        "seed": config['seed'],
        "config": {key: config[key] for key in ("seeds", "max_dim", "max_degree", "height", "retries",
                                                "trials", "plane_trials", "sign_trials", "pair_trials")},
        "reports": {report.theorem: report.to_dict() for report in reports},
    }
    lines = [f"\n{'=' * 80}", "FUZZ SUMMARY", f"{'=' * 80}"]
    for report in reports:
        status = "ok" if report.ok else f"{len(report.counterexamples)} counterexample(s)"
        lines.append(f"{report.theorem}: {report.verified}/{report.satisfied} verified, "
                     f"{report.vacuous} vacuous, {status}")
    emit(args, payload, lines)
    return EXIT_OK if all(report.ok for report in reports) else EXIT_COUNTEREXAMPLE


# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--format', choices=('text', 'json'), default='text',
                        help='Output format (default: text)')
    parser.add_argument('--seed', type=int, default=None,
                        help='Seed for every random choice (default: $HYPERQUADRIC_SEED or built-in)')
    parser.add_argument('--height', type=int, default=None, help='Coefficient height bound')
    parser.add_argument('--retries', type=int, default=None, help='Decomposition retries')
    parser.add_argument('--trials', type=int, default=None, help='Sampling trials')
    parser.add_argument('--out', type=str, default=None, help='Also write the JSON report here')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='hyperquadric',
                     description='Orthogonal maps between indefinite projective spaces')
    parser.add_argument('--log-level', default='WARNING', help='Logging level (default: WARNING)')
    parser.add_argument('--log-file', default=None, help='Also log to this file')
    sub = parser.add_subparsers(dest='command', required=True)

    for name, handler, help_text in (
            ('classify', cmd_classify, 'Classify a map'),
            ('ortho-test', cmd_ortho_test, 'Decide orthogonality by divisibility'),
            ('decompose', cmd_decompose, 'Find a quasi decomposition A (+) B'),
            ('verify', cmd_verify, 'Verify a supplied quasi decomposition witness')):
        command = sub.add_parser(name, help=help_text)
        command.add_argument('input', help='Map descriptor: path, inline JSON or - for stdin')
        _add_common(command)
        command.set_defaults(handler=handler)
        if name in ('decompose', 'verify'):
            command.add_argument('--mode', choices=('standard', 'linear'), default='standard')
        if name == 'verify':
            command.add_argument('--witness', required=True,
                                 help='JSON with A and B subspaces (e.g. classify --format json output)')

    planes = sub.add_parser('planes', help='Chart kinds and plane images')
    planes.add_argument('--chart', default=None, help='Chart descriptor: path or inline JSON')
    planes.add_argument('--map', default=None, help='Map descriptor: path or inline JSON')
    planes.add_argument('--k', type=int, default=None, help='Projective plane dimension')
    planes.add_argument('--symbolic', action='store_true', help='Also compute the generic rank symbolically')
    _add_common(planes)
    planes.set_defaults(handler=cmd_planes)

    fuzz = sub.add_parser('fuzz', help='Run theorem checkers over the generated corpus')
    fuzz.add_argument('--theorem', default='all',
                      help=f"Theorem id or all. Options: {', '.join(CheckerFactory.get_available_checkers())}")
    fuzz.add_argument('--seeds', type=int, default=None, help='Seeds per corpus cell')
    fuzz.add_argument('--max-dim', dest='max_dim', type=int, default=None, help='Cap on n and n\'')
    fuzz.add_argument('--max-degree', dest='max_degree', type=int, default=None, help='Cap on the degree')
    fuzz.add_argument('--workers', type=int, default=None, help='Worker processes (one task per theorem)')
    fuzz.add_argument('--plane-trials', dest='plane_trials', type=int, default=None,
                      help='Planes sampled per map (Boundary, FaranType)')
    fuzz.add_argument('--sign-trials', dest='sign_trials', type=int, default=None,
                      help='Points sampled for sign evidence')
    fuzz.add_argument('--pair-trials', dest='pair_trials', type=int, default=None,
                      help='Orthogonal pairs sampled per map (Equiv1)')
    _add_common(fuzz)
    fuzz.set_defaults(handler=cmd_fuzz)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level, args.log_file)
    try:
        return args.handler(args)
    except HyperquadricError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("\nCancelled by user.", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
