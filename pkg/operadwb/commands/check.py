"""operad-wb check: sampled law checks on a named instance."""

import argparse
import sys

from operadwb.config import settings
from operadwb.exceptions import InvariantBreach, UnsupportedInput
from operadwb.registry import get_instance
from operadwb.services.laws import check_bimodule_axioms, check_ibimodule_axioms, check_operad_axioms
from operadwb.services.structures import Bimodule, IBimodule, Operad


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("check", help="sample the structure laws of an instance")
    parser.add_argument("--instance", required=True)
    parser.add_argument("--budget", type=int, default=None, help=f"samples to draw (default {settings.BUDGET})")
    parser.add_argument("--seed", type=int, default=None, help="defaults to OPERAD_WB_SEED")
    parser.add_argument("--max-arity", type=int, default=None)
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    structure = get_instance(args.instance)
    if isinstance(structure, Operad):
        checker = check_operad_axioms
    elif isinstance(structure, Bimodule):
        checker = check_bimodule_axioms
    elif isinstance(structure, IBimodule):
        checker = check_ibimodule_axioms
    else:
        raise UnsupportedInput(f"{structure.name} has no structure laws to check")
    report = checker(structure, budget=args.budget, seed=args.seed, max_arity=args.max_arity)

    if args.json:
        sys.stdout.write(report.model_dump_json(indent=2) + "\n")
    else:
        sys.stdout.write(f"{report.instance}: {report.checked} checks, {report.summary()}\n")
        for violation in report.violations:
            sys.stdout.write(f"  {violation.law} {violation.profile}: {', '.join(violation.witnesses)}\n")
    if not report.ok:
        raise InvariantBreach(f"{report.summary()} in {report.instance}")
    return 0
