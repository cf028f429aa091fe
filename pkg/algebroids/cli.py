"""Command-line front end: ``algebroids VERB [INPUT ...] [options]``."""
import argparse
import logging
import sys
import uuid
from typing import List, Optional

from . import config
from .document import dumps
from .errors import AlgebroidError, InputError
from .jobs import JobFactory, JobOptions, JobStage, OutputFormat, Verb, progress_manager

logger = logging.getLogger(__name__)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INPUT = 2


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="algebroids",
        description="Exact calculus on Lie algebroids with almost complex and Poisson structures.",
    )
    parser.add_argument("verb", choices=[verb.value for verb in Verb])
    parser.add_argument("inputs", nargs="*", help="definition documents (.json) or catalogue names")
    parser.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    parser.add_argument("--seed", type=int, default=None, help=f"random seed (default {config.SEED})")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers for independent instances")
    parser.add_argument("--points", type=int, default=None, help="sample points or random instances")
    parser.add_argument("--p", type=int, default=None)
    parser.add_argument("--q", type=int, default=None)
    parser.add_argument("--n", type=int, action="append", default=[], help="sphere parameter, repeatable")
    parser.add_argument("--golden", action="store_true", help="check the closed sphere formulas")
    parser.add_argument("--matrix", action="store_true", help="reproduce the n = 2 base matrix")
    parser.add_argument("--compat", action="store_true", help="add the compatibility report")
    parser.add_argument("--endomorphism", "-J", default=None)
    parser.add_argument("--bisection", "--pi", dest="bisection", default=None)
    parser.add_argument("--multivector", dest="multivectors", action="append", default=[])
    parser.add_argument("--morphism", default=None)
    parser.add_argument("--connection", default=None)
    return parser.parse_args(argv)


def _options(args: argparse.Namespace) -> JobOptions:
    return JobOptions(
        inputs=list(args.inputs),
        endomorphism=args.endomorphism,
        bisection=args.bisection,
        multivectors=list(args.multivectors),
        morphism=args.morphism,
        connection=args.connection,
        seed=args.seed if args.seed is not None else config.SEED,
        points=args.points,
        jobs=max(1, args.jobs),
        p=args.p,
        q=args.q,
        n=list(args.n),
        golden=args.golden,
        matrix=args.matrix,
        compat=args.compat,
        output_format=OutputFormat.JSON if args.json else OutputFormat.TEXT,
    )


def _failure(verb: str, error: AlgebroidError, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        detail = error.detail if isinstance(error.detail, (str, int, list, tuple, type(None))) else str(error.detail)
        return dumps({'verb': verb, 'verdict': False,
                      'error': {'type': type(error).__name__, 'message': str(error), 'detail': detail}})
    return f"{type(error).__name__}: {error}\nverdict: false"


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_args(argv)
    logging.basicConfig(level=config.LOG_LEVEL, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    options = _options(args)
    task_id = uuid.uuid4().hex[:8]
    progress_manager.create_task(task_id)

    def progress_cb(stage, percent, message):
        progress_manager.update(task_id, JobStage(stage), percent, message)

    job = JobFactory.get_job(Verb(args.verb), options, progress_cb)
    try:
        report = job.run()
    except InputError as e:
        progress_manager.fail(task_id, str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AlgebroidError as e:
        progress_manager.fail(task_id, str(e))
        print(_failure(args.verb, e, options.output_format))
        return EXIT_FALSE
    finally:
        progress_manager.remove(task_id)

    print(report.render(options.output_format))
    return EXIT_TRUE if report.verdict else EXIT_FALSE


if __name__ == "__main__":
    raise SystemExit(main())
