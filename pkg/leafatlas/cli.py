import argparse
import logging
import os
import pathlib
import sys
import tempfile
from collections.abc import Sequence
from typing import Any
from typing import NoReturn

import pydantic

from . import __version__
from . import atlas
from . import render
from . import schemas
from . import verify
from .config import load_settings
from .config import Settings
from .config import Tolerances
from .errors import CatalogError
from .errors import LeafAtlasError
from .errors import OutputError
from .errors import UnknownForm
from .errors import UnsupportedCartanType
from .rootsys import parse_cartan_type
from .satake import catalog_hash
from .satake import dump_catalog
from .satake import load_catalog
from .satake import parse_nodes
from .satake import parse_pairs
from .satake import SatakeDiagram
from .satake import shipped_catalog
from .satake import validate


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _tolerance(value: str) -> tuple[str, float]:
    name, sep, number = value.partition('=')
    if not sep:
        raise argparse.ArgumentTypeError(f'expected name=value, got {value!r}')
    try:
        return name.strip(), float(number)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f'not a number: {number!r}') from e


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument('--format', choices=('json', 'md'), default='json')
    common.add_argument(
        '--catalog', help='catalog file (or LEAFATLAS_CATALOG)',
    )
    common.add_argument('--output', help='write the report here atomically')
    common.add_argument('--weyl-cap', type=int, default=None)
    common.add_argument('--seed', type=int, default=None)

    selector = ArgumentParser(add_help=False)
    selector.add_argument('--form', help='real-form label from the catalog')
    selector.add_argument(
        '--type', dest='cartan_type', help='e.g. A2, or A with --rank',
    )
    selector.add_argument('--rank', type=int, default=None)
    selector.add_argument('--black', default='{}', help='node set, e.g. {1,3}')
    selector.add_argument(
        '--arrows', default='{}', help='pair set, e.g. {(1,2)}',
    )
    selector.add_argument('--label', help='label for an inline diagram')

    parser = ArgumentParser(prog='leafatlas')
    parser.add_argument(
        '--version', action='version', version=f'%(prog)s {__version__}',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    commands.add_parser(
        'atlas', parents=[common, selector],
        help='leaf classes of one real form',
    )
    verify_parser = commands.add_parser(
        'verify', parents=[common, selector],
        help='numerical checks on a matrix realization',
    )
    verify_parser.add_argument('--samples', type=int, default=None)
    verify_parser.add_argument(
        '--tol', type=_tolerance, action='append', default=[],
        metavar='NAME=VALUE',
    )
    commands.add_parser(
        'catalog', parents=[common], help='validate every catalog entry',
    )
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    overrides: dict[str, Any] = {}
    if args.catalog is not None:
        overrides['leafatlas_catalog'] = args.catalog
    if args.weyl_cap is not None:
        overrides['leafatlas_weyl_cap'] = args.weyl_cap
    if args.seed is not None:
        overrides['leafatlas_seed'] = args.seed
    if getattr(args, 'samples', None) is not None:
        overrides['leafatlas_samples'] = args.samples
    return load_settings(**overrides)


def _catalog(settings: Settings) -> tuple[list[SatakeDiagram], str, str]:
    """Diagrams, sha256 of the catalog text, and a name for the source."""
    path = settings.leafatlas_catalog
    if path is None:
        diagrams = shipped_catalog()
        return diagrams, catalog_hash(dump_catalog(diagrams)), 'shipped'
    try:
        text = pathlib.Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise CatalogError(f'cannot read {path}: {e.strerror}') from e
    return load_catalog(text), catalog_hash(text), path


def _select(
        args: argparse.Namespace,
        diagrams: list[SatakeDiagram],
) -> SatakeDiagram:
    if args.form is not None:
        if args.cartan_type is not None:
            raise UsageError('--form and --type are mutually exclusive')
        wanted = args.form.replace(' ', '')
        for sd in diagrams:
            if sd.label.replace(' ', '') == wanted:
                return sd
        raise UnknownForm(args.form, [sd.label for sd in diagrams])

    if args.cartan_type is None:
        raise UsageError('give --form, or --type with --black and --arrows')
    text = args.cartan_type.strip().upper()
    if len(text) == 1:
        if args.rank is None:
            raise UsageError(f'--type {text} needs --rank')
        family, rank = text, args.rank
    else:
        try:
            family, rank = parse_cartan_type(text)
        except UnsupportedCartanType as e:
            raise UsageError(str(e)) from e
        if args.rank is not None and args.rank != rank:
            raise UsageError(
                f'--rank {args.rank} disagrees with --type {text}',
            )
    try:
        return SatakeDiagram(
            label=args.label or f'{family}{rank}',
            family=family,
            rank=rank,
            black=parse_nodes(args.black),
            arrows=parse_pairs(args.arrows),
        )
    except (CatalogError, pydantic.ValidationError) as e:
        raise UsageError(str(e)) from e


def write(document: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(document)
        sys.stdout.flush()
        return
    target = pathlib.Path(output)
    try:
        with tempfile.NamedTemporaryFile(
            'w', encoding='utf-8', dir=target.parent, prefix='.leafatlas-',
            delete=False,
        ) as f:
            f.write(document)
    except OSError as e:
        raise OutputError(output, e.strerror or str(e)) from e
    try:
        os.replace(f.name, target)
    except OSError as e:
        pathlib.Path(f.name).unlink(missing_ok=True)
        raise OutputError(output, e.strerror or str(e)) from e


def cmd_atlas(args: argparse.Namespace, settings: Settings) -> int:
    diagrams, digest, _ = _catalog(settings)
    sd = _select(args, diagrams)
    report = atlas.atlas(
        sd,
        rank_cap=settings.leafatlas_rank_cap,
        weyl_cap=settings.leafatlas_weyl_cap,
        seed=settings.leafatlas_seed,
        catalog_hash=digest,
    )
    if args.format == 'md':
        write(render.atlas_markdown(report), args.output)
    else:
        write(render.to_json(report), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    try:
        tolerances = Tolerances().override(**dict(args.tol))
    except pydantic.ValidationError as e:
        raise UsageError(f'bad --tol: {e.errors()[0]["msg"]}') from e

    diagrams, _, _ = _catalog(settings)
    sd = _select(args, diagrams)
    report = verify.verify(
        sd,
        samples=settings.leafatlas_samples,
        seed=settings.leafatlas_seed,
        tolerances=tolerances,
        rank_cap=settings.leafatlas_rank_cap,
        weyl_cap=settings.leafatlas_weyl_cap,
        max_n=settings.leafatlas_max_realization_n,
    )
    if args.format == 'md':
        write(render.verify_markdown(report), args.output)
    else:
        write(render.to_json(report), args.output)
    for check in report.failed:
        logger.error(
            'verify(%s): %s failed: value=%s tolerance=%s %s', sd.label,
            check.name, check.value, check.tolerance, check.detail,
        )
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_catalog(args: argparse.Namespace, settings: Settings) -> int:
    diagrams, digest, source = _catalog(settings)
    if not diagrams:
        logger.warning('catalog(%s): no entries', source)

    entries = []
    for sd in diagrams:
        result = validate(sd, settings.leafatlas_rank_cap)
        entries.append(schemas.CatalogEntry(
            label=sd.label,
            cartan_type=sd.cartan_type,
            black=sorted(sd.black),
            arrows=sorted(sd.arrows),
            ok=result.ok,
            failed=result.failed,
            error=result.error,
        ))
    report = schemas.CatalogReport(
        tool_version=__version__,
        seed=settings.leafatlas_seed,
        catalog_hash=digest,
        source=source,
        entries=entries,
    )
    if args.format == 'md':
        write(render.catalog_markdown(report), args.output)
    else:
        write(render.to_json(report), args.output)
    return EXIT_OK if report.ok else EXIT_FAILURE


COMMANDS = {
    'atlas': cmd_atlas,
    'verify': cmd_verify,
    'catalog': cmd_catalog,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        settings = _settings(args)
    except UsageError as e:
        sys.stderr.write(f'{parser.format_usage()}leafatlas: error: {e}\n')
        return EXIT_USAGE
    except pydantic.ValidationError as e:
        sys.stderr.write(f'leafatlas: error: {e.errors()[0]["msg"]}\n')
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args, settings)
    except (UsageError, UnknownForm, OutputError) as e:
        logger.error('%s: %s', args.command, e)
        return EXIT_USAGE
    except LeafAtlasError as e:
        logger.error('%s: %s', args.command, e)
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
