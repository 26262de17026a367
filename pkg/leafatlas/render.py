import json

import jinja2
import pydantic

from . import schemas


def sci(x: float | None) -> str:
    if x is None:
        return ''
    return f'{x:.3e}'


def yesno(x: bool) -> str:
    return 'yes' if x else 'no'


def nodes(x: list[int]) -> str:
    return '{' + ','.join(str(i) for i in x) + '}'


def pairs(x: list[tuple[int, int]]) -> str:
    return '{' + ','.join(f'({i},{j})' for i, j in x) + '}'


def matrix(rows: list[list[int]]) -> str:
    cells = (' '.join(f'{v:>2}' for v in row) for row in rows)
    return '[' + '; '.join(cells) + ']'


env = jinja2.Environment(
    loader=jinja2.PackageLoader('leafatlas', 'templates'),
    undefined=jinja2.StrictUndefined,
    keep_trailing_newline=True,
    trim_blocks=True,
    lstrip_blocks=True,
    autoescape=False,
)
env.filters['sci'] = sci
env.filters['yesno'] = yesno
env.filters['nodes'] = nodes
env.filters['pairs'] = pairs
env.filters['matrix'] = matrix


def to_json(report: pydantic.BaseModel) -> str:
    """Stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report.model_dump(mode='json'), indent=2,
                      sort_keys=True) + '\n'


def atlas_markdown(report: schemas.AtlasReport) -> str:
    return env.get_template('atlas.md.j2').render(report=report)


def verify_markdown(report: schemas.VerifyReport) -> str:
    return env.get_template('verify.md.j2').render(report=report)


def catalog_markdown(report: schemas.CatalogReport) -> str:
    return env.get_template('catalog.md.j2').render(report=report)
