import collections
import fractions
import functools
import hashlib
import importlib.resources
import logging
import re
from collections.abc import Iterable
from typing import Self

import numpy
import pydantic

from .errors import CatalogError
from .errors import CompactRealForm
from .errors import DuplicateLabel
from .errors import InconsistentSatakeData
from .errors import InvalidDiagram
from .errors import UnsupportedCartanType
from .rootsys import build_root_system
from .rootsys import DEFAULT_RANK_CAP
from .rootsys import kernel_dim
from .rootsys import length
from .rootsys import longest_element
from .rootsys import Matrix
from .rootsys import parse_cartan_type
from .rootsys import RootSystem
from .rootsys import WeylElement


logger = logging.getLogger(__name__)

_KEYS = {'name', 'type', 'rank', 'black', 'arrows'}
_NODES = re.compile(r'^\{\s*(\d+(\s*,\s*\d+)*)?\s*\}$')
_PAIR = re.compile(r'\(\s*(\d+)\s*,\s*(\d+)\s*\)')
_PAIRS = re.compile(r'^\{\s*(\(\s*\d+\s*,\s*\d+\s*\)\s*(,\s*)?)*\}$')

# tau_star refuses to build an involution unless these hold
_STRUCTURAL_CHECKS = (
    'sigma_automorphism', 'tau_involution', 'black_negated', 'white_positive',
)


class SatakeDiagram(pydantic.BaseModel):
    """
    A Dynkin diagram decorated with black nodes and arrows.

    Fields:
        label: real-form name, e.g. ``sl(2,R)``
        family: Cartan family letter
        rank: number of simple roots
        black: 1-based indices of the black nodes
        arrows: unordered pairs of white nodes, stored as ``(i, j)``, i < j
    """

    label: str
    family: str
    rank: int
    black: frozenset[int] = frozenset()
    arrows: frozenset[tuple[int, int]] = frozenset()

    model_config = pydantic.ConfigDict(frozen=True)

    @pydantic.field_validator('family')
    @classmethod
    def normalize_family(cls, value: str) -> str:
        return value.strip().upper()

    @pydantic.field_validator('arrows')
    @classmethod
    def normalize_arrows(
            cls,
            value: frozenset[tuple[int, int]],
    ) -> frozenset[tuple[int, int]]:
        pairs = set()
        for i, j in value:
            if i == j:
                raise ValueError(f'arrow ({i},{j}) joins a node to itself')
            pairs.add((min(i, j), max(i, j)))
        return frozenset(pairs)

    @pydantic.model_validator(mode='after')
    def check_nodes(self) -> Self:
        nodes = range(1, self.rank + 1)
        for i in self.black:
            if i not in nodes:
                raise ValueError(f'black node {i} outside 1..{self.rank}')
        seen: set[int] = set()
        for pair in sorted(self.arrows):
            for i in pair:
                if i not in nodes:
                    raise ValueError(f'arrow node {i} outside 1..{self.rank}')
                if i in self.black:
                    raise ValueError(f'arrow touches black node {i}')
                if i in seen:
                    raise ValueError(f'node {i} carries more than one arrow')
                seen.add(i)
        return self

    @property
    def cartan_type(self) -> str:
        return f'{self.family}{self.rank}'

    @property
    def white(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.rank + 1) if i not in self.black)

    @property
    def is_compact(self) -> bool:
        return len(self.black) == self.rank and not self.arrows

    def arrow_partner(self, i: int) -> int:
        for j, k in self.arrows:
            if i == j:
                return k
            if i == k:
                return j
        return i

    def to_stanza(self) -> str:
        black = ','.join(str(i) for i in sorted(self.black))
        arrows = ','.join(f'({i},{j})' for i, j in sorted(self.arrows))
        return (
            f'name={self.label}; type={self.cartan_type}; '
            f'black={{{black}}}; arrows={{{arrows}}}'
        )


@pydantic.dataclasses.dataclass(frozen=True)
class Involution:
    """
    The root-space involution ``tau* = w_b . sigma`` of a Satake diagram.

    Fields:
        sigma: node permutation, ``sigma[i - 1]`` is the image of node i
        w_b: longest element of the black parabolic subgroup
        matrix: integer matrix of tau* in simple-root coordinates
    """

    sigma: tuple[int, ...]
    w_b: WeylElement
    matrix: Matrix

    @property
    def array(self) -> numpy.ndarray:
        return numpy.array(self.matrix, dtype=numpy.int64)


class RestrictedRoot(pydantic.BaseModel):
    coordinates: tuple[str, ...]
    multiplicity: int

    model_config = pydantic.ConfigDict(frozen=True)


class RealFormData(pydantic.BaseModel):
    """
    Everything the Satake diagram determines about ``g0``.

    Fields:
        label: real-form name
        cartan_type: e.g. ``A2``
        rank: rank of the complexification
        black: black nodes, sorted
        tau_star: involution matrix on simple-root coordinates
        sigma: diagram automorphism, 1-based images
        w_b: longest element over the black nodes
        w0: longest element of W
        positive_roots: |positive roots| of the complex root system
        restricted_roots: positive restricted roots with multiplicities
        real_rank: dim a0
        rank_k0: rank of k0, from the orbits of the Vogan automorphism
        dim_g: real dimension of g0
        dim_k0: dimension of k0
        dim_p0: dimension of p0
    """

    label: str
    cartan_type: str
    rank: int
    black: tuple[int, ...]
    tau_star: Matrix
    sigma: tuple[int, ...]
    w_b: WeylElement
    w0: WeylElement
    positive_roots: int
    restricted_roots: tuple[RestrictedRoot, ...]
    real_rank: int
    rank_k0: int
    dim_g: int
    dim_k0: int
    dim_p0: int

    model_config = pydantic.ConfigDict(frozen=True)

    @pydantic.model_validator(mode='after')
    def check_dimensions(self) -> Self:
        if self.dim_k0 + self.dim_p0 != self.dim_g:
            raise ValueError(
                f'dim_k0 + dim_p0 = {self.dim_k0 + self.dim_p0} '
                f'!= dim_g = {self.dim_g}',
            )
        return self

    @pydantic.computed_field  # type: ignore[prop-decorator]
    @property
    def dim_X(self) -> int:  # noqa: N802
        return self.dim_p0

    @property
    def tau(self) -> numpy.ndarray:
        return numpy.array(self.tau_star, dtype=numpy.int64)

    @property
    def has_compact_cartan(self) -> bool:
        return self.rank_k0 == self.rank


class ValidationReport(pydantic.BaseModel):
    label: str
    cartan_type: str
    checks: dict[str, bool]
    error: str | None = None

    @pydantic.computed_field  # type: ignore[prop-decorator]
    @property
    def ok(self) -> bool:
        return self.error is None and all(self.checks.values())

    @property
    def failed(self) -> list[str]:
        return [name for name, passed in self.checks.items() if not passed]


@functools.cache
def _root_system(family: str, rank: int, rank_cap: int) -> RootSystem:
    return build_root_system(family, rank, rank_cap=rank_cap)


def root_system_of(
        sd: SatakeDiagram,
        rank_cap: int = DEFAULT_RANK_CAP,
) -> RootSystem:
    return _root_system(sd.family, sd.rank, rank_cap)


# Catalog parsing


def parse_nodes(value: str, line: int | None = None) -> frozenset[int]:
    if not _NODES.match(value):
        raise CatalogError(
            f'expected a node set like {{1,3}}, got {value!r}', line,
        )
    return frozenset(int(x) for x in re.findall(r'\d+', value))


def parse_pairs(
        value: str,
        line: int | None = None,
) -> frozenset[tuple[int, int]]:
    if not _PAIRS.match(value):
        raise CatalogError(
            f'expected a pair set like {{(1,2)}}, got {value!r}', line,
        )
    return frozenset(
        (int(i), int(j)) for i, j in _PAIR.findall(value)
    )


def _stanzas(text: str) -> Iterable[list[tuple[int, str]]]:
    stanza: list[tuple[int, str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0].strip()
        if not raw.strip():
            if stanza:
                yield stanza
            stanza = []
            continue
        if content:
            stanza.append((number, content))
    if stanza:
        yield stanza


def _parse_stanza(stanza: list[tuple[int, str]]) -> SatakeDiagram:
    start = stanza[0][0]
    fields: dict[str, str] = {}
    for number, content in stanza:
        for item in content.split(';'):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition('=')
            key = key.strip()
            if not sep:
                raise CatalogError(f'expected key=value, got {item!r}', number)
            if key not in _KEYS:
                raise CatalogError(f'unknown key {key!r}', number)
            if key in fields:
                raise CatalogError(f'key {key!r} given twice', number)
            fields[key] = value.strip()

    if 'name' not in fields or not fields['name']:
        raise CatalogError('stanza has no name', start)
    if 'type' not in fields:
        raise CatalogError(f'{fields["name"]}: stanza has no type', start)

    type_value = fields['type'].upper()
    if len(type_value) == 1:
        if 'rank' not in fields:
            raise CatalogError(f'type {type_value} needs a rank', start)
        family, rank = type_value, -1
    else:
        try:
            family, rank = parse_cartan_type(type_value)
        except UnsupportedCartanType as e:
            raise CatalogError(str(e), start) from e
    if 'rank' in fields:
        try:
            given = int(fields['rank'])
        except ValueError as e:
            raise CatalogError(
                f'rank is not an integer: {fields["rank"]!r}', start,
            ) from e
        if rank not in {-1, given}:
            raise CatalogError(
                f'rank {given} disagrees with type {type_value}', start,
            )
        rank = given

    try:
        return SatakeDiagram(
            label=fields['name'],
            family=family,
            rank=rank,
            black=parse_nodes(fields.get('black', '{}'), start),
            arrows=parse_pairs(fields.get('arrows', '{}'), start),
        )
    except pydantic.ValidationError as e:
        messages = '; '.join(err['msg'] for err in e.errors())
        raise CatalogError(f'{fields["name"]}: {messages}', start) from e


def load_catalog(source: str) -> list[SatakeDiagram]:
    """
    Parse catalog text into (unvalidated) diagrams, in file order.

    One stanza per diagram, stanzas separated by blank lines. Inside a
    stanza ``key=value`` pairs are separated by ``;`` or newlines and ``#``
    starts a comment. Keys:

        name    real-form label, e.g. ``su(2,1)``
        type    ``A2``, or a bare family letter together with ``rank``
        rank    optional, must agree with ``type`` when both are given
        black   set of 1-based node indices, e.g. ``{}`` or ``{1,3}``
        arrows  set of unordered pairs, e.g. ``{(1,3)}``

    Unknown keys are rejected.
    """
    diagrams: list[SatakeDiagram] = []
    seen: set[str] = set()
    for stanza in _stanzas(source):
        sd = _parse_stanza(stanza)
        if sd.label in seen:
            raise DuplicateLabel(sd.label, stanza[0][0])
        seen.add(sd.label)
        diagrams.append(sd)
    logger.debug('load_catalog: parsed %d diagrams', len(diagrams))
    return diagrams


def dump_catalog(diagrams: Iterable[SatakeDiagram]) -> str:
    return '\n\n'.join(sd.to_stanza() for sd in diagrams) + '\n'


def catalog_hash(text: str) -> str:
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def generate_classical(max_rank: int = 4) -> list[SatakeDiagram]:
    """
    The classical noncompact real forms up to ``max_rank``.

    Labels put the larger signature index first, ``su(p,q)`` with p >= q.
    """
    out: list[SatakeDiagram] = []

    def add(label: str, family: str, rank: int,
            black: Iterable[int] = (),
            arrows: Iterable[tuple[int, int]] = ()) -> None:
        out.append(SatakeDiagram(
            label=label, family=family, rank=rank,
            black=frozenset(black), arrows=frozenset(arrows),
        ))

    # AI
    for n in range(2, max_rank + 2):
        add(f'sl({n},R)', 'A', n - 1)
    # AII
    for n in range(2, max_rank // 2 + 2):
        if 2 * n - 1 <= max_rank:
            add(f'su*({2 * n})', 'A', 2 * n - 1, black=range(1, 2 * n, 2))
    # AIII
    for n in range(2, max_rank + 2):
        for q in range(1, n // 2 + 1):
            p = n - q
            if p == q:
                arrows = [(i, n - i) for i in range(1, p)]
                black: list[int] = []
            else:
                arrows = [(i, n - i) for i in range(1, q + 1)]
                black = list(range(q + 1, n - q))
            add(f'su({p},{q})', 'A', n - 1, black=black, arrows=arrows)
    # BI
    for n in range(2, max_rank + 1):
        for q in range(1, n + 1):
            add(f'so({2 * n + 1 - q},{q})', 'B', n, black=range(q + 1, n + 1))
    # CI
    for n in range(2, max_rank + 1):
        add(f'sp({n},R)', 'C', n)
    # CII
    for n in range(2, max_rank + 1):
        for q in range(1, n // 2 + 1):
            white = set(range(2, 2 * q + 1, 2))
            add(
                f'sp({n - q},{q})', 'C', n,
                black=[i for i in range(1, n + 1) if i not in white],
            )
    # DI and DIII, only D4 fits under the usual rank bound
    for n in range(4, max_rank + 1):
        for q in range(1, n + 1):
            p = 2 * n - q
            if q <= n - 2:
                add(f'so({p},{q})', 'D', n, black=range(q + 1, n + 1))
            elif q == n - 1:
                add(f'so({p},{q})', 'D', n, arrows=[(n - 1, n)])
            else:
                add(f'so({p},{q})', 'D', n)
        if n % 2 == 0:
            add(f'so*({2 * n})', 'D', n, black=range(1, n, 2))
    return out


def bundled_exceptional() -> list[SatakeDiagram]:
    resource = importlib.resources.files('leafatlas') / 'data'
    text = (resource / 'exceptional.catalog').read_text(encoding='utf-8')
    return load_catalog(text)


def shipped_catalog(max_rank: int = 4) -> list[SatakeDiagram]:
    return generate_classical(max_rank) + bundled_exceptional()


# Involution and real-form data


def w_b(sd: SatakeDiagram, rs: RootSystem | None = None) -> WeylElement:
    rs = rs or root_system_of(sd)
    return longest_element(rs, sd.black)


def _sigma(sd: SatakeDiagram, wb: WeylElement) -> tuple[int, ...] | None:
    images = []
    for j in range(1, sd.rank + 1):
        if j not in sd.black:
            images.append(sd.arrow_partner(j))
            continue
        column = tuple(-int(x) for x in wb.array[:, j - 1])
        if sorted(column) != [0] * (sd.rank - 1) + [1]:
            return None
        images.append(column.index(1) + 1)
    return tuple(images)


def _permutation_matrix(sigma: tuple[int, ...]) -> numpy.ndarray:
    rank = len(sigma)
    matrix = numpy.zeros((rank, rank), dtype=numpy.int64)
    for j, image in enumerate(sigma):
        matrix[image - 1, j] = 1
    return matrix


def _is_automorphism(rs: RootSystem, sigma: tuple[int, ...]) -> bool:
    c = rs.cartan
    return all(
        c[sigma[i] - 1, sigma[j] - 1] == c[i, j]
        for i in range(rs.rank) for j in range(rs.rank)
    )


def _structural_checks(
        sd: SatakeDiagram,
        rs: RootSystem,
        wb: WeylElement,
        sigma: tuple[int, ...] | None,
) -> tuple[dict[str, bool], numpy.ndarray | None]:
    checks = dict.fromkeys(_STRUCTURAL_CHECKS, False)
    if sigma is None:
        return checks, None

    checks['sigma_automorphism'] = _is_automorphism(rs, sigma)
    tau = wb.array @ _permutation_matrix(sigma)
    identity = numpy.eye(rs.rank, dtype=numpy.int64)
    checks['tau_involution'] = bool(((tau @ tau) == identity).all())
    checks['black_negated'] = all(
        bool((tau[:, j - 1] == -identity[:, j - 1]).all()) == (j in sd.black)
        for j in range(1, rs.rank + 1)
    )
    black_span = set(rs.subsystem(sd.black))
    checks['white_positive'] = all(
        rs.is_positive(int(x) for x in tau @ numpy.array(root))
        for root in rs.positive_roots if root not in black_span
    )
    return checks, tau


def tau_star(sd: SatakeDiagram, rs: RootSystem | None = None) -> Involution:
    """
    Build ``tau* = w_b . sigma``.

    sigma is the arrow pairing on white nodes and the opposition involution
    ``-w_b`` on black nodes.
    """
    rs = rs or root_system_of(sd)
    if sd.is_compact:
        raise CompactRealForm(sd.label)
    wb = w_b(sd, rs)
    sigma = _sigma(sd, wb)
    checks, tau = _structural_checks(sd, rs, wb, sigma)
    failed = [name for name, passed in checks.items() if not passed]
    if failed or sigma is None or tau is None:
        raise InconsistentSatakeData(sd.label, failed)
    return Involution(
        sigma=sigma,
        w_b=wb,
        matrix=tuple(tuple(int(x) for x in row) for row in tau.tolist()),
    )


def restricted_roots(
        sd: SatakeDiagram,
        rs: RootSystem | None = None,
        involution: Involution | None = None,
) -> tuple[tuple[RestrictedRoot, ...], int]:
    """
    Positive restricted roots with multiplicities, and the real rank.

    Roots are projected by ``(1 + tau*) / 2``; nonzero images are grouped by
    exact equality. Only images of positive roots are returned; the negative
    side is the mirror image.
    """
    rs = rs or root_system_of(sd)
    involution = involution or tau_star(sd, rs)
    tau = involution.array
    counts: collections.Counter[tuple[fractions.Fraction, ...]] = (
        collections.Counter()
    )
    for root in rs.positive_roots:
        image = numpy.array(root) + tau @ numpy.array(root)
        projected = tuple(fractions.Fraction(int(x), 2) for x in image)
        if any(projected):
            counts[projected] += 1

    roots = tuple(
        RestrictedRoot(
            coordinates=tuple(str(x) for x in vector),
            multiplicity=counts[vector],
        )
        for vector in sorted(counts)
    )
    real_rank = kernel_dim(tau - numpy.eye(rs.rank, dtype=numpy.int64))
    return roots, real_rank


def _vogan_orbits(
        rs: RootSystem,
        sigma: tuple[int, ...],
        w0: WeylElement,
) -> int:
    # delta(j) = index of -w0(alpha_sigma(j)); its orbits count rank k0
    delta = []
    for j in range(rs.rank):
        column = tuple(-int(x) for x in w0.array[:, sigma[j] - 1])
        delta.append(column.index(1))
    seen: set[int] = set()
    orbits = 0
    for start in range(rs.rank):
        if start in seen:
            continue
        orbits += 1
        node = start
        while node not in seen:
            seen.add(node)
            node = delta[node]
    return orbits


def dims(sd: SatakeDiagram, rs: RootSystem | None = None) -> RealFormData:
    rs = rs or root_system_of(sd)
    involution = tau_star(sd, rs)
    roots, real_rank = restricted_roots(sd, rs, involution)
    w0 = longest_element(rs, range(1, rs.rank + 1))

    dim_g = rs.rank + 2 * len(rs.positive_roots)
    dim_p0 = real_rank + sum(root.multiplicity for root in roots)
    data = RealFormData(
        label=sd.label,
        cartan_type=sd.cartan_type,
        rank=sd.rank,
        black=tuple(sorted(sd.black)),
        tau_star=involution.matrix,
        sigma=involution.sigma,
        w_b=involution.w_b,
        w0=w0,
        positive_roots=len(rs.positive_roots),
        restricted_roots=roots,
        real_rank=real_rank,
        rank_k0=_vogan_orbits(rs, involution.sigma, w0),
        dim_g=dim_g,
        dim_k0=dim_g - dim_p0,
        dim_p0=dim_p0,
    )
    logger.debug(
        'dims(%s): g=%d k0=%d p0=%d real_rank=%d', sd.label, data.dim_g,
        data.dim_k0, data.dim_p0, data.real_rank,
    )
    return data


def _parity_ok(
        sd: SatakeDiagram,
        rs: RootSystem,
        sigma: tuple[int, ...],
) -> bool:
    # <alpha, 2 rho_b^vee> must be even on sigma-fixed white nodes
    black_roots = rs.subsystem(sd.black)
    for j in sd.white:
        if sigma[j - 1] != j:
            continue
        alpha = rs.simple_roots[j - 1]
        total = sum(rs.coroot_pairing(alpha, beta) for beta in black_roots)
        if total.denominator != 1 or total.numerator % 2:
            return False
    return True


def validate(
        sd: SatakeDiagram,
        rank_cap: int = DEFAULT_RANK_CAP,
) -> ValidationReport:
    """Run every diagram-level check; failures are returned, never raised."""
    try:
        rs = root_system_of(sd, rank_cap)
    except UnsupportedCartanType as e:
        return ValidationReport(
            label=sd.label, cartan_type=sd.cartan_type, checks={},
            error=str(e),
        )

    wb = w_b(sd, rs)
    w0 = longest_element(rs, range(1, rs.rank + 1))
    sigma = _sigma(sd, wb)
    checks, tau = _structural_checks(sd, rs, wb, sigma)
    checks['white_parity'] = sigma is not None and _parity_ok(sd, rs, sigma)

    if tau is not None:
        w0m, wbm = w0.array, wb.array
        checks['tau_commutes_w0'] = bool((tau @ w0m == w0m @ tau).all())
        checks['tau_commutes_wb'] = bool((tau @ wbm == wbm @ tau).all())
    else:
        checks['tau_commutes_w0'] = checks['tau_commutes_wb'] = False
    checks['w0_commutes_wb'] = wb * w0 == w0 * wb
    checks['length_identity'] = (
        length(rs, wb * w0) == length(rs, w0) - length(rs, wb)
    )
    checks['noncompact'] = not sd.is_compact

    structural = all(checks[name] for name in _STRUCTURAL_CHECKS)
    if structural and checks['noncompact']:
        data = dims(sd, rs)
        checks['dims_consistent'] = (
            data.dim_g == rs.rank + 2 * len(rs.positive_roots)
            and data.dim_p0 >= data.real_rank
            and data.dim_k0 >= len(rs.subsystem(sd.black))
            and data.dim_k0 > 0
            and data.dim_p0 > 0
        )
    else:
        checks['dims_consistent'] = False

    report = ValidationReport(
        label=sd.label, cartan_type=sd.cartan_type, checks=checks,
    )
    if not report.ok:
        logger.info(
            'validate(%s): failed %s', sd.label, ', '.join(report.failed),
        )
    return report


def real_form(
        sd: SatakeDiagram,
        rank_cap: int = DEFAULT_RANK_CAP,
) -> tuple[RootSystem, RealFormData]:
    """Validated entry point: root system and real-form data, or raise."""
    if sd.is_compact:
        raise CompactRealForm(sd.label)
    report = validate(sd, rank_cap)
    if not report.ok:
        raise InvalidDiagram(sd.label, report)
    rs = root_system_of(sd, rank_cap)
    return rs, dims(sd, rs)
