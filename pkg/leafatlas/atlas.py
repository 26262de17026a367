import logging
from collections.abc import Iterable
from typing import Self

import numpy
import pydantic

from . import __version__
from . import schemas
from .errors import NotTwistedInvolution
from .rootsys import DEFAULT_RANK_CAP
from .rootsys import DEFAULT_WEYL_CAP
from .rootsys import enumerate_weyl
from .rootsys import format_word
from .rootsys import kernel_dim
from .rootsys import length
from .rootsys import RootSystem
from .rootsys import WeylElement
from .satake import RealFormData
from .satake import real_form
from .satake import SatakeDiagram


logger = logging.getLogger(__name__)

# results each reported number instantiates, cited by name in the notes
CITE_CONTRACTIBLE = 'leaf contractibility proposition'
CITE_CODIMENSION = 'orbit codimension proposition'
CITE_LEAF_DIMENSION = 'leaf dimension theorem'
CITE_LARGEST = 'largest leaf corollary'
CITE_OPEN = 'open leaf corollary'

NOTE_CONTRACTIBLE = (
    'every symplectic leaf of pi_0 is contractible, per the '
    f'{CITE_CONTRACTIBLE}'
)
NOTE_OPEN = (
    'open symplectic leaves exist iff g0 has a compact Cartan subalgebra, '
    f'and are diffeomorphic to G0/K0, per the {CITE_OPEN}'
)
NOTE_LARGEST = (
    "largest symplectic leaves are diffeomorphic to A0'N0, "
    f"with A0' a subgroup of A0, per the {CITE_LARGEST}"
)
NOTE_MULTIPLE_ORBITS = (
    'classes are keyed by psi; one class may contain several G0-orbits, '
    'and no orbit count per class is claimed'
)
NOTE_OPEN_COUNT = (
    'the number of open leaves equals the number of open G0-orbits on the '
    'flag variety (not computed)'
)
NOTE_CODIMENSION = (
    f'codim_Y = l(psi w_b w0) per the {CITE_CODIMENSION}'
)
NOTE_FORMULAS = (
    'leaf_dim = dim O - dim K0 + t with dim O = 2|roots+| - codim_Y; '
    'leaf_codim = a + codim_Y; family_dim = a (dimension of the leaf-family '
    f'torus); all per the {CITE_LEAF_DIMENSION}'
)
NOTE_UNREALIZABLE = (
    'classes with parity_ok false have odd leaf dimension and are realized '
    'by no G0-orbit'
)


class OrbitClass(pydantic.BaseModel):
    """
    Leaf invariants attached to one twisted involution.

    Fields:
        psi: the twisted involution
        codim_Y: codimension of the G0-orbit in the flag variety
        t: dimension of the (-1)-eigenspace of psi tau*
        a: dimension of the (+1)-eigenspace of psi tau*
        leaf_dim: dimension of each symplectic leaf in the class
        leaf_codim: codimension of those leaves in U/K0
        family_dim: dimension of the torus parametrizing the leaf family
        is_open: the leaves are open in U/K0
        is_closed_class: psi is the identity (the closed orbit)
        parity_ok: leaf_dim is even
    """

    psi: WeylElement
    codim_Y: int  # noqa: N815
    t: int
    a: int
    leaf_dim: int
    leaf_codim: int
    family_dim: int
    is_open: bool
    is_closed_class: bool
    parity_ok: bool

    model_config = pydantic.ConfigDict(frozen=True)

    @pydantic.model_validator(mode='after')
    def check_invariants(self) -> Self:
        if self.leaf_codim != self.a + self.codim_Y:
            raise ValueError(
                f'{self.psi}: leaf_codim {self.leaf_codim} != a + codim_Y '
                f'= {self.a + self.codim_Y}',
            )
        if self.is_open and self.family_dim != 0:
            raise ValueError(
                f'{self.psi}: open class with a nontrivial family',
            )
        return self

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.codim_Y, self.psi.word)

    def to_row(self) -> schemas.ClassRow:
        return schemas.ClassRow(
            psi=str(self.psi),
            psi_word=list(self.psi.word),
            codim_Y=self.codim_Y,
            a=self.a,
            t=self.t,
            leaf_dim=self.leaf_dim,
            leaf_codim=self.leaf_codim,
            family_dim=self.family_dim,
            is_open=self.is_open,
            is_closed_class=self.is_closed_class,
            parity_ok=self.parity_ok,
        )


def _is_involution(m: numpy.ndarray) -> bool:
    return bool((m @ m == numpy.eye(m.shape[0], dtype=numpy.int64)).all())


def twisted_involutions(
        rf: RealFormData,
        rs: RootSystem,
        cap: int = DEFAULT_WEYL_CAP,
) -> list[WeylElement]:
    """All w in W with ``(w tau*)^2 = 1``, in enumeration order."""
    tau = rf.tau
    found = [
        w for w in enumerate_weyl(rs, cap) if _is_involution(w.array @ tau)
    ]
    logger.debug(
        'twisted_involutions(%s): found=%d', rf.label, len(found),
    )
    return found


def orbit_class(
        rf: RealFormData,
        rs: RootSystem,
        psi: WeylElement,
) -> OrbitClass:
    """
    Leaf invariants of the class of ``psi``, with ``m = psi tau*``:

        a          = dim ker(m - 1)       vector part, t + a = rank
        t          = dim ker(m + 1)       toral part
        codim_Y    = l(psi w_b w0)        codimension of the G0-orbit
        leaf_dim   = dim O - dim K0 + t   with dim O = 2|roots+| - codim_Y
        leaf_codim = dim X - leaf_dim     which equals a + codim_Y

    Raises:
        NotTwistedInvolution: ``m`` is not an involution
    """
    m = psi.array @ rf.tau
    if not _is_involution(m):
        raise NotTwistedInvolution(psi.word)

    identity = numpy.eye(rs.rank, dtype=numpy.int64)
    a = kernel_dim(m - identity)
    t = kernel_dim(m + identity)
    if a + t != rs.rank or a - t != int(numpy.trace(m)):
        raise NotTwistedInvolution(psi.word)

    codim = length(rs, psi * rf.w_b * rf.w0)
    dim_orbit = 2 * rf.positive_roots - codim
    leaf_dim = dim_orbit - rf.dim_k0 + t
    return OrbitClass(
        psi=psi,
        codim_Y=codim,
        t=t,
        a=a,
        leaf_dim=leaf_dim,
        leaf_codim=rf.dim_X - leaf_dim,
        family_dim=a,
        is_open=codim == 0 and a == 0,
        is_closed_class=psi.is_identity,
        parity_ok=leaf_dim % 2 == 0,
    )


def open_leaf_test(rf: RealFormData, rs: RootSystem) -> bool:
    """True iff ``w0 sigma`` fixes no nonzero vector (open leaves exist)."""
    sigma = numpy.zeros((rs.rank, rs.rank), dtype=numpy.int64)
    for j, image in enumerate(rf.sigma):
        sigma[image - 1, j] = 1
    m = rf.w0.array @ sigma
    return kernel_dim(m - numpy.eye(rs.rank, dtype=numpy.int64)) == 0


def compact_cartan_oracle(rf: RealFormData) -> bool:
    """Independent check: rank k0 == rank g0 iff a compact Cartan exists."""
    return rf.has_compact_cartan


def largest_leaf_class(classes: Iterable[OrbitClass]) -> OrbitClass:
    ordered = sorted(classes, key=lambda c: c.sort_key)
    for cls in ordered:
        if cls.is_open:
            return cls
    return min(ordered, key=lambda c: c.leaf_codim)


def form_summary(sd: SatakeDiagram, rf: RealFormData) -> schemas.FormSummary:
    return schemas.FormSummary(
        label=rf.label,
        cartan_type=rf.cartan_type,
        rank=rf.rank,
        black=list(rf.black),
        arrows=sorted(sd.arrows),
        tau_star=[list(row) for row in rf.tau_star],
        sigma=list(rf.sigma),
        w0=str(rf.w0),
        w0_word=list(rf.w0.word),
        wb=str(rf.w_b),
        wb_word=list(rf.w_b.word),
        restricted_roots=[
            schemas.RestrictedRootRow(
                coordinates=list(root.coordinates),
                multiplicity=root.multiplicity,
            )
            for root in rf.restricted_roots
        ],
        real_rank=rf.real_rank,
        rank_k0=rf.rank_k0,
        dim_g=rf.dim_g,
        dim_k0=rf.dim_k0,
        dim_p0=rf.dim_p0,
        dim_X=rf.dim_X,
    )


def classify(
        rf: RealFormData,
        rs: RootSystem,
        weyl_cap: int = DEFAULT_WEYL_CAP,
) -> list[OrbitClass]:
    classes = [
        orbit_class(rf, rs, psi)
        for psi in twisted_involutions(rf, rs, weyl_cap)
    ]
    return sorted(classes, key=lambda c: c.sort_key)


def atlas(
        sd: SatakeDiagram,
        *,
        rank_cap: int = DEFAULT_RANK_CAP,
        weyl_cap: int = DEFAULT_WEYL_CAP,
        seed: int = 0,
        catalog_hash: str = '',
) -> schemas.AtlasReport:
    rs, rf = real_form(sd, rank_cap)
    classes = classify(rf, rs, weyl_cap)

    has_open = open_leaf_test(rf, rs)
    if has_open != any(c.is_open for c in classes):
        logger.error(
            'atlas(%s): open-leaf test disagrees with the class list',
            sd.label,
        )
    if has_open != compact_cartan_oracle(rf):
        logger.error(
            'atlas(%s): open-leaf test disagrees with rank k0 = %d',
            sd.label, rf.rank_k0,
        )

    largest = largest_leaf_class(classes)
    unrealizable = [str(c.psi) for c in classes if not c.parity_ok]
    for word in unrealizable:
        logger.warning(
            'atlas(%s): psi=%s has odd leaf dimension', sd.label, word,
        )

    notes = [
        NOTE_CONTRACTIBLE, NOTE_CODIMENSION, NOTE_FORMULAS, NOTE_LARGEST,
        NOTE_MULTIPLE_ORBITS,
    ]
    if has_open:
        notes += [NOTE_OPEN, NOTE_OPEN_COUNT]
    if unrealizable:
        notes.append(NOTE_UNREALIZABLE)

    logger.info(
        'atlas(%s): classes=%d open=%s largest=%s', sd.label, len(classes),
        has_open, format_word(largest.psi.word),
    )
    return schemas.AtlasReport(
        tool_version=__version__,
        seed=seed,
        catalog_hash=catalog_hash,
        form=form_summary(sd, rf),
        classes=[c.to_row() for c in classes],
        flags=schemas.AtlasFlags(
            has_open_leaves=has_open,
            compact_cartan=compact_cartan_oracle(rf),
            largest_leaf_class=str(largest.psi),
            unrealizable=unrealizable,
        ),
        notes=notes,
    )
