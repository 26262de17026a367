from typing import Any


class LeafAtlasError(RuntimeError):
    pass


class UnsupportedCartanType(LeafAtlasError):
    def __init__(self, family: str, rank: int, reason: str = '') -> None:
        detail = f': {reason}' if reason else ''
        super().__init__(f'unsupported Cartan type {family}{rank}{detail}')
        self.family = family
        self.rank = rank


class WeylCapExceeded(LeafAtlasError):
    def __init__(self, cap: int, partial_count: int) -> None:
        super().__init__(
            f'Weyl group exceeds cap {cap} '
            f'(enumerated {partial_count} elements before stopping)',
        )
        self.cap = cap
        self.partial_count = partial_count


class CatalogError(LeafAtlasError):
    def __init__(self, message: str, line: int | None = None) -> None:
        where = f'line {line}: ' if line is not None else ''
        super().__init__(f'{where}{message}')
        self.line = line


class DuplicateLabel(CatalogError):
    def __init__(self, label: str, line: int | None = None) -> None:
        super().__init__(f'duplicate label {label!r}', line)
        self.label = label


class InconsistentSatakeData(LeafAtlasError):
    def __init__(self, label: str, failed: list[str]) -> None:
        super().__init__(
            f'inconsistent Satake data for {label}: {", ".join(failed)}',
        )
        self.label = label
        self.failed = failed


class CompactRealForm(LeafAtlasError):
    def __init__(self, label: str) -> None:
        super().__init__(
            f'{label} is a compact real form; U/K0 degenerates to a point',
        )
        self.label = label


class InvalidDiagram(LeafAtlasError):
    def __init__(self, label: str, report: Any) -> None:
        super().__init__(f'{label} failed validation')
        self.label = label
        self.report = report


class NotTwistedInvolution(LeafAtlasError):
    def __init__(self, word: tuple[int, ...]) -> None:
        super().__init__(f'not a twisted involution: {word}')
        self.word = word


class NonUnitary(LeafAtlasError):
    def __init__(self, residual: float) -> None:
        super().__init__(f'matrix is not in SU(n): residual={residual:.3e}')
        self.residual = residual


class ChartSingularity(LeafAtlasError):
    def __init__(self, denominator: float) -> None:
        super().__init__(f'chart singularity: |denominator|={denominator:.3e}')
        self.denominator = denominator


class IllConditioned(LeafAtlasError):
    def __init__(self, condition: float) -> None:
        super().__init__(f'ill-conditioned matrix: cond={condition:.3e}')
        self.condition = condition


class NotHermitian(LeafAtlasError):
    def __init__(self, label: str) -> None:
        super().__init__(f'{label} is not Hermitian symmetric')
        self.label = label


class NoRealization(LeafAtlasError):
    def __init__(self, label: str) -> None:
        super().__init__(f'no matrix realization shipped for {label}')
        self.label = label


class NoRepresentativeFound(LeafAtlasError):
    def __init__(self, word: tuple[int, ...], tried: int) -> None:
        super().__init__(
            f'no representative found for psi={word} after {tried} '
            'candidates (inconclusive)',
        )
        self.word = word
        self.tried = tried


class UnknownForm(LeafAtlasError):
    def __init__(self, label: str, available: list[str]) -> None:
        super().__init__(
            f'unknown form {label!r}; available: {", ".join(available)}',
        )
        self.label = label
        self.available = available


class OutputError(LeafAtlasError):
    def __init__(self, path: str, reason: str) -> None:
        super().__init__(f'cannot write {path}: {reason}')
        self.path = path
