from .action import g_act
from .action import iwasawa
from .action import leaf_tangency_check
from .action import psi_of
from .action import representative_for
from .action import stabilizer_dim
from .action import Tangency
from .bivector import Bivector
from .bivector import lambda_bivector
from .bivector import pi_0_at
from .bivector import pi_U_at
from .bivector import PoissonSample
from .bivector import sample_pi_0
from .checks import annihilator_check
from .checks import chart_su2
from .checks import equator_chart
from .checks import hermitian_fit
from .checks import HermitianFit
from .checks import hemisphere
from .checks import invariance_residuals
from .checks import iwasawa_borel_check
from .checks import jacobi_check
from .checks import jacobiator
from .checks import sample_unitary
from .checks import slice_su2
from .checks import spawn_rngs
from .realization import frames
from .realization import killing
from .realization import MatrixRealForm
from .realization import parse_realization
from .realization import root_vectors
from .realization import torus_involution


__all__ = [
    'annihilator_check',
    'Bivector',
    'chart_su2',
    'equator_chart',
    'frames',
    'g_act',
    'hemisphere',
    'hermitian_fit',
    'HermitianFit',
    'invariance_residuals',
    'iwasawa',
    'iwasawa_borel_check',
    'jacobi_check',
    'jacobiator',
    'killing',
    'lambda_bivector',
    'leaf_tangency_check',
    'MatrixRealForm',
    'parse_realization',
    'pi_0_at',
    'pi_U_at',
    'PoissonSample',
    'psi_of',
    'representative_for',
    'root_vectors',
    'sample_pi_0',
    'sample_unitary',
    'slice_su2',
    'spawn_rngs',
    'stabilizer_dim',
    'Tangency',
    'torus_involution',
]
