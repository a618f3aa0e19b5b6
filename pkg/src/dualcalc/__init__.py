"""dualcalc: exact computation of both sides of enumerative string-duality
identities, with the connecting checks.

Subsystems: Gaussian-rational scalars and truncated series (``scalars``,
``series``, ``qfunc``), partition and character data (``partitions``,
``schur``), quantum-dimension W values (``chern_simons``), the partition-
indexed series ring with cut-and-join operators (``pseries``), Hurwitz and
ELSV (``hurwitz``), the framed triple-Hodge series (``hodge``), the local-P2
vertex with GV inversion (``vertex``), psi-intersections and Virasoro
(``intersections``), mirror hypergeometrics (``mirror``), and the acceptance
registry (``verify``) behind the ``dualcalc`` CLI (``cli``).
"""

from .scalars import GaussianRational, bernoulli
from .series import LambdaSeries, TauLaurent, sin_expand
from .qfunc import QFunction, ULaurent
from .partitions import (basic_stats, character, enumerate_partitions,
                         hook_dim, parse_partition)
from .schur import skew_schur_principal
from .chern_simons import w_one, w_pair
from .pseries import PSeries
from .hurwitz import (burnside_phi, double_hurwitz, elsv_I, hurwitz_number,
                      psi_from_asymptotics)
from .hodge import (FramedSeries, build_series, convolution_check,
                    elsv_limit_check, hodge_extract, initial_value_report,
                    lambda_g_check, pde_residual)
from .vertex import extract_gw, gv_invert, local_p2_z
from .intersections import dvv, virasoro_residual
from .mirror import (candelas, gr_loc_sum, hg_projective, hori_vafa_series,
                     multiple_cover_invert, quintic_hg, toric_b_series)

__version__ = "0.1.0"
