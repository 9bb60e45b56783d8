"""Exact verification of the non-Archimedean Basmajian identity.

For a representation of a surface group with boundary into PGL(d, k), k a
non-Archimedean local field (Q_p or F_p((T))), the sum of the translation
lengths of the boundary elements equals a finite signed sum of cross-ratio
valuations indexed by double cosets of the boundary subgroups.  Everything
here is computed exactly: rationals, rational functions over F_p, and
lazily refined p-adic (or T-adic) limits.
"""

from .berkovich import (AxisInterval, Ball, TypeI, axis_distance_vs_crossratio, dist,
                        gauss_point, geometric_terms, geometric_verify, join, median,
                        mobius_act, normalize_axis, project_to_axis)
from .config import Config, load_config, parse_config, preset
from .errors import *  # noqa: F401,F403
from .identity import (IdentityReport, Representation, Status, TermRecord, algebraic_terms,
                       lhs, phi, term, verify, veronese_lift)
from .proj_linear import (CartanValuations, Classification, DualPoint, EigenData, ProjMatrix,
                          ProjPoint, anosov_gap_report, cartan_valuations, classify_pgl2,
                          cross_ratio, cross_ratio_valuation, eigen_data, pairing, period,
                          translation_length, veronese)
from .surface_group import (BoundarySystem, DoubleCosetRep, DoubleCosets, SurfaceType,
                            boundary_words, enumerate_double_cosets, format_word, invert,
                            multiply, parse_word, reduce_word)
from .valued_field import (INFINITY, FieldModel, Kind, argmin_valuation, arith, hensel_root,
                           newton_polygon, newton_segments, valuation)

__version__ = "0.1.0"
