"""Generalized analytic and harmonic Koebe functions: construction, series and verification."""

from .analysis import (BoundReport, CollisionWitness, collision_witness, distortion_bounds,
                       equality_report, growth_bounds, injectivity_probe, schwarzian,
                       schwarzian_norm)
from .families import (MartyState, affine_change, koebe_transform, marty_generate,
                       marty_residuals, ode_residual, variational_expansion_residual)
from .maps import (AnalyticMap, hille_univalent, lens_identity_residual, make_generalized_koebe,
                   make_halfplane_phi, make_k0, make_koebe, make_lens)
from .mapspec import MapSpec, build, format_map_spec, parse_map_spec
from .series import Series
from .shear import (GHKParams, HarmonicMap, dilatation, eval_harmonic, halfplane,
                    harmonic_koebe, jacobian, make_generalized_harmonic_koebe, make_KaR,
                    make_KaR_closed_form, rotate)

__version__ = "0.1.0"
