"""Real terminal 3-fold singularities: classification, weighted blow-ups,
g-extractions and the topology of real points."""

from .blowup import (BlowupWeights, blowup_curve, chart_singularity_report, discrepancy_jacobian,
                     discrepancy_weight_formula, exceptional_divisor_report, weighted_blowup)
from .germ import CyclicAction, Germ, classify_terminal, parse_germ
from .gextract import g_extraction_decide, verify_is_gextraction
from .poly import Poly, parse_poly
from .signs import sign_behavior
from .topology import (SummandLedger, SurfaceType, exceptional_real_surface, ledger_apply, ledger_undo,
                       replay_mmp, resolve_real)

__all__ = [
    "BlowupWeights", "CyclicAction", "Germ", "Poly", "SummandLedger", "SurfaceType",
    "blowup_curve", "chart_singularity_report", "classify_terminal", "discrepancy_jacobian",
    "discrepancy_weight_formula", "exceptional_divisor_report", "exceptional_real_surface",
    "g_extraction_decide", "ledger_apply", "ledger_undo", "parse_germ", "parse_poly", "replay_mmp",
    "resolve_real", "sign_behavior", "verify_is_gextraction", "weighted_blowup",
]
