"""Exact arithmetic on eventually periodic integer sets, with additive
complement and minimal-complement verdicts."""
from ._kernels import BACKEND
from .complements import (GapStats, MinimalityReport, PreconditionError, Status, Verdict,
                          covered_on_window, dependents, gap_stats, greedy_min_complement,
                          is_complement, minimality_report, prune_redundant)
from .constructions import (has_3ap, inherit_pipeline, lift_below, prop11_generate,
                            self_mac_check, ternary_fix, thm_converse_extract,
                            thm_finite_build_w, thm_inherit_complement)
from .core import (EPForm, EPFormError, PeriodicSet, ResourceError, difference, from_ep_form,
                   intersect, negate, restrict_to_residues, sumset, translate, union)
from .dsl import DSLSyntaxError, evaluate, parse, to_text
from .modular import (ResidueSet, check_S_necessary, check_S_sufficient, mod_project,
                      mod_sumset, search_S_necessary, search_S_sufficient)
from .oracle import Window, WindowSet, materialize, window_sumset

__all__ = [
    "BACKEND", "DSLSyntaxError", "EPForm", "EPFormError", "GapStats", "MinimalityReport",
    "PeriodicSet", "PreconditionError", "ResidueSet", "ResourceError", "Status", "Verdict",
    "Window", "WindowSet", "check_S_necessary", "check_S_sufficient", "covered_on_window",
    "dependents", "difference", "evaluate", "from_ep_form", "gap_stats",
    "greedy_min_complement", "has_3ap", "inherit_pipeline", "intersect", "is_complement",
    "lift_below", "materialize", "minimality_report", "mod_project", "mod_sumset", "negate",
    "parse", "prop11_generate", "prune_redundant", "restrict_to_residues",
    "search_S_necessary", "search_S_sufficient", "self_mac_check", "sumset", "ternary_fix",
    "thm_converse_extract", "thm_finite_build_w", "thm_inherit_complement", "to_text",
    "translate", "union", "window_sumset",
]
