"""Workbench for a reversible CCS with keyed rollback.

Terms are passed as strings in the tool's grammar, e.g.
``eps: a.(b.0 + c.0)``; configurations use ``<history> |- <system>``.
Observable traces are comma-joined actions like ``a,'b``.
"""

from ._revy import (
    backward_steps,
    canonical,
    dot,
    earliest_state,
    fmt,
    fmt_configuration,
    fmt_process,
    forward_steps,
    gen_liveness_test,
    gen_safety_test,
    limited_eq,
    liveness_leq_refusal,
    lts,
    may_pass,
    refusal_member,
    roll_set,
    safety_leq,
    shd_pass,
    structurally_equal,
    trace_set,
    verify,
    well_formed,
)

__all__ = [
    "backward_steps",
    "canonical",
    "dot",
    "earliest_state",
    "fmt",
    "fmt_configuration",
    "fmt_process",
    "forward_steps",
    "gen_liveness_test",
    "gen_safety_test",
    "limited_eq",
    "liveness_leq_refusal",
    "lts",
    "may_pass",
    "refusal_member",
    "roll_set",
    "safety_leq",
    "shd_pass",
    "structurally_equal",
    "trace_set",
    "verify",
    "well_formed",
]
