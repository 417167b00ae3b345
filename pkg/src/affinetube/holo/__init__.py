"""Holomorphic side: tangent fields of the type C tube and its Chern-Moser expansion."""

from .chern_moser import (
    PRINTED_CM,
    BigradedJet,
    CMError,
    CMFormulas,
    closed_form_residual,
    cm_expand,
    cm_trace,
    compare_pieces,
    d_n,
    printed_pieces,
    trace_conditions,
)
from .fields import (
    HoloVectorField,
    RealDefiningPoly,
    algebra_closure,
    holo_bracket,
    holo_tangent,
    isotropy_dim_at,
    killing_form,
    killing_signature,
    real_basis,
    real_part_action,
    tangency_multiplier,
)
from .type_c import (
    base_point,
    expected_isotropy_dim,
    gamma_rho,
    generator_count,
    generators,
    last_generator,
    sl2_triple,
    transitive_count,
)

__all__ = [
    "PRINTED_CM",
    "BigradedJet",
    "CMError",
    "CMFormulas",
    "HoloVectorField",
    "RealDefiningPoly",
    "algebra_closure",
    "base_point",
    "closed_form_residual",
    "cm_expand",
    "cm_trace",
    "compare_pieces",
    "d_n",
    "expected_isotropy_dim",
    "gamma_rho",
    "generator_count",
    "generators",
    "holo_bracket",
    "holo_tangent",
    "isotropy_dim_at",
    "killing_form",
    "killing_signature",
    "last_generator",
    "printed_pieces",
    "real_basis",
    "real_part_action",
    "sl2_triple",
    "tangency_multiplier",
    "trace_conditions",
    "transitive_count",
]
