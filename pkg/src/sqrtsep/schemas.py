"""JSON Schemas for every machine-readable output.

All numbers are emitted as decimal strings so reports are byte-stable.
"""

_INT = {"type": "string", "pattern": r"^-?[0-9]+$"}
_FLOAT = {"type": "string", "pattern": r"^(-?inf|nan|-?[0-9]+(\.[0-9]+)?(e[-+]?[0-9]+)?)$"}
_POLICY = {"enum": ["self", "primes", "coprime"]}
_MULTISET = {"type": "string", "pattern": r"^[0-9]+(,[0-9]+)*$"}


def _object(props: dict, extra: bool = False) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": sorted(props),
        "additionalProperties": extra,
    }


BOUND_REPORT = _object({
    "k": _INT,
    "n": _INT,
    "m": _INT,
    "conj_magnitude_log2": _FLOAT,
    "proof_bound_log2": _FLOAT,
    "stated_bound_log2": _FLOAT,
    "generator_policy": _POLICY,
    "saturated": {"type": "boolean"},
})

BOUND_COMMAND = dict(BOUND_REPORT, properties=dict(
    BOUND_REPORT["properties"],
    precision_cap={"type": "string", "pattern": r"^([0-9]+|unbounded)$"},
), required=sorted([*BOUND_REPORT["required"], "precision_cap"]))

COMPARE_CERTIFICATE = _object({
    "ordering": {"enum": ["Less", "Equal", "Greater"]},
    "method": {"enum": ["syntactic-equality", "interval-separation"]},
    "precisions_tried": {"type": "array", "items": _INT},
    "final_interval_log2_width": {"oneOf": [{"type": "null"}, _FLOAT]},
    "bound": {"oneOf": [{"type": "null"}, BOUND_REPORT]},
})

MQ_ELEMENT = _object({
    "generators": {"type": "array", "items": _INT},
    "coeffs": {
        "type": "array",
        "items": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2},
    },
})

TABLE_ROW = _object({
    "n": _INT,
    "k": _INT,
    "rmin_log2_lo": _FLOAT,
    "rmin_log2_hi": _FLOAT,
    "witness_a": _MULTISET,
    "witness_b": _MULTISET,
    "proof_bound_log2": _FLOAT,
    "stated_bound_log2": _FLOAT,
    "corollary_bound_log2": _FLOAT,
})

TABLE = {"type": "array", "items": TABLE_ROW}

VALIDATION_ROW = _object({
    "witness_a": _MULTISET,
    "witness_b": _MULTISET,
    "observed_log2": _FLOAT,
    "proof_bound_log2": _FLOAT,
    "stated_bound_log2": _FLOAT,
    "m_used": _INT,
    "margin": _FLOAT,
})

VALIDATION = _object({
    "n": _INT,
    "k": _INT,
    "policy": _POLICY,
    "rows": {"type": "array", "items": VALIDATION_ROW},
    "violations": {"type": "array", "items": VALIDATION_ROW},
    "stated_violations": {"type": "array", "items": VALIDATION_ROW},
})

NORM = _object({
    "expression": {"type": "string"},
    "norm": _INT,
    "m": _INT,
    "generators": {"type": "array", "items": _INT},
    "policy": _POLICY,
    "nonconstant_coefficients_zero": {"const": True},
})

GENERATORS = _object({
    "policy": _POLICY,
    "m": _INT,
    "generators": {"type": "array", "items": _INT},
    "decompositions": {
        "type": "array",
        "items": _object({
            "value": _INT,
            "cofactor": _INT,
            "radicand": _INT,
            "subset": {"type": "array", "items": _INT},
        }),
    },
})
