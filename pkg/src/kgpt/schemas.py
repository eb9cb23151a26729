"""JSON Schemas (draft 2020-12) of every CLI subcommand's JSON output."""

SCHEMA_VERSION = 1

_number = {"type": "number"}
_nullable_number = {"type": ["number", "null"]}

_params = {
    "type": "object",
    "required": ["mu", "alpha", "D", "q", "hbar", "c"],
    "properties": {k: _number for k in ("mu", "alpha", "D", "q", "hbar", "c")},
    "additionalProperties": False,
}

_pt_params = {
    "type": "object",
    "required": ["D", "alpha", "epsilon", "mu", "hbar", "c", "q_c"],
    "properties": {
        **{k: _number for k in ("D", "alpha", "epsilon", "mu", "hbar", "c")},
        "q_c": {"type": "array", "items": _number, "minItems": 2, "maxItems": 2},
    },
    "additionalProperties": False,
}

_level = {
    "type": "object",
    "required": ["n", "E", "k", "xi"],
    "properties": {"n": {"type": "integer", "minimum": 0}, "E": _number, "k": _number, "xi": _number},
    "additionalProperties": False,
}


def _envelope(command, properties, required):
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["schema_version", "command", *required],
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "command": {"const": command},
            **properties,
        },
        "additionalProperties": False,
    }


SPECTRUM = _envelope(
    "spectrum",
    {"params": _params, "levels": {"type": "array", "items": _level},
     "count": {"type": "integer", "minimum": 0}},
    ["params", "levels", "count"],
)

SPECIAL = _envelope(
    "special",
    {
        "case": {"enum": ["reflectionless", "q-symmetric", "symmetric", "pt"]},
        "params": {"oneOf": [_params, _pt_params]},
        "levels": {"type": "array", "items": _level},
        "count": {"type": "integer", "minimum": 0},
    },
    ["case", "params", "levels", "count"],
)

WAVEFUNCTION = _envelope(
    "wavefunction",
    {
        "params": {"oneOf": [_params, _pt_params]},
        "level": _level,
        "norm_constant": _number,
        "samples": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["r", "psi_real"],
                "properties": {"r": _number, "psi_real": _number, "psi_imag": _number},
                "additionalProperties": False,
            },
        },
    },
    ["params", "level", "norm_constant", "samples"],
)

POTENTIAL = _envelope(
    "potential",
    {
        "D": _number,
        "alpha": _number,
        "curves": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["q", "minimum", "samples"],
                "properties": {
                    "q": _number,
                    "minimum": {
                        "type": "object",
                        "required": ["r", "v"],
                        "properties": {"r": _nullable_number, "v": _nullable_number},
                    },
                    "samples": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["r", "v"],
                            "properties": {"r": _number, "v": _number},
                            "additionalProperties": False,
                        },
                    },
                },
                "additionalProperties": False,
            },
        },
    },
    ["D", "alpha", "curves"],
)

_grid_run = {
    "type": "object",
    "required": ["half_width", "points", "spacing", "e_numeric"],
    "properties": {"half_width": _number, "points": {"type": "integer"}, "spacing": _number,
                   "e_numeric": _nullable_number},
    "additionalProperties": False,
}

VERIFY = _envelope(
    "verify",
    {
        "params": _params,
        "tolerance": _number,
        "reports": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "e_analytic", "e_numeric", "delta", "extrapolated", "monotone", "grids", "agree"],
                "properties": {
                    "n": {"type": "integer", "minimum": 0},
                    "e_analytic": _nullable_number,
                    "e_numeric": _nullable_number,
                    "delta": _nullable_number,
                    "extrapolated": {"type": "boolean"},
                    "monotone": {"type": "boolean"},
                    "agree": {"type": "boolean"},
                    "grids": {"type": "array", "items": _grid_run},
                },
                "additionalProperties": False,
            },
        },
    },
    ["params", "tolerance", "reports"],
)

RESIDUAL = _envelope(
    "residual",
    {
        "params": {"oneOf": [_params, _pt_params]},
        "level": _level,
        "half_width": _number,
        "dps": {"type": ["integer", "null"]},
        "runs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["h", "residual"],
                "properties": {"h": _number, "residual": _number},
                "additionalProperties": False,
            },
        },
        "ratios": {"type": "array", "items": _number},
    },
    ["params", "level", "half_width", "dps", "runs", "ratios"],
)

BY_COMMAND = {
    "spectrum": SPECTRUM,
    "special": SPECIAL,
    "wavefunction": WAVEFUNCTION,
    "potential": POTENTIAL,
    "verify": VERIFY,
    "residual": RESIDUAL,
}
