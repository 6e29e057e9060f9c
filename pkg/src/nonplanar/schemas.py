"""JSON schemas of the reports emitted by the command-line interface."""

_num = {"type": "number"}
_vec3 = {"type": "array", "items": _num, "minItems": 3, "maxItems": 3}
_mat3 = {"type": "array", "items": _vec3, "minItems": 3, "maxItems": 3}
_pair = {"type": "array", "items": {"type": "integer", "minimum": 1, "maximum": 3}, "minItems": 2, "maxItems": 2}
_provenance = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["pair", "formula"],
        "properties": {"pair": _pair, "formula": {"type": "string"}},
    },
}

CONNECTION = {
    "type": "object",
    "required": ["rotation", "shear", "normal", "residual"],
    "properties": {"rotation": _mat3, "shear": _vec3, "normal": _vec3, "residual": _num},
}

TWIN = {
    "type": "object",
    "required": ["verdict", "connections"],
    "properties": {
        "verdict": {"enum": ["solved", "no-solution", "degenerate-coincidence", "no-twin"]},
        "connections": {"type": "array", "items": CONNECTION},
    },
}

HABIT = {
    "type": "object",
    "required": ["verdict", "solutions"],
    "properties": {
        "verdict": {"enum": ["solved", "no-solution", "identity-input"]},
        "solutions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["rotation", "shape_vector", "habit_normal", "residual"],
                "properties": {"rotation": _mat3, "shape_vector": _vec3, "habit_normal": _vec3, "residual": _num},
            },
        },
    },
}

HULL = {
    "type": "object",
    "required": ["member", "block_structure_residual", "det_residual", "trace_margin"],
    "properties": {
        "member": {"type": "boolean"},
        "block_structure_residual": _num,
        "det_residual": _num,
        "trace_margin": _num,
    },
}

MALLARD = {
    "type": "object",
    "required": ["verdict", "chain", "diagonal", "closed_form", "three_well_configs", "kappa_set"],
    "properties": {
        "verdict": {"enum": ["solved", "no-twin"]},
        "chain": _pair,
        "diagonal": {"anyOf": [_vec3, {"type": "null"}]},
        "closed_form": _vec3,
        "three_well_configs": {"type": "array"},
        "kappa_set": {"type": "array"},
    },
}

CERTIFICATE = {
    "type": "object",
    "required": ["delta", "kappa", "epsilon", "lhs", "holds", "point", "shear", "normal", "ball_radius"],
    "properties": {
        "delta": _num,
        "kappa": {"anyOf": [_num, {"type": "null"}]},
        "epsilon": _num,
        "lhs": _num,
        "holds": {"type": "boolean"},
        "point": _mat3,
        "shear": _vec3,
        "normal": _vec3,
        "ball_radius": _num,
        "microstructure": {"type": "string"},
    },
}

INTERIOR = {
    "type": "object",
    "required": ["certificate"],
    "properties": {
        "certificate": CERTIFICATE,
        "kappa_provenance": _provenance,
        "all_admissible_kappas": {"type": "array"},
    },
}

CUALNI = {
    "type": "object",
    "required": ["delta_cbrt", "kappa_star", "kappa_provenance", "epsilon", "lhs", "holds", "all_admissible_kappas"],
    "properties": {
        "delta_cbrt": _num,
        "kappa_star": _num,
        "kappa_provenance": _provenance,
        "epsilon": _num,
        "lhs": _num,
        "holds": {"type": "boolean"},
        "all_admissible_kappas": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kappa", "epsilon", "holds"],
                "properties": {"kappa": _num, "epsilon": _num, "holds": {"type": "boolean"}},
            },
        },
    },
}

SURFACE = {
    "type": "object",
    "required": ["surface", "report", "files"],
    "properties": {
        "surface": {"type": "object"},
        "report": {
            "type": "object",
            "required": [
                "max_jump_residual", "det_deviation", "ball_membership_margin",
                "path_continuity_residual", "nonplanarity_witness", "vertex_count",
            ],
            "properties": {
                "max_jump_residual": _num,
                "det_deviation": _num,
                "ball_membership_margin": {"anyOf": [_num, {"type": "null"}]},
                "path_continuity_residual": _num,
                "vertex_count": {"type": "integer"},
                "face_count": {"type": "integer"},
            },
        },
        "files": {"type": "object"},
    },
}

VOLFRAC = {
    "type": "object",
    "required": ["results"],
    "properties": {
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["Lambda", "roots"],
                "properties": {"Lambda": _num, "roots": {"type": "array", "items": _num}},
            },
        }
    },
}

ERROR = {
    "type": "object",
    "required": ["error", "verdict"],
    "properties": {"error": {"type": "string"}, "verdict": {"type": "string"}, "message": {"type": "string"}},
}

BY_COMMAND = {
    "twin": TWIN,
    "habit": HABIT,
    "hull": HULL,
    "mallard": MALLARD,
    "interior": INTERIOR,
    "surface": SURFACE,
    "cualni": CUALNI,
    "volfrac": VOLFRAC,
}
