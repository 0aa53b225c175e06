/// JSON Schema (draft 2020-12) of the experiment config, printed by
/// `parabolic-lab schema`.
pub const CONFIG_SCHEMA: &str = r##"{
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "parabolic-lab experiment config",
  "type": "object",
  "additionalProperties": false,
  "required": ["experiment", "params"],
  "properties": {
    "experiment": {
      "enum": ["phase_diagram", "blow_up_curve", "moment_vs_time", "multiplier_report", "scheme_convergence", "fourth_order"]
    },
    "params": {
      "type": "object",
      "additionalProperties": false,
      "required": ["alpha", "beta", "p"],
      "properties": {
        "alpha": {"$ref": "#/$defs/range"},
        "beta": {"$ref": "#/$defs/range"},
        "p": {"$ref": "#/$defs/range", "description": "moment exponent, > 1"},
        "q": {"$ref": "#/$defs/range", "description": "spatial exponent, > 1; default 2"},
        "s": {"$ref": "#/$defs/range", "description": "smoothness index; default 0"}
      }
    },
    "initial": {
      "description": "default {\"gaussian_width\": {\"delta\": 1}}",
      "oneOf": [
        {"type": "object", "additionalProperties": false, "required": ["gaussian_width"],
         "properties": {"gaussian_width": {"type": "object", "additionalProperties": false, "required": ["delta"],
           "properties": {"delta": {"type": "number", "exclusiveMinimum": 0}}}}},
        {"type": "object", "additionalProperties": false, "required": ["single_mode"],
         "properties": {"single_mode": {"type": "object", "additionalProperties": false, "required": ["n"],
           "properties": {"n": {"type": "integer"}}}}},
        {"type": "object", "additionalProperties": false, "required": ["custom_coeff_file"],
         "properties": {"custom_coeff_file": {"type": "object", "additionalProperties": false, "required": ["path"],
           "properties": {"path": {"type": "string", "description": "JSON {\"truncation\": N, \"coeffs\": [[re, im], ...]} for modes -N..=N; relative to the config file"}}}}}
      ]
    },
    "norm": {
      "description": "norm of the moments; default bessel with the cell's s and q",
      "type": "object",
      "required": ["kind"],
      "properties": {
        "kind": {"enum": ["bessel", "besov", "interp_da"]},
        "s": {"type": "number"},
        "q": {"type": "number", "exclusiveMinimum": 1},
        "p": {"oneOf": [{"type": "number", "minimum": 1}, {"const": "inf"}]},
        "theta": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "time_quad_nodes": {"type": "integer", "minimum": 16},
        "grid_points": {"type": "integer", "minimum": 1}
      }
    },
    "times": {"$ref": "#/$defs/range", "description": "required by moment_vs_time, multiplier_report, fourth_order"},
    "numerics": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "N": {"type": "integer", "minimum": 1, "description": "Fourier truncation; default 256, 64 for fourth_order, 8 for scheme_convergence"},
        "grid_points": {"type": "integer", "minimum": 1},
        "quad_nodes": {"type": "integer", "minimum": 1, "description": "time panels of time-integrated moments; default 32"},
        "paths": {"type": "integer", "minimum": 0, "description": "Monte Carlo paths; needs seed when > 0"},
        "seed": {"type": "integer", "minimum": 0},
        "eps": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 0.5},
        "noise_values": {"$ref": "#/$defs/range", "description": "values of W(t) for multiplier_report; default 0"},
        "trials": {"type": "integer", "minimum": 0, "description": "random polynomials per empirical norm; default 8"},
        "horizon": {"type": "number", "exclusiveMinimum": 0},
        "levels": {"type": "array", "items": {"type": "integer", "minimum": 0, "maximum": 20}, "minItems": 2, "maxItems": 2,
                   "description": "coarsest and finest level L, dt = horizon 2^-L; default [7, 12]"}
      }
    },
    "output": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "path": {"type": "string", "description": "output directory; default results"},
        "format": {"enum": ["csv", "csv_json"]}
      }
    }
  },
  "$defs": {
    "range": {
      "oneOf": [
        {"type": "number"},
        {"type": "array", "items": {"type": "number"}, "minItems": 1},
        {"type": "object", "additionalProperties": false, "required": ["start", "stop", "step"],
         "properties": {"start": {"type": "number"}, "stop": {"type": "number"}, "step": {"type": "number", "exclusiveMinimum": 0}}}
      ]
    }
  }
}"##;
