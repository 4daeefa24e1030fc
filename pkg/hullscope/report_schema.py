"""JSON schemas for artifacts the toolkit writes and reads back."""


def _schema_number_list(min_items=0):
    return {
        'type': 'array',
        'minItems': min_items,
        'items': {'type': 'number'},
    }


def _schema_fit_regime():
    """JSON schema for a Legendre fit regime descriptor."""
    return {
        'type': 'object',
        'required': ['kind', 'ridge_lambda', 'anchors'],
        'properties': {
            'kind': {
                'enum': ['minnorm', 'ridge', 'anchored'],
            },
            'ridge_lambda': {
                'type': ['number', 'null'],
                'exclusiveMinimum': 0,
            },
            'anchors': {
                'type': 'array',
                'items': {
                    'type': 'object',
                    'required': ['x', 'sign', 'weight'],
                    'properties': {
                        'x': {'type': 'number'},
                        'sign': {'enum': [-1, 1]},
                        'weight': {'type': 'number', 'exclusiveMinimum': 0},
                    },
                },
            },
        },
    }


# JSON schema for a stored Legendre model.
LEGENDRE_MODEL_SCHEMA = {
    'type': 'object',
    'required': ['degree', 'coeffs', 'regime', 'domain'],
    'properties': {
        'degree': {
            'type': 'integer',
            'minimum': 0,
        },
        'coeffs': _schema_number_list(min_items=1),
        'regime': _schema_fit_regime(),
        'domain': {
            'type': 'array',
            'minItems': 2,
            'maxItems': 2,
            'items': {'type': 'number'},
        },
    },
}


# JSON schema for the sidecar of a masked wavelet transform.
WAVELET_MASK_SCHEMA = {
    'type': 'object',
    'required': ['family', 'levels', 'shape', 'keep_top', 'indices'],
    'properties': {
        'family': {
            'enum': ['haar', 'db4'],
        },
        'levels': {
            'type': 'integer',
            'minimum': 1,
        },
        'shape': {
            'type': 'array',
            'minItems': 3,
            'maxItems': 3,
            'items': {'type': 'integer', 'minimum': 1},
        },
        'keep_top': {
            'type': ['integer', 'null'],
            'minimum': 1,
        },
        'indices': {
            'type': 'array',
            'uniqueItems': True,
            'items': {'type': 'integer', 'minimum': 0},
        },
    },
}


# JSON schema for a two dimensional hull polygon.
POLYGON_SCHEMA = {
    'type': 'object',
    'required': ['vertices'],
    'properties': {
        'vertices': {
            'type': 'array',
            'minItems': 3,
            'items': _schema_number_list(min_items=2),
        },
    },
}


def _schema_distance_summary():
    """JSON schema for a distance summary."""
    return {
        'type': 'object',
        'required': ['n', 'mean', 'sample_std', 'min', 'max', 'histogram',
                     'degenerate'],
        'properties': {
            'n': {'type': 'integer', 'minimum': 1},
            'mean': {'type': 'number'},
            'sample_std': {'type': 'number', 'minimum': 0},
            'min': {'type': 'number'},
            'max': {'type': 'number'},
            'degenerate': {'type': 'boolean'},
        },
    }


# JSON schema for the summary of a hull-distance run.
HULL_DISTANCE_SUMMARY_SCHEMA = {
    'type': 'object',
    'required': ['n_train', 'n_query', 'dimension', 'membership',
                 'outside_fraction', 'unconverged', 'upper', 'lower',
                 'diameter'],
    'properties': {
        'n_train': {'type': 'integer', 'minimum': 1},
        'n_query': {'type': 'integer', 'minimum': 0},
        'dimension': {'type': 'integer', 'minimum': 1},
        'membership': {
            'type': 'object',
            'required': ['inside', 'outside', 'uncertain'],
            'additionalProperties': {'type': 'integer', 'minimum': 0},
        },
        'outside_fraction': {'type': 'number', 'minimum': 0, 'maximum': 1},
        'unconverged': {'type': 'integer', 'minimum': 0},
        'upper': {'anyOf': [_schema_distance_summary(), {'type': 'null'}]},
        'lower': {'anyOf': [_schema_distance_summary(), {'type': 'null'}]},
        'diameter': {
            'type': 'object',
            'required': ['value', 'method'],
            'properties': {
                'value': {'type': 'number', 'minimum': 0},
                'method': {'enum': ['exact', 'heuristic']},
            },
        },
    },
}


# JSON schema for the validated run configuration of any subcommand.
RUN_CONFIG_SCHEMA = {
    'type': 'object',
    'required': ['command', 'threads', 'seed'],
    'properties': {
        'command': {
            'enum': ['hull-distance', 'diameter', 'wavelet', 'random-baseline',
                     'direction', 'legendre-demo', 'mlp-demo'],
        },
        'threads': {'type': 'integer', 'minimum': 1},
        'seed': {'type': 'integer', 'minimum': 0},
        'out': {'type': ['string', 'null'], 'minLength': 1},
        'gap_tol': {'type': ['number', 'null'], 'exclusiveMinimum': 0},
        'inside_tol': {'type': ['number', 'null'],
                       'exclusiveMinimum': 0, 'exclusiveMaximum': 1},
        'max_iters': {'type': ['integer', 'null'], 'minimum': 1},
        'subsample': {'type': ['integer', 'null'], 'minimum': 1},
        'query_subsample': {'type': ['integer', 'null'], 'minimum': 1},
        'sweeps': {'type': ['integer', 'null'], 'minimum': 1},
        'levels': {'type': ['integer', 'null'], 'minimum': 1},
        'keep_top': {'type': ['integer', 'null'], 'minimum': 1},
        'n': {'type': ['integer', 'null'], 'minimum': 1},
        'index': {'type': ['integer', 'null'], 'minimum': 0},
        'steps': {'type': ['integer', 'null'], 'minimum': 1},
        'lr': {'type': ['number', 'null'], 'exclusiveMinimum': 0},
        'random_baseline': {'type': ['integer', 'null'], 'minimum': 1},
        'max_unconverged_fraction': {'type': ['number', 'null'],
                                     'minimum': 0, 'maximum': 1},
        'wavelet_levels': {'type': ['integer', 'null'], 'minimum': 1},
        'bins': {'type': ['integer', 'null'], 'minimum': 1},
        'resolution': {'type': ['integer', 'null'], 'minimum': 2},
        'changes': {'type': ['integer', 'null'], 'minimum': 0},
        'batch': {'type': ['integer', 'null'], 'minimum': 1},
        'weight_decay': {'type': ['number', 'null'], 'minimum': 0},
        'diameter_sweeps': {'type': ['integer', 'null'], 'minimum': 1},
    },
}
