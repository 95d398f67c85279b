##### Segmenter #####
# Overrides for the per-app defaults declared in each app's conf.py.
# Only variables present in the environment (or .env) are applied.
import os

_ENV_OVERRIDES = {
    'TRAINER_SEED': ('GRAPHSEG_SEED', int),
    'TRAINER_WORKERS': ('GRAPHSEG_WORKERS', int),
    'TRAINER_OUTPUT_DIR': ('GRAPHSEG_OUTPUT_DIR', str),
    'CORPUS_MAX_SENTENCE_LENGTH': ('GRAPHSEG_MAX_SENTENCE_LENGTH', int),
    'NETWORK_CHAR_DIM': ('GRAPHSEG_CHAR_DIM', int),
    'NETWORK_HIDDEN_DIM': ('GRAPHSEG_HIDDEN_DIM', int),
}

for _name, (_variable, _cast) in _ENV_OVERRIDES.items():
    _value = os.getenv(_variable)
    if _value is not None:
        globals()[_name] = _cast(_value)
