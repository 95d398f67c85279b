def validate_graph_config(data):
    errors = []
    if not (data.get('use_syntax_subgraph', True) or data.get('use_cwn_subgraph', True)):
        errors.append({'graph': 'at least one of the syntax and cwn sub-graphs must be enabled'})
    return errors


def validate_train_config(data):
    errors = []
    if data.get('learning_rate', 1) <= 0:
        errors.append({'learning_rate': 'must be positive'})
    if data.get('clip_norm', 1) <= 0:
        errors.append({'clip_norm': 'must be positive'})
    if not 0 < data.get('dev_ratio', 0.1) < 1:
        errors.append({'dev_ratio': 'must lie strictly between 0 and 1'})
    if data.get('decay', 0) < 0:
        errors.append({'decay': 'must not be negative'})
    return errors
