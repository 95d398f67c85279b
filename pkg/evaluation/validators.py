def validate_sweep(data):
    errors = []
    fractions = data.get('fractions') or []
    if not fractions:
        errors.append({'fractions': 'at least one fraction is required'})
    for fraction in fractions:
        if not 0 < fraction <= 1:
            errors.append({'fractions': f'{fraction} is outside (0, 1]'})
    if len(set(fractions)) != len(fractions):
        errors.append({'fractions': 'fractions must be distinct'})
    errors.extend(validate_seeds(data))
    return errors


def validate_seeds(data):
    seeds = data.get('seeds') or []
    if not seeds:
        return [{'seeds': 'at least one seed is required'}]
    if len(set(seeds)) != len(seeds):
        return [{'seeds': 'seeds must be distinct'}]
    return []
