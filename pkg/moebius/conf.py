from django.conf import settings

DEFAULTS = {
    'BLOCK_SIZE': 2 ** 20,
    'EXACT_CUTOFF': 10 ** 4,
    'IDENTITY_TOLERANCE': 1e-9,
    'SCAN_CHUNK': 2 ** 22,
    'EULER_GAMMA': 0.5772156649015329,
    'TAIL_CONSTANT_ACCURACY': 1e-10,
    'MAX_REPORTED_VIOLATIONS': 100,
    'POINTWISE_SCAN_LIMIT': 10 ** 5,
    'RECURSION_SCAN_LIMIT': 10 ** 4,
    'RECURSION_SAMPLES': 100,
}


def moebius_setting(name):
    overrides = getattr(settings, 'MOEBIUS', {})
    if name in overrides:
        return overrides[name]
    return DEFAULTS[name]


def block_size(value=None):
    return int(value) if value else int(moebius_setting('BLOCK_SIZE'))


def exact_cutoff(value=None):
    return int(value) if value else int(moebius_setting('EXACT_CUTOFF'))
