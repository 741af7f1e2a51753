from django.conf import settings

DEFAULTS = {
    "SEED": 0,
    "GROUP_CAP": 200000,
    "ENUMERATION_BOUND": 2**10,
    "MAX_SHORT_VECTOR_RANK": 32,
}


def get_setting(name):
    if name not in DEFAULTS:
        raise KeyError(f"unknown setting {name}")
    if not settings.configured:
        return DEFAULTS[name]
    return getattr(settings, "ECKARDT_LATTICES", {}).get(name, DEFAULTS[name])
