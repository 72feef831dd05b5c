"""Access to the ``QLAB_*`` Django settings.

The library is usable without a configured Django project (plain imports in a
notebook, for instance); in that case the defaults below apply.
"""
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    'SUBSPACE_LIMIT': 10 ** 6,
    'LAGRANGIAN_LIMIT': 10 ** 5,
    'SYM_LIMIT': 10 ** 5,
    'HAMMING_LIMIT': 12,
    'FIELD_LIMIT': 64,
    'TOLERANCE': 1e-8,
    'WS_VERTEX_LIMIT': 200,
    'CUBE_LIMIT': 10,
    'TERWILLIGER_LIMIT': 64,
    'DEFAULT_N': 3,
    'DEFAULT_D': 2,
    'DEFAULT_Q': 2,
}


def setting(name, override=None):
    """Return ``override`` if given, else ``settings.QLAB_<name>``, else the default."""
    if override is not None:
        return override
    try:
        return getattr(settings, f'QLAB_{name}', DEFAULTS[name])
    except ImproperlyConfigured:
        return DEFAULTS[name]
