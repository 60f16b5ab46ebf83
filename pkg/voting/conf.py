"""
Engine settings with built-in defaults.

The engine modules are plain Python and are also used outside a configured
Django project (worker processes, library callers); every lookup therefore
falls back to the defaults below when settings are not available.
"""
import os

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    'POWERPOLY_THREADS': 1,
    'POWERPOLY_COALITION_CAP': 24,
    'POWERPOLY_ILP_CAP': 12,
    'POWERPOLY_CENSUS_CAP': 6,
    'POWERPOLY_CENSUS_TOTAL_CAP': 10000,
    'POWERPOLY_DECIMALS': 3,
    'POWERPOLY_MC_BURN_IN': 1000,
    'POWERPOLY_MC_SAMPLES': 100000,
}


def get(name: str):
    """Return the configured value for an engine setting."""
    default = DEFAULTS[name]
    if not settings.configured and 'DJANGO_SETTINGS_MODULE' not in os.environ:
        return default
    try:
        return getattr(settings, name, default)
    except ImproperlyConfigured:
        return default
