"""
Access to the toolkit settings.
"""
from django.conf import settings


def lsd_setting(name, value=None):
    """Return `value` if given, else the `LSD_BANDITS[name]` setting."""
    if value is not None:
        return value
    return settings.LSD_BANDITS[name]
