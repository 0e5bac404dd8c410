from django.apps import AppConfig


class IlpConfig(AppConfig):
    """Binary programs of the block-selection problem."""
    name = 'ilp'
    verbose_name = 'Block ILP'
