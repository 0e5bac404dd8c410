from django.apps import AppConfig


class CoreConfig(AppConfig):
    """LSD environment: states, reward tables and the bandit itself."""
    name = 'core'
    verbose_name = 'LSD environment'
