from django.apps import AppConfig


class HarnessConfig(AppConfig):
    """Instances, experiments and the `run`, `gen` and `verify` commands."""
    name = 'harness'
    verbose_name = 'Experiment harness'
