from django.apps import AppConfig


class AlgosConfig(AppConfig):
    """Block learners and the greedy oracle."""
    name = 'algos'
    verbose_name = 'Learners'
