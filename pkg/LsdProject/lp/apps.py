from django.apps import AppConfig


class LpConfig(AppConfig):
    name = 'lp'
