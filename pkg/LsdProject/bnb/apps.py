from django.apps import AppConfig


class BnbConfig(AppConfig):
    name = 'bnb'
