from django.apps import AppConfig


class ParsesConfig(AppConfig):
    name = 'parses'
