from django.apps import AppConfig


class NgramConfig(AppConfig):
    name = 'ngram'

    def ready(self):
        import ngram.conf
