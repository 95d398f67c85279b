from django.apps import AppConfig


class CorpusConfig(AppConfig):
    name = 'corpus'

    def ready(self):
        import corpus.conf
