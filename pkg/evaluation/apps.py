from django.apps import AppConfig


class EvaluationConfig(AppConfig):
    name = 'evaluation'

    def ready(self):
        import evaluation.conf
