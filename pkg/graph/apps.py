from django.apps import AppConfig


class SegmentationGraphConfig(AppConfig):
    name = 'graph'
    label = 'segmentation_graph'

    def ready(self):
        import graph.conf
