class SegmenterError(Exception):
    code = 'segmenter_error'

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self):
        return f'{self.code}: {self.message}'


class CorpusFormatError(SegmenterError):
    code = 'corpus_format'

    def __init__(self, message, line=None, position=None):
        if line is not None:
            message = f'line {line}: {message}'
        if position is not None:
            message = f'{message} (position {position})'
        super().__init__(message, line=line, position=position)
        self.line = line
        self.position = position


class LabelSequenceError(SegmenterError):
    code = 'label_sequence'


class NgramError(SegmenterError):
    code = 'ngram'


class ParseFormatError(SegmenterError):
    code = 'parse_format'


class GraphConfigError(SegmenterError):
    code = 'graph_config'


class EncoderError(SegmenterError):
    code = 'encoder'


class ExternalEmbeddingError(SegmenterError):
    code = 'external_embedding'


class CheckpointError(SegmenterError):
    code = 'checkpoint'


class TrainingDivergedError(SegmenterError):
    code = 'training_diverged'


class EvaluationError(SegmenterError):
    code = 'evaluation'
