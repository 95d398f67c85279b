"""Bakeoff-style word scoring: exact span matches, micro-averaged over a corpus."""
import logging

from corpus.models import check_partition
from corpus.services.corpus_service import load_segmented_corpus
from evaluation.models import Metrics
from exceptions import EvaluationError, LabelSequenceError

logger = logging.getLogger(__name__)


def _length(spans):
    return spans[-1][1] if spans else 0


def _check(gold_spans, predicted_spans):
    if _length(gold_spans) != _length(predicted_spans):
        raise EvaluationError(f'gold covers {_length(gold_spans)} characters, '
                              f'prediction covers {_length(predicted_spans)}')
    try:
        check_partition(gold_spans, _length(gold_spans))
        check_partition(predicted_spans, _length(predicted_spans))
    except LabelSequenceError as exc:
        raise EvaluationError(exc.message) from exc


def score(gold_spans, predicted_spans):
    """Precision/recall counts of one sentence; OOV counts are left at zero."""
    gold_spans, predicted_spans = tuple(map(tuple, gold_spans)), tuple(map(tuple, predicted_spans))
    _check(gold_spans, predicted_spans)
    correct = len(set(gold_spans) & set(predicted_spans))
    return Metrics(gold=len(gold_spans), predicted=len(predicted_spans), correct=correct)


def oov_counts(gold_spans, gold_words, predicted_spans, lexicon):
    predicted = set(map(tuple, predicted_spans))
    oov = [tuple(span) for span, word in zip(gold_spans, gold_words) if word not in lexicon]
    return len(oov), sum(1 for span in oov if span in predicted)


def oov_recall(gold_spans, gold_words, predicted_spans, lexicon):
    """Fraction of gold words absent from the lexicon that are predicted exactly; 1.0 when there are none."""
    total, recovered = oov_counts(gold_spans, gold_words, predicted_spans, lexicon)
    return recovered / total if total else 1.0


def score_sentence(gold_spans, gold_words, predicted_spans, lexicon=None):
    metrics = score(gold_spans, predicted_spans)
    if lexicon is not None:
        metrics.oov_gold, metrics.oov_correct = oov_counts(gold_spans, gold_words, predicted_spans, lexicon)
    return metrics


def score_corpus(gold, predictions, lexicon=None):
    """Summed counts of every sentence of a gold Corpus against predicted span lists."""
    if len(gold) != len(predictions):
        raise EvaluationError(f'{len(gold)} gold sentences but {len(predictions)} predictions')
    total = Metrics()
    for index, (item, predicted) in enumerate(zip(gold, predictions)):
        try:
            total = total + score_sentence(item.spans, item.words(), predicted, lexicon)
        except EvaluationError as exc:
            raise EvaluationError(f'sentence {index}: {exc.message}') from exc
    if lexicon is not None and total.oov_degenerate:
        logger.warning('no OOV words in the gold data; OOV recall reported as 1.0')
    return total


def score_files(gold_path, predicted_path, lexicon=None):
    """Score a segmented prediction file against a segmented gold file, line by line."""
    gold = load_segmented_corpus(gold_path, split='test')
    predicted = load_segmented_corpus(predicted_path, split='test')
    if len(gold) != len(predicted):
        raise EvaluationError(f'{gold_path} has {len(gold)} sentences, {predicted_path} has {len(predicted)}')
    for index, (g, p) in enumerate(zip(gold, predicted)):
        if g.sentence.chars != p.sentence.chars:
            raise EvaluationError(f'sentence {index}: prediction text differs from gold')
    return score_corpus(gold, [p.spans for p in predicted], lexicon)
