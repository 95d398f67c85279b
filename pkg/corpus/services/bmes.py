import logging
from dataclasses import dataclass

from corpus.models import Label, LabelSeq
from corpus.services.normalizer import split_tokens
from exceptions import LabelSequenceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpanDecoding:
    spans: tuple
    repaired: bool


def _word_length(word):
    if isinstance(word, str):
        return len(split_tokens(word))
    return len(word)


def to_bmes(words):
    """BMES labels for a sequence of words (strings or token sequences)."""
    if not words:
        raise LabelSequenceError('cannot label an empty word sequence')
    labels = []
    for index, word in enumerate(words):
        length = _word_length(word)
        if length == 0:
            raise LabelSequenceError(f'word {index} is empty')
        if length == 1:
            labels.append(Label.S)
        else:
            labels.append(Label.B)
            labels.extend([Label.M] * (length - 2))
            labels.append(Label.E)
    return LabelSeq(labels)


def spans_to_bmes(spans):
    return to_bmes([range(begin, end) for begin, end in spans])


def from_bmes(chars, labels):
    """Word spans encoded by labels over chars.

    Illegal sequences are repaired left to right: B and S open a word, E and
    S close it, a B or S arriving while a word is open closes that word first,
    and an M or E with no open word starts one.
    """
    labels = labels if isinstance(labels, LabelSeq) else LabelSeq(labels)
    if len(chars) != len(labels):
        raise LabelSequenceError(f'{len(chars)} characters but {len(labels)} labels')
    spans = []
    start = None
    repaired = False
    for i, label in enumerate(labels):
        if label in (Label.B, Label.S):
            if start is not None:
                spans.append((start, i))
                repaired = True
            if label is Label.S:
                spans.append((i, i + 1))
                start = None
            else:
                start = i
        else:
            if start is None:
                start = i
                repaired = True
            if label is Label.E:
                spans.append((start, i + 1))
                start = None
    if start is not None:
        spans.append((start, len(labels)))
        repaired = True
    if repaired:
        logger.debug('repaired illegal label sequence %s', labels)
    return SpanDecoding(spans=tuple(spans), repaired=repaired)
