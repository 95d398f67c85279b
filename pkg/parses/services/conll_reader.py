import logging

from corpus.models import CorpusSentence, Sentence
from corpus.services.corpus_service import read_utf8_lines
from corpus.services.normalizer import normalized_tokens
from exceptions import CorpusFormatError, ParseFormatError
from parses.models import DepParse, ParseCollection

logger = logging.getLogger(__name__)

ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL, DEPS, MISC = range(10)


def read_conll_blocks(path):
    """Sentence blocks of (form, head) rows; comments, multiword and empty-node rows skipped."""
    try:
        lines = read_utf8_lines(path)
    except CorpusFormatError as exc:
        raise ParseFormatError(exc.message) from exc

    blocks = []
    rows = []
    for number, line in enumerate(lines, start=1):
        if line.startswith('#'):
            continue
        if not line.strip():
            if rows:
                blocks.append(rows)
                rows = []
            continue
        columns = line.split('\t')
        if len(columns) < 7:
            raise ParseFormatError(f'{path}: line {number}: expected 10 tab-separated columns')
        if '-' in columns[ID] or '.' in columns[ID]:
            continue
        try:
            token_id = int(columns[ID])
            head = int(columns[HEAD])
        except ValueError as exc:
            raise ParseFormatError(f'{path}: line {number}: ID and HEAD must be integers') from exc
        if token_id != len(rows) + 1:
            raise ParseFormatError(f'{path}: line {number}: token ids must run 1..n')
        rows.append((columns[FORM], head))
    if rows:
        blocks.append(rows)
    return blocks


def _chars_of(item):
    if isinstance(item, CorpusSentence):
        return item.sentence.chars
    if isinstance(item, Sentence):
        return item.chars
    return tuple(item)


def align_parse(rows, reference=None):
    """Greedy left-to-right alignment of parser tokens to normalized characters.

    Returns None when the tokens do not spell out the reference characters or
    a head index is out of range.
    """
    forms = [form for form, _ in rows]
    heads = [head for _, head in rows]
    if any(not 0 <= head <= len(rows) for head in heads):
        return None
    token_chars = [[token for token, _, _ in normalized_tokens(form)] for form in forms]
    if reference is None:
        reference = tuple(token for chars in token_chars for token in chars)
    reference = tuple(reference)
    alignment = []
    position = 0
    for chars in token_chars:
        end = position + len(chars)
        if not chars or tuple(reference[position:end]) != tuple(chars):
            return None
        alignment.append((position, end))
        position = end
    if position != len(reference):
        return None
    return DepParse(
        tokens=tuple(forms),
        heads=tuple(heads),
        alignment=tuple(alignment),
        chars=reference,
        multi_root=sum(1 for head in heads if head == 0) > 1,
    )


def load_parses(path, sentences=None):
    """Parses keyed by sentence ordinal.

    With sentences (a list or an ordinal mapping) each parse is aligned
    against that sentence's normalized characters; parses that do not align
    are dropped so the sentence falls back to no syntax edges.
    """
    if sentences is not None and not hasattr(sentences, 'get'):
        sentences = dict(enumerate(sentences))
    collection = ParseCollection(source=str(path))
    for ordinal, rows in enumerate(read_conll_blocks(path)):
        reference = None
        if sentences is not None:
            if ordinal not in sentences:
                collection.dropped.append(ordinal)
                continue
            reference = _chars_of(sentences[ordinal])
        parse = align_parse(rows, reference)
        if parse is None:
            logger.warning('%s: parse %d does not align with its sentence; dropped', path, ordinal)
            collection.dropped.append(ordinal)
            continue
        if parse.multi_root:
            logger.warning('%s: parse %d has more than one root', path, ordinal)
        collection.parses[ordinal] = parse
    if collection.dropped:
        logger.warning('%s: %d parse(s) dropped', path, len(collection.dropped))
    return collection
