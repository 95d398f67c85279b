import logging
import random
import re
from collections import Counter
from pathlib import Path

from corpus.models import (PUNC_TOKEN, Corpus, CorpusSentence, Lexicon, Sentence, WordSpan,
                           check_partition)
from corpus.services.normalizer import normalized_tokens
from exceptions import CorpusFormatError

logger = logging.getLogger(__name__)

_WORD_RE = re.compile(r'[^ ]+')


def read_utf8_lines(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CorpusFormatError(f'cannot read {path}: {exc.strerror}') from exc
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as exc:
        line = data.count(b'\n', 0, exc.start) + 1
        raise CorpusFormatError(f'{path}: invalid UTF-8', line=line, position=exc.start) from exc
    if text.startswith('\ufeff'):
        text = text[1:]
    return [line.rstrip('\r') for line in text.split('\n')]


def parse_segmented_line(line, line_number=None):
    """Sentence and gold spans for one whitespace-segmented line."""
    chars, offsets, spans = [], [], []
    for match in _WORD_RE.finditer(line):
        word = match.group()
        if any(ch.isspace() for ch in word):
            raise CorpusFormatError(f'word {word!r} contains embedded whitespace', line=line_number)
        begin = len(chars)
        for token, start, end in normalized_tokens(word):
            chars.append(token)
            offsets.append((match.start() + start, match.start() + end))
        spans.append((begin, len(chars)))
    sentence = Sentence(chars=tuple(chars), raw=line, char_offsets=tuple(offsets))
    return sentence, tuple(spans)


def parse_raw_line(line):
    tokens = normalized_tokens(line)
    return Sentence(chars=tuple(t for t, _, _ in tokens), raw=line,
                    char_offsets=tuple((s, e) for _, s, e in tokens))


def split_long_sentence(item, cap):
    """Cut a CorpusSentence into pieces of at most cap characters at word boundaries.

    Prefers a boundary right after a punctuation word; a word longer than the
    cap stays whole.
    """
    sentence, spans = item.sentence, item.spans
    if cap is None or len(sentence) <= cap:
        return [item]
    pieces = []
    first = 0
    while first < len(spans):
        start = spans[first][0]
        last = first
        punc_cut = None
        index = first
        while index < len(spans) and spans[index][1] - start <= cap:
            last = index
            begin, end = spans[index]
            if sentence.chars[end - 1] == PUNC_TOKEN:
                punc_cut = index
            index += 1
        if index < len(spans) and punc_cut is not None:
            last = punc_cut
        stop = spans[last][1]
        piece_spans = tuple((b - start, e - start) for b, e in spans[first:last + 1])
        pieces.append(CorpusSentence(sentence=sentence.slice(start, stop), spans=piece_spans,
                                     ordinal=item.ordinal, token_offset=item.token_offset + start,
                                     full_length=item.sentence_length))
        first = last + 1
    return pieces


def full_sentences(*corpora):
    """Normalized characters of every whole sentence by ordinal, cut pieces joined back together."""
    pieces = {}
    for corpus in corpora:
        for item in corpus:
            pieces.setdefault(item.ordinal, {})[item.token_offset] = item.sentence.chars
    return {ordinal: tuple(char for offset in sorted(parts) for char in parts[offset])
            for ordinal, parts in pieces.items()}


def load_segmented_corpus(path, split='train', max_length=None):
    """Load a corpus with one sentence per line and words separated by spaces."""
    sentences = []
    skipped = 0
    ordinal = 0
    lines = read_utf8_lines(path)
    # the final newline of a file is not an empty sentence
    if lines and lines[-1] == '':
        lines.pop()
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            skipped += 1
            continue
        sentence, spans = parse_segmented_line(line, line_number=number)
        item = CorpusSentence(sentence=sentence, spans=spans, ordinal=ordinal)
        sentences.extend(split_long_sentence(item, max_length))
        ordinal += 1
    if skipped:
        logger.warning('%s: skipped %d empty line(s)', path, skipped)
    if not sentences:
        logger.warning('%s: corpus is empty', path)
    return Corpus(sentences=sentences, split=split, skipped_empty=skipped, source=str(path))


def load_raw_sentences(path):
    """Unsegmented text, one sentence per line; empty lines are skipped."""
    return [parse_raw_line(line) for line in read_utf8_lines(path) if line.strip()]


def corpus_from_lines(lines, split='train'):
    items = []
    for line in lines:
        if line.strip():
            sentence, spans = parse_segmented_line(line)
            items.append(CorpusSentence(sentence=sentence, spans=spans, ordinal=len(items)))
    return Corpus(sentences=items, split=split)


def split_train_dev(corpus, ratio, seed):
    """Disjoint random split; sentence order is preserved inside each part."""
    if not 0 < ratio < 1:
        raise CorpusFormatError(f'split ratio must lie in (0, 1), got {ratio}')
    if len(corpus) < 2:
        raise CorpusFormatError('at least two sentences are needed for a train/dev split')
    indices = list(range(len(corpus)))
    random.Random(seed).shuffle(indices)
    dev_size = min(len(corpus) - 1, max(1, round(ratio * len(corpus))))
    dev_indices = set(indices[:dev_size])
    train = [item for i, item in enumerate(corpus) if i not in dev_indices]
    dev = [item for i, item in enumerate(corpus) if i in dev_indices]
    return (Corpus(sentences=train, split='train', source=corpus.source),
            Corpus(sentences=dev, split='dev', source=corpus.source))


def build_lexicon(train):
    if not len(train):
        raise CorpusFormatError('cannot build a lexicon from an empty corpus')
    counts = Counter()
    for item in train:
        check_partition(item.spans, len(item.sentence))
        counts.update(item.words())
    return Lexicon(counts)


def oov_words(test, lexicon):
    result = set()
    for index, item in enumerate(test):
        for begin, end in item.spans:
            word = item.sentence.surface(begin, end)
            if word not in lexicon:
                result.add(WordSpan(index, begin, end, word))
    return result


def oov_rate(test, lexicon):
    total = test.span_count
    if not total:
        return 0.0
    return len(oov_words(test, lexicon)) / total


class LexiconService:

    @staticmethod
    def write(lexicon, path):
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            for word, count in lexicon.ordered():
                handle.write(f'{word}\t{count}\n')

    @staticmethod
    def read(path):
        entries = Counter()
        for number, line in enumerate(read_utf8_lines(path), start=1):
            if not line:
                continue
            parts = line.split('\t')
            if len(parts) != 2:
                raise CorpusFormatError('expected "word<TAB>count"', line=number)
            word, count = parts
            try:
                entries[word] += int(count)
            except ValueError as exc:
                raise CorpusFormatError(f'bad count {count!r}', line=number) from exc
        try:
            return Lexicon(entries)
        except ValueError as exc:
            raise CorpusFormatError(f'{path}: {exc}') from exc
