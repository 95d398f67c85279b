"""Accessor-variety statistics and n-gram vocabulary extraction.

L_av(s) counts the distinct characters preceding s plus the distinct
sentences that start with s; R_av(s) is the mirror image. A string's AV is
min(L_av, R_av). N-grams never cross sentence boundaries.
"""
import logging
import random
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor

from django.conf import settings

from corpus.models import PUNC_TOKEN, Corpus, CorpusSentence, Sentence
from corpus.services.corpus_service import read_utf8_lines
from corpus.services.normalizer import split_tokens
from exceptions import NgramError
from ngram.models import AccessorCount, NgramEntry, NgramVocab

logger = logging.getLogger(__name__)


class AccessorStats:
    """Mergeable (frequency, predecessor-set, successor-set) tables for one shard."""

    def __init__(self):
        self.frequency = Counter()
        self.predecessors = defaultdict(set)
        self.successors = defaultdict(set)
        self.starts = defaultdict(set)
        self.ends = defaultdict(set)

    def add_sentence(self, sentence_id, tokens, max_length):
        size = len(tokens)
        for begin in range(size):
            for length in range(2, max_length + 1):
                end = begin + length
                if end > size:
                    break
                key = ''.join(tokens[begin:end])
                self.frequency[key] += 1
                if begin == 0:
                    self.starts[key].add(sentence_id)
                else:
                    self.predecessors[key].add(tokens[begin - 1])
                if end == size:
                    self.ends[key].add(sentence_id)
                else:
                    self.successors[key].add(tokens[end])

    def merge(self, other):
        merged = AccessorStats()
        for stats in (self, other):
            merged.frequency.update(stats.frequency)
            for name in ('predecessors', 'successors', 'starts', 'ends'):
                target = getattr(merged, name)
                for key, values in getattr(stats, name).items():
                    target[key] |= values
        return merged

    def counts(self):
        return {
            key: AccessorCount(
                frequency=frequency,
                left_av=len(self.predecessors.get(key, ())) + len(self.starts.get(key, ())),
                right_av=len(self.successors.get(key, ())) + len(self.ends.get(key, ())),
            )
            for key, frequency in self.frequency.items()
        }


def _tokens_of(item):
    if isinstance(item, CorpusSentence):
        return item.sentence.chars
    if isinstance(item, Sentence):
        return item.chars
    if isinstance(item, str):
        return tuple(split_tokens(item))
    return tuple(item)


def _is_sentence_like(item):
    if isinstance(item, (CorpusSentence, Sentence, str)):
        return True
    return isinstance(item, tuple) and all(isinstance(token, str) for token in item)


def _token_sequences(corpora):
    """Accepts one corpus (Corpus or list of sentences) or a list of them."""
    if isinstance(corpora, Corpus):
        corpora = [corpora]
    elif corpora and _is_sentence_like(corpora[0]):
        corpora = [corpora]
    sequences = []
    for corpus in corpora:
        sequences.extend(_tokens_of(item) for item in corpus)
    return [tokens for tokens in sequences if tokens]


def count_shard(sequences, first_id, max_length):
    stats = AccessorStats()
    for offset, tokens in enumerate(sequences):
        stats.add_sentence(first_id + offset, tokens, max_length)
    return stats


def accessor_counts(corpora, max_length, workers=1, shard_size=None):
    """Frequency and left/right accessor variety of every 2..max_length substring."""
    shard_size = shard_size or settings.NGRAM_SHARD_SIZE
    if max_length < 2:
        raise NgramError(f'max_length must be at least 2, got {max_length}')
    sequences = _token_sequences(corpora)
    shards = [(sequences[i:i + shard_size], i, max_length)
              for i in range(0, len(sequences), shard_size)]
    if workers > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(count_shard, *zip(*shards)))
    else:
        parts = [count_shard(*shard) for shard in shards]
    total = AccessorStats()
    for part in parts:
        total = total.merge(part)
    return total.counts()


def extract_ngrams(corpora, max_length=5, min_frequency=5, av_threshold=2, workers=1):
    for name, value in (('max_length', max_length), ('min_frequency', min_frequency),
                        ('av_threshold', av_threshold)):
        if value < 1:
            raise NgramError(f'{name} must be at least 1, got {value}')
    if max_length < 2:
        return NgramVocab({}, max_length, min_frequency, av_threshold)
    counts = accessor_counts(corpora, max_length, workers=workers)
    entries = {}
    for key, count in counts.items():
        if PUNC_TOKEN in key:
            continue
        if count.frequency >= min_frequency and count.av >= av_threshold:
            entries[key] = NgramEntry(frequency=count.frequency, av=count.av)
    vocab = NgramVocab(entries, max_length, min_frequency, av_threshold)
    logger.info('extracted %d n-grams from %d candidates', len(vocab), len(counts))
    return vocab


def subsample_vocab(vocab, fraction, seed):
    """Uniformly random subset with round(fraction * |vocab|) entries."""
    if not 0 < fraction <= 1:
        raise NgramError(f'fraction must lie in (0, 1], got {fraction}')
    keys = vocab.ordered_keys()
    size = round(fraction * len(keys))
    chosen = random.Random(seed).sample(keys, size)
    return NgramVocab({key: vocab.entries[key] for key in chosen},
                      vocab.max_length, vocab.min_frequency, vocab.av_threshold)


class VocabService:

    @staticmethod
    def write(vocab, path):
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            for key in vocab.ordered_keys():
                entry = vocab.entries[key]
                handle.write(f'{key}\t{entry.frequency}\t{entry.av}\n')

    @staticmethod
    def read(path):
        entries = {}
        for number, line in enumerate(read_utf8_lines(path), start=1):
            if not line:
                continue
            parts = line.split('\t')
            if len(parts) != 3:
                raise NgramError(f'{path}: line {number}: expected "ngram<TAB>frequency<TAB>av"')
            try:
                entries[parts[0]] = NgramEntry(frequency=int(parts[1]), av=int(parts[2]))
            except ValueError as exc:
                raise NgramError(f'{path}: line {number}: {exc}') from exc
        if not entries:
            return NgramVocab({})
        return NgramVocab(
            entries,
            max_length=max(len(split_tokens(key)) for key in entries),
            min_frequency=min(entry.frequency for entry in entries.values()),
            av_threshold=min(entry.av for entry in entries.values()),
        )
