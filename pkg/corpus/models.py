from collections import Counter
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Iterator, Optional

from exceptions import LabelSequenceError


NUM_TOKEN = '⟨NUM⟩'
LAT_TOKEN = '⟨LAT⟩'
PUNC_TOKEN = '⟨PUNC⟩'
PLACEHOLDER_TOKENS = (NUM_TOKEN, LAT_TOKEN, PUNC_TOKEN)


class Label(IntEnum):
    B = 0
    M = 1
    E = 2
    S = 3


# label -> labels allowed to follow it
LEGAL_NEXT = {
    Label.B: frozenset({Label.M, Label.E}),
    Label.M: frozenset({Label.M, Label.E}),
    Label.E: frozenset({Label.B, Label.S}),
    Label.S: frozenset({Label.B, Label.S}),
}
LEGAL_FIRST = frozenset({Label.B, Label.S})
LEGAL_LAST = frozenset({Label.E, Label.S})


@dataclass(frozen=True)
class Sentence:
    chars: tuple
    raw: str
    char_offsets: tuple

    def __post_init__(self):
        if len(self.chars) != len(self.char_offsets):
            raise ValueError('chars and char_offsets must have equal length')
        for (start, end), (next_start, _) in zip(self.char_offsets, self.char_offsets[1:]):
            if not start < end <= next_start:
                raise ValueError('char offsets must be strictly increasing')

    def __len__(self):
        return len(self.chars)

    @property
    def text(self):
        return ''.join(self.chars)

    def surface(self, begin, end):
        return ''.join(self.chars[begin:end])

    def raw_surface(self, begin, end):
        """Original (non-normalized) text of tokens [begin, end); raw text between tokens is left out."""
        return ''.join(self.raw[start:stop] for start, stop in self.char_offsets[begin:end])

    def slice(self, begin, end):
        base = self.char_offsets[begin][0]
        stop = self.char_offsets[end - 1][1]
        offsets = tuple((s - base, e - base) for s, e in self.char_offsets[begin:end])
        return Sentence(chars=self.chars[begin:end], raw=self.raw[base:stop], char_offsets=offsets)


class LabelSeq:
    __slots__ = ('labels',)

    def __init__(self, labels: Iterable):
        self.labels = tuple(Label[x] if isinstance(x, str) else Label(x) for x in labels)

    @classmethod
    def from_string(cls, value):
        return cls(value.replace(' ', ''))

    def __len__(self):
        return len(self.labels)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.labels)

    def __getitem__(self, item):
        return self.labels[item]

    def __eq__(self, other):
        return isinstance(other, LabelSeq) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __str__(self):
        return ''.join(label.name for label in self.labels)

    def __repr__(self):
        return f'LabelSeq({str(self)!r})'

    def illegal_positions(self):
        """Indices i where labels[i] cannot occupy its place in a BMES sequence."""
        if not self.labels:
            return []
        bad = []
        if self.labels[0] not in LEGAL_FIRST:
            bad.append(0)
        for i in range(1, len(self.labels)):
            if self.labels[i] not in LEGAL_NEXT[self.labels[i - 1]]:
                bad.append(i)
        if self.labels[-1] not in LEGAL_LAST and len(self.labels) - 1 not in bad:
            bad.append(len(self.labels) - 1)
        return bad

    def is_legal(self):
        return bool(self.labels) and not self.illegal_positions()


@dataclass(frozen=True, order=True)
class WordSpan:
    sentence_index: int
    begin: int
    end: int
    word: str = field(compare=False)


@dataclass
class Lexicon:
    entries: Counter = field(default_factory=Counter)

    def __post_init__(self):
        self.entries = Counter(self.entries)
        if '' in self.entries:
            raise ValueError('lexicon cannot contain the empty string')
        for word, count in self.entries.items():
            if count < 1:
                raise ValueError(f'lexicon count for {word!r} must be positive')

    def __contains__(self, word):
        return word in self.entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def count(self, word):
        return self.entries.get(word, 0)

    @property
    def total(self):
        return sum(self.entries.values())

    def ordered(self):
        return sorted(self.entries.items(), key=lambda item: (-item[1], item[0]))


@dataclass(frozen=True)
class CorpusSentence:
    sentence: Sentence
    spans: tuple
    ordinal: int
    token_offset: int = 0
    full_length: Optional[int] = None

    @property
    def sentence_length(self):
        """Length of the whole sentence this piece was cut from."""
        return self.full_length if self.full_length is not None else self.token_offset + len(self.sentence)

    def words(self):
        return [self.sentence.surface(b, e) for b, e in self.spans]


@dataclass
class Corpus:
    sentences: list = field(default_factory=list)
    split: str = 'train'
    skipped_empty: int = 0
    source: Optional[str] = None

    def __len__(self):
        return len(self.sentences)

    def __iter__(self) -> Iterator[CorpusSentence]:
        return iter(self.sentences)

    def __getitem__(self, item):
        return self.sentences[item]

    @property
    def span_count(self):
        return sum(len(item.spans) for item in self.sentences)

    def raw_sentences(self):
        return [item.sentence for item in self.sentences]


def check_partition(spans, length):
    """Raise LabelSequenceError unless spans cover [0, length) exactly once, in order."""
    position = 0
    for begin, end in spans:
        if begin != position or end <= begin:
            raise LabelSequenceError(f'spans do not partition the sentence at {begin}')
        position = end
    if position != length:
        raise LabelSequenceError(f'spans cover {position} of {length} characters')
