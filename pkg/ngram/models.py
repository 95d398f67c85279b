from dataclasses import dataclass, field

from corpus.services.normalizer import token_length


@dataclass(frozen=True)
class AccessorCount:
    frequency: int
    left_av: int
    right_av: int

    @property
    def av(self):
        return min(self.left_av, self.right_av)


@dataclass(frozen=True)
class NgramEntry:
    frequency: int
    av: int


def vocab_sort_key(ngram):
    return token_length(ngram), ngram


@dataclass
class NgramVocab:
    entries: dict = field(default_factory=dict)
    max_length: int = 5
    min_frequency: int = 1
    av_threshold: int = 1

    def __contains__(self, ngram):
        return ngram in self.entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.ordered_keys())

    def __getitem__(self, ngram):
        return self.entries[ngram]

    def ordered_keys(self):
        return sorted(self.entries, key=vocab_sort_key)

    def violations(self):
        """Entries breaking the length, frequency or AV thresholds."""
        bad = []
        for ngram, entry in self.entries.items():
            length = token_length(ngram)
            if not 2 <= length <= self.max_length:
                bad.append((ngram, 'length'))
            elif entry.frequency < self.min_frequency:
                bad.append((ngram, 'frequency'))
            elif entry.av < self.av_threshold:
                bad.append((ngram, 'av'))
        return bad
