import random
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from corpus.services.corpus_service import corpus_from_lines
from exceptions import NgramError
from ngram.models import NgramEntry, NgramVocab
from ngram.services.accessor_variety import VocabService, accessor_counts, extract_ngrams, subsample_vocab


def brute_force(sentences, max_length):
    """frequency, L_av, R_av of every substring by direct enumeration."""
    result = {}
    keys = {s[i:j] for s in sentences for i in range(len(s)) for j in range(i + 2, min(len(s), i + max_length) + 1)}
    for key in keys:
        frequency, left, right = 0, set(), set()
        for sid, s in enumerate(sentences):
            for i in range(len(s) - len(key) + 1):
                if s[i:i + len(key)] != key:
                    continue
                frequency += 1
                left.add(s[i - 1] if i > 0 else ('start', sid))
                end = i + len(key)
                right.add(s[end] if end < len(s) else ('end', sid))
        result[key] = (frequency, len(left), len(right))
    return result


class AccessorVarietyTests(SimpleTestCase):

    def test_counts_match_enumeration(self):
        rng = random.Random(11)
        for _ in range(20):
            sentences = [''.join(rng.choice('abc') for _ in range(rng.randint(1, 9)))
                         for _ in range(rng.randint(1, 12))]
            counts = accessor_counts(sentences, max_length=4, shard_size=3)
            expected = brute_force(sentences, 4)
            self.assertEqual(set(counts), set(expected))
            for key, (frequency, left, right) in expected.items():
                self.assertEqual((counts[key].frequency, counts[key].left_av, counts[key].right_av),
                                 (frequency, left, right), key)

    def test_shard_size_setting_does_not_change_counts(self):
        sentences = ['武汉市长', '武汉大学', '在武汉', '长江大桥']
        default = accessor_counts(sentences, max_length=3)
        with self.settings(NGRAM_SHARD_SIZE=1):
            sharded = accessor_counts(sentences, max_length=3)
        self.assertEqual(sharded, default)

    def test_thresholds(self):
        vocab = extract_ngrams(['武汉市长', '武汉大学', '在武汉'], max_length=2, min_frequency=3, av_threshold=2)
        self.assertEqual(vocab.ordered_keys(), ['武汉'])
        self.assertEqual(vocab['武汉'], NgramEntry(frequency=3, av=3))
        self.assertEqual(vocab.violations(), [])

    def test_punctuation_never_enters_the_vocabulary(self):
        corpus = corpus_from_lines(['武汉 ，'] * 4 + ['在 武汉 ，'] * 4)
        vocab = extract_ngrams(corpus, max_length=3, min_frequency=1, av_threshold=1)
        self.assertIn('武汉', vocab)
        self.assertFalse(any('⟨PUNC⟩' in key for key in vocab))

    def test_bad_parameters(self):
        with self.assertRaises(NgramError):
            extract_ngrams(['武汉'], min_frequency=0)
        with self.assertRaises(NgramError):
            accessor_counts(['武汉'], max_length=1)

    def test_violations_flag_short_entries(self):
        vocab = NgramVocab({'a': NgramEntry(9, 9)})
        self.assertEqual(vocab.violations(), [('a', 'length')])


class SubsampleTests(SimpleTestCase):

    def setUp(self):
        self.vocab = NgramVocab({f'武{chr(0x4e00 + i)}': NgramEntry(5, 2) for i in range(10)})

    def test_size_and_determinism(self):
        half = subsample_vocab(self.vocab, 0.5, seed=13)
        self.assertEqual(len(half), 5)
        self.assertEqual(half.ordered_keys(), subsample_vocab(self.vocab, 0.5, seed=13).ordered_keys())
        self.assertTrue(set(half.entries) <= set(self.vocab.entries))

    def test_full_fraction_keeps_everything(self):
        self.assertEqual(subsample_vocab(self.vocab, 1.0, seed=13).entries, self.vocab.entries)

    def test_fraction_out_of_range(self):
        with self.assertRaises(NgramError):
            subsample_vocab(self.vocab, 0.0, seed=13)


class VocabFileTests(SimpleTestCase):

    def test_round_trip(self):
        vocab = NgramVocab({'武汉': NgramEntry(7, 3), '长江大桥': NgramEntry(5, 2)}, max_length=4,
                           min_frequency=5, av_threshold=2)
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'vocab.tsv'
            VocabService.write(vocab, path)
            loaded = VocabService.read(path)
        self.assertEqual(loaded.entries, vocab.entries)
        self.assertEqual(loaded.ordered_keys(), ['武汉', '长江大桥'])

    def test_empty_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'vocab.tsv'
            path.write_text('', encoding='utf-8')
            self.assertEqual(len(VocabService.read(path)), 0)
