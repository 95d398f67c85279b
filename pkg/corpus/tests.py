import random
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from corpus.models import LAT_TOKEN, NUM_TOKEN, PUNC_TOKEN, Label, LabelSeq, Lexicon
from corpus.services.bmes import from_bmes, spans_to_bmes, to_bmes
from corpus.services.corpus_service import (LexiconService, build_lexicon, corpus_from_lines, full_sentences,
                                            load_segmented_corpus, oov_rate, oov_words, parse_raw_line,
                                            parse_segmented_line, split_train_dev)
from corpus.services.normalizer import normalize, normalized_tokens, token_length
from exceptions import CorpusFormatError, LabelSequenceError


class NormalizerTests(SimpleTestCase):

    def test_digit_runs_collapse_to_one_token(self):
        self.assertEqual(normalize('２０１９年'), f'{NUM_TOKEN}年')
        self.assertEqual(normalize('2019年'), f'{NUM_TOKEN}年')

    def test_latin_and_punctuation(self):
        self.assertEqual(normalize('ABC，你'), f'{LAT_TOKEN}{PUNC_TOKEN}你')

    def test_cjk_word_marks_are_not_punctuation(self):
        self.assertEqual(normalize('〇'), '〇')

    def test_offsets_point_into_the_input(self):
        tokens = normalized_tokens('在2019年')
        self.assertEqual(tokens, [('在', 0, 1), (NUM_TOKEN, 1, 5), ('年', 5, 6)])

    def test_placeholder_counts_as_one_token(self):
        self.assertEqual(token_length(f'{NUM_TOKEN}年'), 2)


class BmesTests(SimpleTestCase):

    def test_labels_of_words(self):
        self.assertEqual(str(to_bmes(['武汉', '市', '长江大桥'])), 'BESBMME')

    def test_empty_word_sequence_is_rejected(self):
        with self.assertRaises(LabelSequenceError):
            to_bmes([])

    def test_round_trip_over_random_segmentations(self):
        rng = random.Random(3)
        for _ in range(100000):
            lengths = [rng.randint(1, 5) for _ in range(rng.randint(1, 6))]
            spans, position = [], 0
            for length in lengths:
                spans.append((position, position + length))
                position += length
            decoding = from_bmes(range(position), spans_to_bmes(spans))
            self.assertEqual(decoding.spans, tuple(spans))
            self.assertFalse(decoding.repaired)

    def test_illegal_sequences_are_repaired(self):
        self.assertEqual(from_bmes('abc', 'BBE').spans, ((0, 1), (1, 3)))
        self.assertEqual(from_bmes('abc', 'MME').spans, ((0, 3),))
        decoding = from_bmes('ab', 'BM')
        self.assertEqual(decoding.spans, ((0, 2),))
        self.assertTrue(decoding.repaired)

    def test_length_mismatch(self):
        with self.assertRaises(LabelSequenceError):
            from_bmes('abc', 'BE')

    def test_legality(self):
        self.assertTrue(LabelSeq('BMES').is_legal())
        self.assertEqual(LabelSeq('BS').illegal_positions(), [1])
        self.assertFalse(LabelSeq('MS').is_legal())
        self.assertFalse(LabelSeq('B').is_legal())
        self.assertFalse(LabelSeq('').is_legal())
        self.assertEqual(LabelSeq([0, 3]).labels, (Label.B, Label.S))


class CorpusLoadingTests(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.root = Path(self.directory.name)

    def write(self, name, data):
        path = self.root / name
        path.write_bytes(data if isinstance(data, bytes) else data.encode('utf-8'))
        return path

    def test_segmented_line(self):
        sentence, spans = parse_segmented_line('武汉 市长 2019年')
        self.assertEqual(sentence.chars, ('武', '汉', '市', '长', NUM_TOKEN, '年'))
        self.assertEqual(spans, ((0, 2), (2, 4), (4, 6)))
        self.assertEqual(sentence.raw_surface(4, 6), '2019年')

    def test_empty_lines_are_skipped_and_bom_dropped(self):
        path = self.write('train.txt', '\ufeff武汉 市长\n\n长江 大桥\n')
        corpus = load_segmented_corpus(path)
        self.assertEqual(len(corpus), 2)
        self.assertEqual(corpus.skipped_empty, 1)
        self.assertEqual([item.ordinal for item in corpus], [0, 1])
        self.assertEqual(corpus[0].words(), ['武汉', '市长'])

    def test_invalid_utf8_reports_the_line(self):
        path = self.write('bad.txt', b'\xe6\xad\xa6\n\xff\n')
        with self.assertRaises(CorpusFormatError) as caught:
            load_segmented_corpus(path)
        self.assertEqual(caught.exception.line, 2)

    def test_long_sentences_are_cut_at_word_boundaries(self):
        path = self.write('long.txt', '武汉 市长 ， 长江大桥\n')
        corpus = load_segmented_corpus(path, max_length=3)
        self.assertEqual([item.sentence.text for item in corpus], ['武汉', f'市长{PUNC_TOKEN}', '长江大桥'])
        self.assertEqual([item.token_offset for item in corpus], [0, 2, 5])
        self.assertEqual({item.ordinal for item in corpus}, {0})
        self.assertEqual(corpus[1].spans, ((0, 2), (2, 3)))

    def test_pieces_know_their_whole_sentence(self):
        path = self.write('long.txt', '武汉 市长 ， 长江大桥\n')
        corpus = load_segmented_corpus(path, max_length=3)
        self.assertEqual([item.sentence_length for item in corpus], [9, 9, 9])
        dev = [corpus[2]]
        self.assertEqual(full_sentences(corpus)[0], ('武', '汉', '市', '长', PUNC_TOKEN, '长', '江', '大', '桥'))
        self.assertEqual(full_sentences(dev)[0], tuple('长江大桥'))

    def test_raw_surface_skips_whitespace_inside_a_word(self):
        sentence = parse_raw_line('IBM 公司')
        self.assertEqual(sentence.chars, (LAT_TOKEN, '公', '司'))
        self.assertEqual(sentence.raw_surface(0, 3), 'IBM公司')
        self.assertEqual(sentence.raw_surface(1, 3), '公司')


class SplitAndLexiconTests(SimpleTestCase):

    def setUp(self):
        self.corpus = corpus_from_lines([f'武汉 市长 {i}' for i in range(10)])

    def test_split_is_disjoint_and_seeded(self):
        train, dev = split_train_dev(self.corpus, 0.2, seed=7)
        self.assertEqual((len(train), len(dev)), (8, 2))
        self.assertFalse({id(i) for i in train} & {id(i) for i in dev})
        again, _ = split_train_dev(self.corpus, 0.2, seed=7)
        self.assertEqual([i.ordinal for i in train], [i.ordinal for i in again])

    def test_split_ratio_must_be_proper(self):
        with self.assertRaises(CorpusFormatError):
            split_train_dev(self.corpus, 0.0, seed=7)

    def test_lexicon_counts(self):
        lexicon = build_lexicon(self.corpus)
        self.assertEqual(lexicon.count('武汉'), 10)
        self.assertEqual(lexicon.count(NUM_TOKEN), 10)
        self.assertNotIn('长江', lexicon)

    def test_oov(self):
        lexicon = Lexicon({'武汉': 1})
        test = corpus_from_lines(['武汉 长江'])
        self.assertEqual([w.word for w in oov_words(test, lexicon)], ['长江'])
        self.assertEqual(oov_rate(test, lexicon), 0.5)

    def test_lexicon_file_round_trip(self):
        lexicon = Lexicon({'武汉': 3, '市长': 5, '江': 3})
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'lexicon.tsv'
            LexiconService.write(lexicon, path)
            self.assertEqual(path.read_text(encoding='utf-8').splitlines()[0], '市长\t5')
            self.assertEqual(LexiconService.read(path).entries, lexicon.entries)
