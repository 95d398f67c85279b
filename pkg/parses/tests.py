import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from corpus.models import NUM_TOKEN
from corpus.services.corpus_service import corpus_from_lines, full_sentences, split_long_sentence
from exceptions import ParseFormatError
from parses.services.conll_reader import align_parse, load_parses
from parses.services.projection import char_syntax_edges

CONLL = """# sent_id = 1
1\t武汉\t_\tPROPN\t_\t_\t2\tnmod\t_\t_
2\t市长\t_\tNOUN\t_\t_\t0\troot\t_\t_

1-2\t长江大桥\t_\t_\t_\t_\t_\t_\t_\t_
1\t长江\t_\tPROPN\t_\t_\t2\tnmod\t_\t_
2\t大桥\t_\tNOUN\t_\t_\t0\troot\t_\t_
"""


def row(index, form, head):
    return f'{index}\t{form}\t_\t_\t_\t_\t{head}\t_\t_\t_\n'


class ConllReaderTests(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def write(self, text):
        path = Path(self.directory.name) / 'parses.conll'
        path.write_text(text, encoding='utf-8')
        return path

    def test_blocks_are_keyed_by_ordinal(self):
        parses = load_parses(self.write(CONLL))
        self.assertEqual(len(parses), 2)
        first = parses[0]
        self.assertEqual(first.tokens, ('武汉', '市长'))
        self.assertEqual(first.heads, (2, 0))
        self.assertEqual(first.alignment, ((0, 2), (2, 4)))
        self.assertEqual(first.dependencies(), [(1, 0)])
        self.assertEqual(parses[1].tokens, ('长江', '大桥'))

    def test_misaligned_parses_are_dropped(self):
        parses = load_parses(self.write(CONLL), sentences=[tuple('武汉市长'), tuple('长江大')])
        self.assertEqual(list(parses), [0])
        self.assertEqual(parses.dropped, [1])

    def test_parse_longer_than_its_sentence_is_dropped(self):
        text = row(1, '武汉市', 0) + row(2, '长江', 1) + row(3, '大桥', 1) + row(4, '了', 1)
        with self.assertLogs('parses.services.conll_reader', level='WARNING'):
            parses = load_parses(self.write(text), sentences=[tuple('武汉市长江大桥')])
        self.assertEqual(parses.dropped, [0])

    def test_head_out_of_range_is_dropped(self):
        parses = load_parses(self.write(row(1, '武汉', 5)))
        self.assertEqual(len(parses), 0)

    def test_malformed_rows(self):
        with self.assertRaises(ParseFormatError):
            load_parses(self.write('x\t武汉\t_\t_\t_\t_\t0\t_\t_\t_\n'))
        with self.assertRaises(ParseFormatError):
            load_parses(self.write('1\t武汉\t_\n'))
        with self.assertRaises(ParseFormatError):
            load_parses(self.write(row(2, '武汉', 0)))

    def test_forms_are_normalized_before_alignment(self):
        parse = align_parse([('2019年', 0)], reference=(NUM_TOKEN, '年'))
        self.assertEqual(parse.alignment, ((0, 2),))

    def test_multiple_roots_are_flagged(self):
        parse = align_parse([('武汉', 0), ('市长', 0)])
        self.assertTrue(parse.multi_root)


class ProjectionTests(SimpleTestCase):

    def setUp(self):
        self.parse = align_parse([('武汉市', 2), ('长江大桥', 0)])

    def test_head_characters_point_at_dependent_characters(self):
        outgoing, incoming = char_syntax_edges(self.parse)
        self.assertEqual(len(outgoing), 12)
        self.assertIn((3, 0), outgoing)
        self.assertIn((0, 3), incoming)
        self.assertNotIn((0, 3), outgoing)

    def test_no_parse_means_no_edges(self):
        self.assertEqual(char_syntax_edges(None), (frozenset(), frozenset()))

    def test_restrict_keeps_whole_tokens(self):
        piece = self.parse.restrict(3, 7)
        self.assertEqual(piece.tokens, ('长江大桥',))
        self.assertEqual(piece.heads, (0,))
        self.assertEqual(piece.alignment, ((0, 4),))
        self.assertIsNone(self.parse.restrict(1, 4))

    def test_project_onto_checks_the_characters(self):
        self.assertEqual(self.parse.project_onto(tuple('长江大桥'), 3).tokens, ('长江大桥',))
        self.assertIsNone(self.parse.project_onto(tuple('长江'), 0))

    def test_extra_trailing_token_does_not_project(self):
        parse = align_parse([('武汉市', 2), ('长江大桥', 0), ('了', 2)])
        self.assertIsNone(parse.project_onto(tuple('武汉市长江大桥')))
        self.assertIsNone(parse.project_onto(tuple('长江大桥'), 3, total=7))
        self.assertEqual(parse.project_onto(tuple('长江大桥'), 3, total=8).tokens, ('长江大桥',))

    def test_parses_align_with_the_whole_of_a_cut_sentence(self):
        corpus = corpus_from_lines(['武汉 市长 长江 大桥'])
        pieces = [piece for item in corpus for piece in split_long_sentence(item, 4)]
        self.assertEqual(len(pieces), 2)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'parses.conll'
            path.write_text(row(1, '武汉', 2) + row(2, '市长', 0) + row(3, '长江', 4) + row(4, '大桥', 2),
                            encoding='utf-8')
            parses = load_parses(path, full_sentences(pieces))
        self.assertEqual(list(parses), [0])
        self.assertEqual(parses[0].project_onto(pieces[1].sentence.chars, pieces[1].token_offset,
                                                pieces[1].sentence_length).tokens, ('长江', '大桥'))
